"""Majorana-covariance simulation of noisy Givens circuits.

Each rotation block is Gaussian; depolarizing Pauli errors inserted after
individual gates commute through the block's Clifford segments (dressing,
CNOTs) to the nearest block boundary, where a Pauli acts on the covariance
as a diagonal sign flip.  This keeps every noisy trajectory exactly
Gaussian, so sampling costs O(n^3) per shot instead of O(2^n) per gate.

Majorana convention: c_{2j} = a_j + a_j^dag, c_{2j+1} = -i(a_j - a_j^dag);
M_kl = (i/2) <[c_k, c_l]>.
"""
from __future__ import annotations

import itertools

import numpy as np

from .. import _core
from ..simcore.noise import NoiseModel
from .givens import GivensNetwork

_PAULI_1Q = ("X", "Y", "Z")
_PAULI_2Q = tuple(a + b for a, b in itertools.product("IXYZ", repeat=2) if a + b != "II")


def initial_covariance(n: int, n_occ: int) -> np.ndarray:
    m = np.zeros((2 * n, 2 * n))
    for j in range(n):
        s = 1.0 if j < n_occ else -1.0
        m[2 * j, 2 * j + 1] = s
        m[2 * j + 1, 2 * j] = -s
    return m


def block_majorana(theta: float) -> np.ndarray:
    """4x4 covariance update of one rotation block: M <- O M O^T.

    Applying the block to the state transforms covariances with the
    interleaved single-particle rotation at angle -theta.
    """
    c, s = np.cos(theta), np.sin(theta)
    r = np.array([[c, s], [-s, c]])
    o = np.zeros((4, 4))
    o[0::2, 0::2] = r
    o[1::2, 1::2] = r
    return o


def covariance_to_corr(m: np.ndarray) -> np.ndarray:
    """Real correlation matrix <a_i^dag a_j> from a covariance matrix."""
    n = m.shape[0] // 2
    c = (m[0::2, 1::2] - m[1::2, 0::2]) / 4.0
    np.fill_diagonal(c, (1.0 + np.diagonal(m[0::2, 1::2])) / 2.0)
    return c


def pauli_sign_vector(n: int, sites: dict[int, str]) -> np.ndarray:
    """Signs s_k with P c_k P^dag = s_k c_k for a Pauli with the given letters."""
    s = np.ones(2 * n)
    flip_string = 0  # parity of X/Y letters at sites < j
    for j in range(n):
        letter = sites.get(j, "I")
        even_anti = flip_string ^ (1 if letter in ("Y", "Z") else 0)
        odd_anti = flip_string ^ (1 if letter in ("X", "Z") else 0)
        if even_anti:
            s[2 * j] = -1.0
        if odd_anti:
            s[2 * j + 1] = -1.0
        if letter in ("X", "Y"):
            flip_string ^= 1
    return s


# --- noise slots -----------------------------------------------------------
#
# Block gate order on modes (p, p+1):
#   Z_p, H_{p+1}, CX(p+1->p), RY_p, RY_{p+1}, CX(p+1->p), Z_p, H_{p+1}
# Error slots follow each gate; each is commuted to the pre- or post-block
# boundary through Clifford segments only.

_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_Z = np.diag([1.0, -1.0]).astype(complex)
_SINGLE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": _Z,
}
_CX_HI_LO = np.eye(4)[:, [0, 1, 3, 2]].astype(complex)  # control p+1, target p
_DRESS = np.kron(_H, _Z)  # (hi = p+1) H, (lo = p) Z


def _pair_matrix(letters: str) -> np.ndarray:
    return np.kron(_SINGLE[letters[1]], _SINGLE[letters[0]])


def _conjugate_letters(seg: np.ndarray, letters: str) -> str:
    """Pauli letters of seg P seg^dag (global phase dropped)."""
    target = seg @ _pair_matrix(letters) @ seg.conj().T
    for cand in itertools.product("IXYZ", repeat=2):
        cl = "".join(cand)
        overlap = np.trace(_pair_matrix(cl).conj().T @ target) / 4.0
        if abs(abs(overlap) - 1.0) < 1e-9:
            return cl
    raise RuntimeError(f"conjugate of {letters} is not a Pauli")


def _slot_tables() -> list[tuple[str, str, tuple[str, ...]]]:
    """(rate_kind, boundary, mapped letters per sampled Pauli) per slot."""
    back_c1 = _DRESS.conj().T @ _CX_HI_LO  # E -> (C1 D)^dag E (C1 D): conj by inverse
    fwd_c2 = _DRESS @ _CX_HI_LO
    slots = []
    # s1: after Z_p (error on p); backward through Z_p
    slots.append(("single", "pre", tuple(_conjugate_letters(np.kron(np.eye(2), _Z).conj().T, l + "I") for l in _PAULI_1Q)))
    # s2: after H_{p+1}; backward through H_{p+1}
    slots.append(("single", "pre", tuple(_conjugate_letters(np.kron(_H, np.eye(2)).conj().T, "I" + l) for l in _PAULI_1Q)))
    # s3: after first CX; backward through CX and dressing
    slots.append(("two", "pre", tuple(_conjugate_letters(back_c1, ls) for ls in _PAULI_2Q)))
    # s4: after RY_p; forward through second CX and outer dressing
    slots.append(("single", "post", tuple(_conjugate_letters(fwd_c2, l + "I") for l in _PAULI_1Q)))
    # s5: after RY_{p+1}
    slots.append(("single", "post", tuple(_conjugate_letters(fwd_c2, "I" + l) for l in _PAULI_1Q)))
    # s6: after second CX; forward through outer dressing
    slots.append(("two", "post", tuple(_conjugate_letters(_DRESS, ls) for ls in _PAULI_2Q)))
    # s7: after outer Z_p
    slots.append(("single", "post", tuple(l + "I" for l in _PAULI_1Q)))
    # s8: after outer H_{p+1}
    slots.append(("single", "post", tuple("I" + l for l in _PAULI_1Q)))
    return slots


_SLOTS = _slot_tables()


class CompiledNetwork:
    """Precomputed covariance program for one measurement setting."""

    def __init__(self, network: GivensNetwork, n_occ: int):
        self.n = network.n_modes
        self.n_occ = n_occ
        self.blocks = list(network.rotations)
        self.rotations = [np.ascontiguousarray(block_majorana(t)) for _, t in self.blocks]
        self.initial = initial_covariance(self.n, n_occ)
        m = self.initial[None].copy()
        for (p, _), o in zip(self.blocks, self.rotations):
            _core.rotate_block(m, 2 * p, o)
        self.final_noiseless = m[0]
        # sign-vector tables: per (pair, slot) one row per sampled-Pauli choice
        self._sign_cache: dict[tuple[int, str], np.ndarray] = {}
        self._slot_tables: dict[tuple[int, int], np.ndarray] = {}
        self._prep_tables: dict[int, np.ndarray] = {}

    def sign_vector(self, p: int, letters: str) -> np.ndarray:
        key = (p, letters)
        if key not in self._sign_cache:
            self._sign_cache[key] = pauli_sign_vector(
                self.n, {p: letters[0], p + 1: letters[1]})
        return self._sign_cache[key]

    def slot_table(self, p: int, slot_idx: int) -> np.ndarray:
        key = (p, slot_idx)
        if key not in self._slot_tables:
            mapped = _SLOTS[slot_idx][2]
            self._slot_tables[key] = np.stack([self.sign_vector(p, m) for m in mapped])
        return self._slot_tables[key]

    def prep_table(self, q: int) -> np.ndarray:
        if q not in self._prep_tables:
            self._prep_tables[q] = np.stack(
                [pauli_sign_vector(self.n, {q: letter}) for letter in _PAULI_1Q])
        return self._prep_tables[q]


def sample_circuit_gaussian(compiled: CompiledNetwork, shots: int, noise: NoiseModel,
                            rng: np.random.Generator) -> np.ndarray:
    """Occupation bits (shots, n) from noisy trajectories of the compiled setting."""
    n = compiled.n
    if noise.p_single == 0 and noise.p_two == 0:
        m = np.broadcast_to(compiled.final_noiseless, (shots, 2 * n, 2 * n)).copy()
        return _finish_sampling(m, noise, rng)

    # sample error events: X-layer slots then 8 slots per block
    pre_events: dict[int, list[tuple[int, np.ndarray]]] = {}
    post_events: dict[int, list[tuple[int, np.ndarray]]] = {}
    any_event = np.zeros(shots, dtype=bool)

    def add(store, g, rows, vecs):
        store.setdefault(g, []).append((rows, vecs))

    for q in range(compiled.n_occ):  # prep X gates, single-qubit slots
        rows = np.flatnonzero(rng.random(shots) < noise.p_single)
        if rows.size:
            any_event[rows] = True
            choice = rng.integers(0, 3, rows.size)
            add(pre_events, 0, rows, compiled.prep_table(q)[choice])
    for g, (p, _) in enumerate(compiled.blocks):
        for slot_idx, (kind, boundary, mapped) in enumerate(_SLOTS):
            rate = noise.p_single if kind == "single" else noise.p_two
            if rate <= 0:
                continue
            rows = np.flatnonzero(rng.random(shots) < rate)
            if rows.size == 0:
                continue
            any_event[rows] = True
            choice = rng.integers(0, len(mapped), rows.size)
            vecs = compiled.slot_table(p, slot_idx)[choice]
            store = pre_events if boundary == "pre" else post_events
            add(store, g, rows, vecs)

    dirty = np.flatnonzero(any_event)
    clean = np.flatnonzero(~any_event)
    remap = np.full(shots, -1)
    remap[dirty] = np.arange(dirty.size)

    m_dirty = np.broadcast_to(compiled.initial, (dirty.size, 2 * n, 2 * n)).copy()

    def apply_events(groups):
        for rows, vecs in groups:
            rr = remap[rows]
            m_dirty[rr] *= vecs[:, :, None]
            m_dirty[rr] *= vecs[:, None, :]

    for g, (p, _) in enumerate(compiled.blocks):
        if g in pre_events:
            apply_events(pre_events[g])
        _core.rotate_block(m_dirty, 2 * p, compiled.rotations[g])
        if g in post_events:
            apply_events(post_events[g])

    m = np.empty((shots, 2 * n, 2 * n))
    m[clean] = compiled.final_noiseless
    m[dirty] = m_dirty
    return _finish_sampling(m, noise, rng)


def _finish_sampling(m: np.ndarray, noise: NoiseModel, rng: np.random.Generator) -> np.ndarray:
    shots = m.shape[0]
    n = m.shape[1] // 2
    bits = np.zeros((shots, n), dtype=np.uint8)
    _core.gaussian_sample(m, rng.random((shots, n)), bits)
    p01, p10 = noise.readout_rates
    if p01 > 0 or p10 > 0:
        r = rng.random((shots, n))
        flip = np.where(bits == 1, r < p10, r < p01)
        bits = (bits ^ flip).astype(np.uint8)
    if noise.p_global > 0:
        replace = rng.random(shots) < noise.p_global
        bits[replace] = (rng.random((int(replace.sum()), n)) < 0.5)
    return bits
