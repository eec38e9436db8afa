"""Randomized-measurement acquisition of shadow sets."""
from __future__ import annotations

import numpy as np

from .. import _core
from ..simcore import Circuit, StateVector
from ..simcore.engine import run_circuit_batch
from ..simcore.gates import haar_zyz_batch
from ..simcore.noise import NOISELESS, NoiseModel
from .records import ShadowSet


def acquire(source: StateVector | Circuit, n_records: int, rng: np.random.Generator,
            noise: NoiseModel = NOISELESS, provenance: dict | None = None) -> ShadowSet:
    """Collect n_records (unitary, outcome) pairs from a state or circuit.

    Per record: sample per-qubit Haar unitaries, apply them, draw one
    computational-basis outcome.  A Circuit source is re-run per record so
    gate noise resamples trajectory-wise; readout flips and the global
    depolarizing channel act on the recorded bits.
    """
    if n_records < 1:
        raise ValueError("need at least one record")
    if isinstance(source, Circuit):
        n = source.n_qubits
        psi = np.zeros((n_records, 1 << n), dtype=np.complex128)
        psi[:, 0] = 1.0
        run_circuit_batch(psi, source, noise, rng)
    else:
        n = source.n_qubits
        psi = np.tile(source.amplitudes, (n_records, 1))

    angles = haar_zyz_batch(rng, (n_records, n))
    for i in range(n):
        mats = np.empty((n_records, 2, 2), dtype=np.complex128)
        theta, phi, lam = angles[:, i, 0], angles[:, i, 1], angles[:, i, 2]
        c, s = np.cos(theta / 2), np.sin(theta / 2)
        mats[:, 0, 0] = np.exp(-0.5j * (phi + lam)) * c
        mats[:, 0, 1] = -np.exp(-0.5j * (phi - lam)) * s
        mats[:, 1, 0] = np.exp(0.5j * (phi - lam)) * s
        mats[:, 1, 1] = np.exp(0.5j * (phi + lam)) * c
        _core.apply_1q_distinct(psi, i, mats)

    idx = np.zeros(n_records, dtype=np.int64)
    _core.born_sample(psi, rng.random(n_records), idx)
    bits = ((idx[:, None] >> np.arange(n)) & 1).astype(np.uint8)
    p01, p10 = noise.readout_rates
    if p01 > 0 or p10 > 0:
        r = rng.random((n_records, n))
        flip = np.where(bits == 1, r < p10, r < p01)
        bits = (bits ^ flip).astype(np.uint8)
    if noise.p_global > 0:
        replace = rng.random(n_records) < noise.p_global
        bits[replace] = rng.random((int(replace.sum()), n)) < 0.5

    prov = dict(provenance or {})
    prov.setdefault("noise", {"p_single": noise.p_single, "p_two": noise.p_two,
                              "p_m": noise.readout_rates, "p_global": noise.p_global})
    return ShadowSet(n, angles, bits, prov)
