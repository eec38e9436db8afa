"""Labeled shadow datasets for phase-classification experiments."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..shadows import ShadowSet, acquire, load, save, virtual_unitary
from ..simcore import Circuit, StateVector, haar_single_qubit, run_circuit, u1, zero_state
from ..simcore.noise import NOISELESS, NoiseModel
from ..simcore.pauli import single_qubit_matrix
from .fixed_points import prepare_cluster, prepare_product_x
from .lu import local_random_circuit
from .surface import prepare_logical_zero, surface_layout
from .symmetric import symmetric_random_circuit


@dataclass
class PhaseDataset:
    n_qubits: int
    entries: list[tuple[str, ShadowSet, dict]] = field(default_factory=list)

    def add(self, label: str, shadow: ShadowSet, meta: dict) -> None:
        if shadow.n_qubits != self.n_qubits:
            raise ValueError("qubit count mismatch")
        self.entries.append((label, shadow, meta))

    def labels(self) -> list[str]:
        return [label for label, _, _ in self.entries]

    def shadows(self) -> list[ShadowSet]:
        return [s for _, s, _ in self.entries]

    def validate(self) -> None:
        labels = set(self.labels())
        if len(labels) != 2:
            raise ValueError(f"need exactly two classes, got {labels}")


def _apply_circuit(state: StateVector, circ: Circuit) -> StateVector:
    out, _ = run_circuit(state, circ)
    return out


def spt_dataset(n: int, symmetry: str, t_records: int, n_per_phase: int,
                rng: np.random.Generator, noise: NoiseModel = NOISELESS) -> PhaseDataset:
    """Cluster ring (label A) vs |+>^n (label B), both dressed by two layers
    of symmetric local random unitaries."""
    ds = PhaseDataset(n)
    fixed = {"A": prepare_cluster(n), "B": prepare_product_x(n)}
    for label in ("A", "B"):
        for k in range(n_per_phase):
            circ = symmetric_random_circuit(n, symmetry, rng)
            state = _apply_circuit(fixed[label], circ)
            shadow = acquire(state, t_records, rng, noise,
                             provenance={"state_desc": f"spt-{label}-{symmetry}"})
            ds.add(label, shadow, {"symmetry": symmetry, "index": k})
    ds.validate()
    return ds


def _random_product_unitaries(n: int, rng: np.random.Generator) -> np.ndarray:
    return np.stack([haar_single_qubit(rng) for _ in range(n)])


def topo_dataset(d_code: int, t_records: int, n_per_phase: int, d_lu: int,
                 rng: np.random.Generator, noise: NoiseModel = NOISELESS,
                 control: bool = False) -> PhaseDataset:
    """Surface-code logical zero (A) vs random product states + LU layers (B).

    Topological entries use the measurement-assisted protocol without
    physical correction; the adaptive Z's and the data-generation product
    unitaries are applied virtually on the shadows.  With control=True the
    fixed point A is replaced by a topologically trivial state generated
    exactly like class B (random product + the same LU depth), keeping the
    virtual dressing, so no boundary should appear at any depth.
    """
    layout = surface_layout(d_code)
    n = layout.n_data
    ds = PhaseDataset(n)
    for k in range(n_per_phase):
        if control:
            prep = Circuit(n)
            for q in range(n):
                prep.append(u1(q, haar_single_qubit(rng), "haar"))
            for op in local_random_circuit(layout, d_lu, rng).ops:
                prep.append(op)
            state = _apply_circuit(zero_state(n), prep)
            syndrome = None
            corr = ()
        else:
            state, info = prepare_logical_zero(layout, "protocol", rng, correct=False)
            syndrome = info["syndrome"]
            corr = layout.correction_support(syndrome)
        shadow = acquire(state, t_records, rng, noise,
                         provenance={"state_desc": "topo-A" if not control else "control-A"})
        v = _random_product_unitaries(n, rng)
        zmat = single_qubit_matrix("Z")
        for q in corr:
            v[q] = v[q] @ zmat  # correction acts before the data unitary
        shadow = virtual_unitary(shadow, v)
        ds.add("A", shadow, {"syndrome": syndrome, "virtual": True, "index": k,
                             "control": control})
    for k in range(n_per_phase):
        prep = Circuit(n)
        for q in range(n):
            prep.append(u1(q, haar_single_qubit(rng), "haar"))
        for op in local_random_circuit(layout, d_lu, rng).ops:
            prep.append(op)
        if noise.p_single > 0 or noise.p_two > 0:
            shadow = acquire(prep, t_records, rng, noise,
                             provenance={"state_desc": "topo-B"})
        else:
            state = _apply_circuit(zero_state(n), prep)
            shadow = acquire(state, t_records, rng, noise,
                             provenance={"state_desc": "topo-B"})
        ds.add("B", shadow, {"d_lu": d_lu, "index": k})
    ds.validate()
    return ds


def build_phase_dataset(config: dict, rng: np.random.Generator) -> PhaseDataset:
    """Config-driven dataset assembly (kind: spt | topo | topo-control)."""
    kind = config["kind"]
    noise = config.get("noise", NOISELESS)
    t = int(config.get("T", 100))
    n_per_phase = int(config.get("n_per_phase", 10))
    if kind == "spt":
        return spt_dataset(int(config["n"]), config.get("symmetry", "Z2xZ2"),
                           t, n_per_phase, rng, noise)
    if kind in ("topo", "topo-control"):
        return topo_dataset(int(config.get("d_code", 3)), t, n_per_phase,
                            int(config.get("d_lu", 0)), rng, noise,
                            control=(kind == "topo-control"))
    raise ValueError(f"unknown dataset kind {kind!r}")


def save_dataset(ds: PhaseDataset, directory, name: str) -> Path:
    """Shadow files plus a manifest JSON; returns the manifest path."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    entries = []
    for idx, (label, shadow, meta) in enumerate(ds.entries):
        fname = f"{name}_{idx:03d}.jsonl"
        save(shadow, directory / fname)
        entries.append({"label": label, "shadow_file": fname,
                        "generator": {k: v for k, v in meta.items() if k != "syndrome"},
                        "seed": shadow.provenance.get("seed")})
    manifest = directory / f"{name}_manifest.json"
    manifest.write_text(json.dumps(
        {"n_qubits": ds.n_qubits, "entries": entries}, indent=1))
    return manifest


def load_dataset(manifest_path) -> PhaseDataset:
    manifest_path = Path(manifest_path)
    payload = json.loads(manifest_path.read_text())
    ds = PhaseDataset(int(payload["n_qubits"]))
    for entry in payload["entries"]:
        shadow = load(manifest_path.parent / entry["shadow_file"])
        ds.add(entry["label"], shadow, entry.get("generator", {}))
    ds.validate()
    return ds
