"""Experiment configuration: JSON schema, validation, content hashing."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

EXPERIMENTS = ("predict-ground-state", "classify-spt", "classify-topo",
               "extract-classifier")

DEFAULTS: dict[str, dict] = {
    "predict-ground-state": {
        "n": 12,
        "n_train": 200,
        "n_validation": 500,
        "n_test": 1000,
        "shots": 20000,
        "noise": {"p_single": 0.001, "p_two": 0.01, "p_m": 0.01},
        "kernels": ["gaussian", "modified-dirichlet"],
        "lambda_grid": [0.0125, 0.025, 0.05, 0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0],
        "n_data_sweep": [25, 50, 100, 200],
        "ssh_w_values": [0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75],
        "method": "gaussian",
    },
    "classify-spt": {
        "n": 10,
        "T": 100,
        "n_per_phase": 10,
        "symmetries": ["Z2xZ2", "TRS", "none"],
        "layers": 2,
        "control_layers": 10,
        "n_seeds": 10,
        "svm_c": 10.0,
        "tau": 1.0,
        "gamma": 1.0,
        "hci": {"n_points": 40, "h1_range": [0.0, 1.6], "h2_range": [-0.8, 1.6],
                "margin": 0.05, "sop_pair": [1, 7], "grid_step": 0.1},
    },
    "classify-topo": {
        "d_code": 3,
        "T": 300,
        "n_per_phase": 10,
        "d_lu_values": [0, 1, 2, 3],
        "tau": 1.0,
        "gamma": 1.0,
    },
    "extract-classifier": {
        "d_code": 3,
        "n_train_per_phase": 10,
        "n_test_per_phase": 3000,
        "lu_layers": 2,
        "subsystem": [1, 2, 4, 5],
        "p_m": 0.03,
        "calibration_shots": 50000,
        "tomography_shots": 20000,
        "epsilon": 0.1,
        "n_instances": 100,
        "svm_c": 1.0,
    },
}


@dataclass
class ExperimentConfig:
    experiment: str
    params: dict = field(default_factory=dict)
    master_seed: int = 7

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}; "
                             f"choose from {EXPERIMENTS}")
        merged = json.loads(json.dumps(DEFAULTS[self.experiment]))
        unknown = set(self.params) - set(merged)
        if unknown:
            raise ValueError(f"unknown config keys {sorted(unknown)}")
        merged.update(self.params)
        self.params = merged

    def to_json(self) -> str:
        return json.dumps({"experiment": self.experiment, "master_seed": self.master_seed,
                           "params": self.params}, sort_keys=True, indent=1)

    @classmethod
    def from_json(cls, payload: str) -> "ExperimentConfig":
        d = json.loads(payload)
        return cls(d["experiment"], d.get("params", {}), int(d.get("master_seed", 7)))

    @classmethod
    def from_file(cls, path) -> "ExperimentConfig":
        return cls.from_json(Path(path).read_text())

    def content_hash(self) -> str:
        return hashlib.sha256(self.to_json().encode()).hexdigest()[:16]
