"""Run manifests: seed derivation, artifact hashing, atomic persistence."""
from __future__ import annotations

import hashlib
import json
import os
import time
from pathlib import Path

import numpy as np

from .. import __version__
from .config import ExperimentConfig


def derive_seed(master_seed: int, stage: str, index: int = 0) -> int:
    digest = hashlib.sha256(f"{master_seed}:{stage}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "little")


def stage_rng(master_seed: int, stage: str, index: int = 0) -> np.random.Generator:
    return np.random.default_rng(derive_seed(master_seed, stage, index))


def atomic_write(path, data: str) -> None:
    path = Path(path)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(data)
    os.replace(tmp, path)


def file_hash(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()[:16]


class RunManifest:
    def __init__(self, config: ExperimentConfig, out_dir):
        self.config = config
        self.out_dir = Path(out_dir)
        self.stages: dict[str, dict] = {}

    def record_stage(self, name: str, artifacts: list[str], wall_clock: float) -> None:
        self.stages[name] = {
            "seed": derive_seed(self.config.master_seed, name),
            "artifacts": {a: file_hash(self.out_dir / a) for a in artifacts},
            "wall_clock_s": round(wall_clock, 3),
        }

    def stage_complete(self, name: str, artifacts: list[str]) -> bool:
        """True when a previous run's artifacts exist and hash-match."""
        entry = self.stages.get(name)
        if entry is None:
            return False
        for a in artifacts:
            path = self.out_dir / a
            if not path.exists() or file_hash(path) != entry["artifacts"].get(a):
                return False
        return True

    def to_json(self) -> str:
        return json.dumps({
            "config_hash": self.config.content_hash(),
            "code_version": __version__,
            "master_seed": self.config.master_seed,
            "config": json.loads(self.config.to_json()),
            "stages": self.stages,
        }, sort_keys=True, indent=1)

    def save(self) -> Path:
        path = self.out_dir / "manifest.json"
        atomic_write(path, self.to_json())
        return path

    @classmethod
    def load(cls, path) -> "RunManifest":
        path = Path(path)
        payload = json.loads(path.read_text())
        config = ExperimentConfig(
            payload["config"]["experiment"],
            payload["config"].get("params", {}),
            int(payload["config"].get("master_seed", 7)),
        )
        if config.content_hash() != payload["config_hash"]:
            raise ValueError("manifest config hash mismatch: file was tampered with")
        if payload.get("code_version") != __version__:
            raise ValueError(
                f"manifest written by version {payload.get('code_version')}, "
                f"running {__version__}")
        manifest = cls(config, path.parent)
        manifest.stages = payload["stages"]
        return manifest


class StageTimer:
    def __init__(self):
        self.start = time.perf_counter()

    def elapsed(self) -> float:
        return time.perf_counter() - self.start
