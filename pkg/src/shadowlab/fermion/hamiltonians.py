"""Nearest-neighbour hopping Hamiltonians and their single-particle matrices."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SYMMETRY_TOL = 1e-12


@dataclass(frozen=True)
class HoppingSpec:
    """Nearest-neighbour hopping amplitudes x (length n-1) on an even chain."""

    n: int
    x: tuple[float, ...]
    source: str = "manual"
    seed: int | None = None

    def __post_init__(self):
        if self.n % 2 != 0 or self.n < 2:
            raise ValueError("site count must be even and >= 2")
        if len(self.x) != self.n - 1:
            raise ValueError(f"expected {self.n - 1} hopping amplitudes, got {len(self.x)}")
        if not all(np.isfinite(v) for v in self.x):
            raise ValueError("hopping amplitudes must be finite")
        object.__setattr__(self, "x", tuple(float(v) for v in self.x))

    def to_dict(self) -> dict:
        return {"n": self.n, "x": list(self.x), "source": self.source, "seed": self.seed}

    @classmethod
    def from_dict(cls, d: dict) -> "HoppingSpec":
        return cls(int(d["n"]), tuple(d["x"]), d.get("source", "manual"), d.get("seed"))


def uniform_spec(n: int, rng: np.random.Generator, seed: int | None = None) -> HoppingSpec:
    """x_i drawn uniformly from [0, 2]."""
    return HoppingSpec(n, tuple(rng.uniform(0.0, 2.0, n - 1)), "uniform[0,2]", seed)


def ssh_spec(n: int, v: float, w: float) -> HoppingSpec:
    """Alternating v, w, v, w, ... amplitudes (v on odd bonds)."""
    x = tuple(v if i % 2 == 0 else w for i in range(n - 1))
    return HoppingSpec(n, x, f"ssh({v},{w})")


def build_hopping(spec: HoppingSpec) -> np.ndarray:
    """Real symmetric single-particle matrix with h[i, i+1] = x_i."""
    h = np.zeros((spec.n, spec.n))
    for i, xi in enumerate(spec.x):
        h[i, i + 1] = h[i + 1, i] = xi
    return h


def check_single_particle(h: np.ndarray, tol: float = SYMMETRY_TOL) -> None:
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError("single-particle matrix must be square")
    if np.max(np.abs(h - h.T)) > tol:
        raise ValueError("single-particle matrix is not symmetric")
