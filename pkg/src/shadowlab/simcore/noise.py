"""Stochastic noise model: per-gate depolarizing, readout flips, global depolarizing."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class NoiseModel:
    """Depolarizing rates per gate, readout flip rate(s), global depolarizing.

    p_m may be a single symmetric flip rate or an asymmetric pair
    (rate 0->1, rate 1->0).  p_global replaces a measurement outcome with a
    uniform random bitstring (exact realisation of the global channel for
    any measurement basis).
    """

    p_single: float = 0.0
    p_two: float = 0.0
    p_m: float | tuple[float, float] = 0.0
    p_global: float = 0.0

    def __post_init__(self):
        for r in (self.p_single, self.p_two, self.p_global, *self.readout_rates):
            if not 0.0 <= r <= 1.0:
                raise ValueError(f"noise rate {r} outside [0, 1]")

    @property
    def readout_rates(self) -> tuple[float, float]:
        if isinstance(self.p_m, tuple):
            return (float(self.p_m[0]), float(self.p_m[1]))
        return (float(self.p_m), float(self.p_m))

    @property
    def is_noiseless(self) -> bool:
        p01, p10 = self.readout_rates
        return self.p_single == 0 and self.p_two == 0 and p01 == 0 and p10 == 0 and self.p_global == 0

    def scaled(self, factor: float) -> "NoiseModel":
        """Gate rates multiplied by factor (readout/global unchanged)."""
        return NoiseModel(self.p_single * factor, self.p_two * factor, self.p_m, self.p_global)


NOISELESS = NoiseModel()
