"""Numerical tolerances shared across the package."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # absolute error allowed on eigenvalues (n <= 64)
    eps_spec: float = 1e-9
    # relative slack for bound validity and equality detection
    eps_eq: float = 1e-7

    def __post_init__(self):
        if self.eps_spec <= 0 or self.eps_eq <= 0:
            raise ValueError("tolerances must be positive")

    def slack(self, *scale: float) -> float:
        return self.eps_eq * max(1.0, *(abs(x) for x in scale))


DEFAULT_TOLERANCES = Tolerances()
