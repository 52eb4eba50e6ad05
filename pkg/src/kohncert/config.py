"""Run configuration and the seeded deterministic coefficient sequence."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction


@dataclass(frozen=True)
class RunConfig:
    truncation: int = 64
    seed: int = 1
    branch_precision: int | None = None  # default: min(4 * truncation, 256)
    verify_membership: bool = False
    max_generic_retries: int = 8
    set_descent_cap: int = 256

    def precision(self):
        if self.branch_precision is not None:
            return self.branch_precision
        return min(4 * self.truncation, 256)


class SeededCoefficients:
    """Deterministic stream of small nonzero rational coefficients.

    One stream per (seed, purpose) pair so that retries in one component do
    not shift the coefficients drawn by another.
    """

    def __init__(self, seed, purpose=""):
        self._rng = random.Random("%s|%s" % (seed, purpose))

    def next_coeff(self) -> Fraction:
        return Fraction(self._rng.randint(1, 997))

    def combo(self, n) -> list:
        return [self.next_coeff() for _ in range(n)]
