"""Exact action/index calculus: recapping, iteration, augmented action.

All actions and areas are rational multiples of pi ("pi-units"), so every
identity is checked with exact arithmetic.  Conventions: the distinguished
sphere class A has I_omega(A) = -lambda0 and I_c1(A) = -2N; a planar rotation
by total angle 2*pi*theta over one period contributes 2*theta to the mean
index, and mu_CZ of a split nondegenerate flow is sum(2*floor(theta) + 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Sequence, Tuple


class DegenerateAngleError(ValueError):
    """A Conley-Zehnder index was requested for a degenerate direction."""


@dataclass(frozen=True)
class MonotoneData:
    """Monotonicity bookkeeping: N, lambda, lambda0 = lambda * N.

    I_omega(A) = -lambda0 and I_c1(A) = -2N for the distinguished generator A,
    so I_omega = (lambda/2) * I_c1 holds identically.
    """

    N: int
    lam: Fraction

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("minimal Chern number must be positive")
        object.__setattr__(self, "lam", Fraction(self.lam))
        if self.lam == 0:
            raise ValueError("monotonicity constant must be nonzero")

    @property
    def lambda0(self) -> Fraction:
        return self.lam * self.N

    @property
    def sign(self) -> str:
        return "monotone" if self.lam > 0 else "negative monotone"

    @property
    def I_omega_A(self) -> Fraction:
        return -self.lambda0

    @property
    def I_c1_A(self) -> int:
        return -2 * self.N


@dataclass(frozen=True)
class CappedOrbit:
    """A capped periodic orbit with exact action and mean index data."""

    orbit_id: str
    m: int = 0
    action: Fraction = Fraction(0)
    mean_index: Fraction = Fraction(0)
    cz_index: Optional[int] = None
    weakly_nondegenerate: bool = False

    def __post_init__(self):
        object.__setattr__(self, "action", Fraction(self.action))
        object.__setattr__(self, "mean_index", Fraction(self.mean_index))


def recap(o: CappedOrbit, m: int, md: MonotoneData) -> CappedOrbit:
    """Attach m copies of the generator A to the capping."""
    return replace(
        o,
        m=o.m + m,
        action=o.action + m * md.I_omega_A,
        mean_index=o.mean_index + m * md.I_c1_A,
        cz_index=None if o.cz_index is None else o.cz_index + m * md.I_c1_A,
    )


def iterate(o: CappedOrbit, k: int) -> CappedOrbit:
    """The k-th iterate: action and mean index are homogeneous; mu_CZ is not."""
    if k < 1:
        raise ValueError("iteration order must be >= 1")
    return replace(
        o,
        action=k * o.action,
        mean_index=k * o.mean_index,
        cz_index=o.cz_index if k == 1 else None,
    )


def augmented_action(o: CappedOrbit, md: MonotoneData) -> Fraction:
    """A - (lambda/2) * Delta: capping-independent, iteration-homogeneous."""
    return o.action - (md.lam / 2) * o.mean_index


AngleVector = Tuple[Fraction, ...]


def angle_vector(angles: Sequence) -> AngleVector:
    return tuple(Fraction(a) for a in angles)


def mean_index_split(av: Sequence) -> Fraction:
    """Mean index of a split linear flow with rotation numbers theta_j."""
    return 2 * sum((Fraction(a) for a in av), Fraction(0))


def cz_index_split(av: Sequence) -> int:
    """Conley-Zehnder index sum(2*floor(theta_j) + 1) of a split flow.

    With all theta_j in (0, 1) this gives n, the normalization at a
    nondegenerate maximum.  Integer angles are degenerate directions.
    """
    total = 0
    for a in av:
        theta = Fraction(a)
        if theta.denominator == 1:
            raise DegenerateAngleError(f"degenerate direction: theta = {theta}")
        total += 2 * math.floor(theta) + 1
    return total


def index_window_check(o: CappedOrbit, class_degree_hom: int, n: int) -> bool:
    """Carrier window |v| - 2n <= Delta <= |v|, strict when weakly nondegenerate."""
    lo = Fraction(class_degree_hom - 2 * n)
    hi = Fraction(class_degree_hom)
    if o.weakly_nondegenerate:
        return lo < o.mean_index < hi
    return lo <= o.mean_index <= hi
