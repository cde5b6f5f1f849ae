"""Product decompositions u0*u1*...*ul = q^nu u0 and their ladders.

A decomposition is verified against four conditions: the exact product
relation, nu > 0, positive-degree factors, and the interior degree bound
|u1| + ... + |u_{l-1}| < 2N.  Its ladder is the q^nu-periodic sequence
v_j with v_0 = u0 and v_j = v_{j-1} * u_j, stored on one period window and
extended in both directions by index arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import ceil, floor
from typing import List, Optional, Sequence, Tuple

from .qalgebra import QuantumClass


class InvalidDecompositionError(ValueError):
    """A ladder was requested from a decomposition that fails verification."""


class LadderChainError(ValueError):
    """The strict homology-degree chain of a ladder window is violated."""


class PowerVanishesError(ValueError):
    """u^d = 0 before the exponent required by the pigeonhole argument."""

    def __init__(self, exponent: int):
        self.exponent = exponent
        super().__init__(f"power vanishes: u^{exponent} = 0")


class NonIntegralNuError(ValueError):
    """The pigeonhole pair produces a fractional q-power."""


@dataclass(frozen=True)
class Decomposition:
    u0: QuantumClass
    factors: Tuple[QuantumClass, ...]
    nu: int

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))

    @property
    def ell(self) -> int:
        return len(self.factors)


@dataclass(frozen=True)
class VerificationReport:
    valid: bool
    reasons: Tuple[str, ...] = ()


@dataclass(frozen=True)
class Ladder:
    window: Tuple[QuantumClass, ...]
    nu: int
    step_classes: Tuple[QuantumClass, ...] = ()
    hom_degrees: Tuple[int, ...] = ()

    @property
    def ell(self) -> int:
        return len(self.window)


@dataclass(frozen=True)
class CaseTwoParameters:
    d: int
    ell: int
    s_minus: Optional[int] = None
    s_plus: Optional[int] = None
    nu: Optional[int] = None


def verify_decomposition(ring, dec: Decomposition) -> VerificationReport:
    if dec.u0.is_zero():
        raise ValueError("u0 must be nonzero")
    for cls in (dec.u0,) + dec.factors:
        if not cls.is_homogeneous():
            raise ValueError("all classes in a decomposition must be homogeneous")
    reasons: List[str] = []
    if dec.nu <= 0:
        reasons.append(f"nu must be positive, got {dec.nu}")
    for i, f in enumerate(dec.factors, start=1):
        if f.is_zero() or f.degree() <= 0:
            reasons.append(f"factor u{i} does not have positive degree")
    two_n_chern = 2 * ring.N_chern
    interior = sum(f.degree() for f in dec.factors[:-1] if not f.is_zero())
    if len(dec.factors) >= 2 and interior >= two_n_chern:
        reasons.append(
            f"interior degree sum {interior} is not < 2N = {two_n_chern}"
        )
    product = dec.u0
    for f in dec.factors:
        product = ring.quantum_product(product, f)
    if product != dec.u0.q_shift(dec.nu):
        reasons.append("product does not equal q^nu * u0")
    return VerificationReport(valid=not reasons, reasons=tuple(reasons))


def search_decompositions(ring, ell_max: int, nu_max: int) -> List[Decomposition]:
    """Exhaustive search over additive basis classes.

    Factors range over positive-degree basis labels; results are sorted by
    (ell descending, nu ascending) with a lexicographic label tiebreak, so
    the output is deterministic.
    """
    if ell_max < 1:
        raise ValueError("ell_max must be >= 1")
    two_n_chern = 2 * ring.N_chern
    pos_labels = [
        lbl for lbl in sorted(ring.basis_labels(), key=ring.label_key)
        if ring.label_degree(lbl) > 0
    ]
    found: List[Tuple] = []
    for u0_label in sorted(ring.basis_labels(), key=ring.label_key):
        u0 = ring.basis_class(u0_label)

        def dfs(chain, partial, interior_deg, total_deg):
            ell = len(chain)
            if ell >= 1 and total_deg % two_n_chern == 0:
                nu = total_deg // two_n_chern
                if 1 <= nu <= nu_max and partial == u0.q_shift(nu):
                    found.append((u0_label, tuple(chain), nu))
            if ell == ell_max:
                return
            for lbl in pos_labels:
                deg = ring.label_degree(lbl)
                if total_deg + deg > two_n_chern * nu_max:
                    continue
                # all but the last factor must respect the interior bound;
                # the current last entry becomes interior once we extend
                new_interior = interior_deg + (ring.label_degree(chain[-1]) if chain else 0)
                if new_interior >= two_n_chern:
                    continue
                step = ring.quantum_product(partial, ring.basis_class(lbl))
                if step.is_zero():
                    continue
                chain.append(lbl)
                dfs(chain, step, new_interior, total_deg + deg)
                chain.pop()

        dfs([], u0, 0, 0)

    found.sort(
        key=lambda t: (
            -len(t[1]),
            t[2],
            ring.label_key(t[0]),
            tuple(ring.label_key(l) for l in t[1]),
        )
    )
    return [
        Decomposition(
            ring.basis_class(u0l),
            tuple(ring.basis_class(l) for l in fl),
            nu,
        )
        for u0l, fl, nu in found
    ]


def build_ladder(ring, dec: Decomposition) -> Ladder:
    report = verify_decomposition(ring, dec)
    if not report.valid:
        raise InvalidDecompositionError("; ".join(report.reasons))
    window = [dec.u0]
    for f in dec.factors[:-1]:
        window.append(ring.quantum_product(window[-1], f))
    hom = tuple(ring.convert_grading(v.degree()) for v in window)
    two_n_chern = 2 * ring.N_chern
    chain = hom + (hom[0] - two_n_chern,)
    for a, b in zip(chain, chain[1:]):
        if not a > b:
            raise LadderChainError(
                f"homology degrees not strictly decreasing: {a} -> {b}"
            )
    return Ladder(
        window=tuple(window),
        nu=dec.nu,
        step_classes=dec.factors,
        hom_degrees=hom,
    )


def ladder_class(ladder: Ladder, j: int) -> QuantumClass:
    block, pos = divmod(j, ladder.ell)
    return ladder.window[pos].q_shift(ladder.nu * block)


def ladder_hom_degree(ladder: Ladder, j: int, ring) -> int:
    """Homology degree of v_j; drops by 2N*nu per period."""
    block, pos = divmod(j, ladder.ell)
    return ladder.hom_degrees[pos] - 2 * ring.N_chern * ladder.nu * block


def case_ii_parameters(ring, u: QuantumClass, n_orbits: int) -> CaseTwoParameters:
    deg = u.degree()
    two_n = 2 * ring.complex_dim
    if deg <= 0 or deg >= two_n:
        raise ValueError(f"need 0 < |u| < 2n, got |u| = {deg}")
    if n_orbits < 1:
        raise ValueError("n_orbits must be >= 1")
    two_n_chern = 2 * ring.N_chern
    d = ceil(Fraction(two_n_chern * n_orbits, deg)) + 1
    ell = floor(Fraction(two_n_chern, deg))
    p = ring.one()
    for r in range(1, d + 1):
        p = ring.quantum_product(p, u)
        if p.is_zero():
            raise PowerVanishesError(r)
    return CaseTwoParameters(d=d, ell=ell)


def pigeonhole_pair(carrier_orbit_ids: Sequence, ring, u: QuantumClass) -> Tuple[int, int]:
    """Smallest s_minus, then smallest s_plus, with equal ids and gap > 2N/|u|."""
    d = len(carrier_orbit_ids)
    gap = Fraction(2 * ring.N_chern, u.degree())
    for s_minus in range(1, d + 1):
        for s_plus in range(s_minus + 1, d + 1):
            if (
                carrier_orbit_ids[s_plus - 1] == carrier_orbit_ids[s_minus - 1]
                and s_plus - s_minus > gap
            ):
                return s_minus, s_plus
    raise ValueError(
        "no admissible pair: the id list has too many distinct values "
        "for the declared orbit count"
    )


def case_ii_ladder(ring, u: QuantumClass, s_minus: int, s_plus: int) -> Ladder:
    deg = u.degree()
    two_n_chern = 2 * ring.N_chern
    ell = floor(Fraction(two_n_chern, deg))
    nu_frac = Fraction((s_plus - s_minus) * deg, two_n_chern)
    if nu_frac.denominator != 1:
        raise NonIntegralNuError(
            f"nu = {nu_frac} is not an integer; the non-degeneracy hypothesis "
            "is required to rule this pair out"
        )
    if s_plus - s_minus - ell + 1 <= 0:
        raise ValueError("gap too small: need s_plus - s_minus - ell + 1 > 0")
    window = []
    v = ring.power(u, s_minus)
    for j in range(ell):
        if j > 0:
            v = ring.quantum_product(v, u)
        if v.is_zero():
            raise PowerVanishesError(s_minus + j)
        window.append(v)
    hom = tuple(ring.convert_grading(v.degree()) for v in window)
    chain = hom + (hom[0] - two_n_chern,)
    for a, b in zip(chain, chain[1:]):
        if not a > b:
            raise LadderChainError(
                f"homology degrees not strictly decreasing: {a} -> {b}"
            )
    return Ladder(
        window=tuple(window),
        nu=int(nu_frac),
        step_classes=(u,) * ell,
        hom_degrees=hom,
    )
