"""Axiomatic action-selector carrier simulation over finite orbit tables.

The selector itself is never computed; only the axioms the counting
arguments use are enforced: recapping equivariance along the ladder, the
mean-index window per class, and the (weakly) decreasing action ordering.
Every verdict is decided with exact rational arithmetic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .ladders import Ladder
from .spectra import MonotoneData


@dataclass(frozen=True)
class TableOrbit:
    orbit_id: str
    action: Fraction
    delta: Fraction
    weakly_nondegenerate: bool = False

    def __post_init__(self):
        object.__setattr__(self, "action", Fraction(self.action))
        object.__setattr__(self, "delta", Fraction(self.delta))


@dataclass(frozen=True)
class OrbitTable:
    md: MonotoneData
    n: int
    orbits: Tuple[TableOrbit, ...]

    def __post_init__(self):
        object.__setattr__(self, "orbits", tuple(self.orbits))
        ids = [o.orbit_id for o in self.orbits]
        if len(set(ids)) != len(ids):
            raise ValueError("orbit ids must be unique")
        if not self.orbits:
            raise ValueError("orbit table must be non-empty")

    def orbit(self, orbit_id: str) -> TableOrbit:
        for o in self.orbits:
            if o.orbit_id == orbit_id:
                return o
        raise KeyError(orbit_id)


Slot = Tuple[str, int]  # (orbit id, capping)


@dataclass(frozen=True)
class CarrierAssignment:
    """One ladder period of carrier choices at iteration k.

    slots[j] is the capped orbit assigned to v_j; the assignment extends to
    all of Z equivariantly: slot j + ell repeats slot j with capping + nu.
    """

    k: int
    slots: Tuple[Slot, ...]

    def slot(self, j: int) -> Slot:
        block, pos = divmod(j, len(self.slots))
        oid, m = self.slots[pos]
        return (oid, m)

    def phi(self) -> Tuple[str, ...]:
        return tuple(oid for oid, _ in self.slots)


def capped_action(table: OrbitTable, oid: str, m: int, k: int) -> Fraction:
    o = table.orbit(oid)
    return k * o.action - m * table.md.lambda0


def capped_delta(table: OrbitTable, oid: str, m: int, k: int) -> Fraction:
    o = table.orbit(oid)
    return k * o.delta - 2 * table.md.N * m


def _slot_candidates(table: OrbitTable, deg_hom: int, k: int) -> List[Slot]:
    """Capped orbits whose mean index lies in [deg - 2n, deg] at iteration k."""
    two_n = 2 * table.n
    two_n_chern = 2 * table.md.N
    out: List[Slot] = []
    for o in table.orbits:
        lo = Fraction(k * o.delta - deg_hom, two_n_chern)
        hi = Fraction(k * o.delta - deg_hom + two_n, two_n_chern)
        m_lo, m_hi = math.ceil(lo), math.floor(hi)
        for m in range(m_lo, m_hi + 1):
            if o.weakly_nondegenerate and (
                Fraction(m) == lo or Fraction(m) == hi
            ):
                continue
            out.append((o.orbit_id, m))
    return sorted(out)


def _ordering_ok(table: OrbitTable, assignment: Sequence[Slot], nu: int, k: int) -> bool:
    """Weakly decreasing actions around one period; ties only between
    distinct capped orbits."""
    ell = len(assignment)
    drop = nu * table.md.lambda0
    for j in range(ell):
        oid_a, m_a = assignment[j]
        if j + 1 < ell:
            oid_b, m_b = assignment[j + 1]
        else:
            oid_b, m_b = assignment[0][0], assignment[0][1] + nu
        act_a = capped_action(table, oid_a, m_a, k)
        act_b = capped_action(table, oid_b, m_b, k)
        if act_a < act_b:
            return False
        if act_a == act_b and (oid_a, m_a) == (oid_b, m_b):
            return False
    return True


def check_assignment(table: OrbitTable, ladder: Ladder, a: CarrierAssignment) -> bool:
    """Independent re-verification of one assignment (post-hoc checker)."""
    if len(a.slots) != ladder.ell:
        return False
    two_n = 2 * table.n
    for j, (oid, m) in enumerate(a.slots):
        o = table.orbit(oid)
        deg = ladder.hom_degrees[j]
        d = capped_delta(table, oid, m, a.k)
        if o.weakly_nondegenerate:
            if not (deg - two_n < d < deg):
                return False
        elif not (deg - two_n <= d <= deg):
            return False
    if len(set(a.slots)) != len(a.slots):
        return False
    return _ordering_ok(table, a.slots, ladder.nu, a.k)


def admissible_assignments(
    table: OrbitTable, ladder: Ladder, k: int
) -> List[CarrierAssignment]:
    if k < 1:
        raise ValueError("iteration order must be >= 1")
    candidates = [
        _slot_candidates(table, deg, k) for deg in ladder.hom_degrees
    ]
    out = []
    for combo in itertools.product(*candidates):
        if len(set(combo)) != len(combo):
            continue
        if _ordering_ok(table, combo, ladder.nu, k):
            out.append(CarrierAssignment(k=k, slots=tuple(combo)))
    out.sort(key=lambda a: a.slots)
    return out


@dataclass(frozen=True)
class StabilityReport:
    table: OrbitTable
    ladder: Ladder
    primes: Tuple[int, ...]
    assignments: Tuple[Tuple[int, CarrierAssignment], ...]
    stable_ks: Tuple[int, ...]
    phi: Tuple[str, ...]
    failures: Tuple[int, ...] = ()

    def assignment_for(self, k: int) -> CarrierAssignment:
        return dict(self.assignments)[k]


def stable_subsequence(
    table: OrbitTable, ladder: Ladder, primes: Sequence[int]
) -> StabilityReport:
    primes = tuple(primes)
    if any(b <= a for a, b in zip(primes, primes[1:])):
        raise ValueError("primes must be strictly increasing")
    chosen: List[Tuple[int, CarrierAssignment]] = []
    failures: List[int] = []
    for k in primes:
        assignments = admissible_assignments(table, ladder, k)
        if not assignments:
            failures.append(k)
            continue
        chosen.append((k, assignments[0]))
    groups: Dict[Tuple[str, ...], List[int]] = {}
    for k, a in chosen:
        groups.setdefault(a.phi(), []).append(k)
    if groups:
        phi = min(groups, key=lambda p: (-len(groups[p]), p))
        stable = tuple(groups[phi])
    else:
        phi, stable = (), ()
    return StabilityReport(
        table=table,
        ladder=ladder,
        primes=primes,
        assignments=tuple(chosen),
        stable_ks=stable,
        phi=phi,
        failures=tuple(failures),
    )


@dataclass(frozen=True)
class CountingVerdict:
    ok: bool
    slope: Fraction
    bound: Fraction
    per_k: Tuple[Tuple[int, Fraction, Fraction, Fraction], ...]
    first_violation: Optional[int]
    residual: Fraction

    @property
    def status(self) -> str:
        return "consistent" if self.ok else "divergent"


def counting_check(report: StabilityReport, x_id: str, y_id: str) -> CountingVerdict:
    """Compare the action-based and index-based orbit counts between x and y.

    Per stable k the number of image points between the carriers of x and y
    is estimated from the action spacing (period lambda0*nu) and from the
    index spacing (period 2N*nu); the two counts diverge linearly in k
    exactly when the augmented actions of x and y differ.
    """
    table, ladder = report.table, report.ladder
    md = table.md
    ell = ladder.ell
    nu = ladder.nu
    image = sorted(set(report.phi))
    bound = Fraction(3, 2) * len(image) + 2
    if x_id == y_id:
        return CountingVerdict(
            ok=True, slope=Fraction(0), bound=bound, per_k=(),
            first_violation=None, residual=Fraction(0),
        )
    for oid in (x_id, y_id):
        if oid not in report.phi:
            raise ValueError(f"{oid} is not in the stable image")
    ox, oy = table.orbit(x_id), table.orbit(y_id)
    aug_x = ox.action - (md.lam / 2) * ox.delta
    aug_y = oy.action - (md.lam / 2) * oy.delta
    slope = (aug_x - aug_y) / md.lambda0
    per_k = []
    first_violation = None
    for k in report.stable_ks:
        a = report.assignment_for(k)
        jx = a.phi().index(x_id)
        jy = a.phi().index(y_id)
        mx, my = a.slots[jx][1], a.slots[jy][1]
        d_act = capped_action(table, x_id, mx, k) - capped_action(table, y_id, my, k)
        d_idx = capped_delta(table, x_id, mx, k) - capped_delta(table, y_id, my, k)
        m_act = Fraction(ell) * d_act / (nu * md.lambda0)
        m_idx = Fraction(ell) * d_idx / (nu * 2 * md.N)
        diff = m_act - m_idx
        per_k.append((k, m_act, m_idx, diff))
        if first_violation is None and abs(diff) > bound:
            first_violation = k
    residual = bound / max(report.stable_ks) if report.stable_ks else Fraction(0)
    return CountingVerdict(
        ok=(slope == 0),
        slope=slope,
        bound=bound,
        per_k=tuple(per_k),
        first_violation=first_violation,
        residual=residual,
    )


@dataclass(frozen=True)
class RelationVerdict:
    status: str  # "consistent" | "contradiction"
    witness: Tuple = ()
    details: Tuple[str, ...] = ()


def relation_verdict(
    table: OrbitTable, ladder: Ladder, primes: Sequence[int]
) -> RelationVerdict:
    """All pairs in the stable image must share the augmented action."""
    report = stable_subsequence(table, ladder, primes)
    if report.failures:
        return RelationVerdict(
            status="contradiction",
            witness=("no admissible assignment", report.failures),
            details=tuple(
                f"k={k}: no carrier assignment satisfies the constraints"
                for k in report.failures
            ),
        )
    if not report.stable_ks:
        return RelationVerdict(
            status="contradiction",
            witness=("empty stable subsequence",),
        )
    image = sorted(set(report.phi))
    for x_id, y_id in itertools.combinations(image, 2):
        verdict = counting_check(report, x_id, y_id)
        if not verdict.ok:
            return RelationVerdict(
                status="contradiction",
                witness=(x_id, y_id, verdict.slope),
                details=(
                    f"augmented actions of {x_id} and {y_id} differ: "
                    f"counts diverge with slope {verdict.slope} per iteration",
                ),
            )
    return RelationVerdict(status="consistent")


@dataclass(frozen=True)
class DistinctnessVerdict:
    status: str  # "distinct" | "not_distinct" | "inconclusive"
    mechanism: str  # "action" | "index" | "none"
    witness: Tuple = ()


def distinctness_check(
    ladder: Ladder, assignment: CarrierAssignment, nondegenerate: bool
) -> DistinctnessVerdict:
    """Certify that the ell assigned orbits are pairwise distinct.

    nu = 1 ladders certify via the action chain; nu > 1 needs the
    non-degeneracy hypothesis to run the Conley-Zehnder degree chain.
    """
    if ladder.nu > 1 and not nondegenerate:
        return DistinctnessVerdict(
            status="inconclusive",
            mechanism="none",
            witness=("non-degeneracy required for nu > 1",),
        )
    mechanism = "action" if ladder.nu == 1 else "index"
    ids = assignment.phi()
    seen = {}
    for j, oid in enumerate(ids):
        if oid in seen:
            return DistinctnessVerdict(
                status="not_distinct", mechanism=mechanism, witness=(seen[oid], j, oid)
            )
        seen[oid] = j
    return DistinctnessVerdict(status="distinct", mechanism=mechanism)


@dataclass(frozen=True)
class ObstructionVerdict:
    status: str  # "contradiction" | "no_obstruction"
    witness: Tuple = ()
    details: Tuple[str, ...] = ()


def _fundamental_class_carrier(table: OrbitTable, k: int) -> Optional[Tuple[Slot, Fraction]]:
    """Action maximizer among capped orbits with mean index in [0, 2n]."""
    best = None
    for oid, m in _slot_candidates(table, 2 * table.n, k):
        act = capped_action(table, oid, m, k)
        key = (-act, oid, m)
        if best is None or key < best[0]:
            best = (key, ((oid, m), act))
    return None if best is None else best[1]


def neg_monotone_obstruction(
    table: OrbitTable, primes: Sequence[int]
) -> ObstructionVerdict:
    """Run the finite-orbit contradiction for negative monotone data.

    The carrier of the fundamental class at iteration k_i is a capping of an
    iterate of the stable orbit x of the carrier at k_1; its extra capping
    nu_i grows linearly with the mean index of x, while sub-additivity caps
    nu_i * I_omega(A) by a constant.  A positive mean index at k_1 therefore
    forces a contradiction at finite k.
    """
    md = table.md
    if md.lam >= 0:
        raise ValueError("negative monotone data required")
    primes = tuple(primes)
    carriers: List[Tuple[int, Slot, Fraction]] = []
    for k in primes:
        found = _fundamental_class_carrier(table, k)
        if found is not None:
            carriers.append((k, found[0], found[1]))
    if not carriers:
        return ObstructionVerdict(
            status="no_obstruction",
            details=("no feasible fundamental-class carrier at any iteration",),
        )
    counts: Dict[str, int] = {}
    for _, (oid, _m), _ in carriers:
        counts[oid] = counts.get(oid, 0) + 1
    stable_id = min(counts, key=lambda i: (-counts[i], i))
    stable = [(k, slot, act) for k, slot, act in carriers if slot[0] == stable_id]
    k1, (_, m1), _ = stable[0]
    x = table.orbit(stable_id)
    delta1 = k1 * x.delta - 2 * md.N * m1
    if delta1 == 0:
        return ObstructionVerdict(
            status="no_obstruction",
            details=(
                "degenerate branch: stable carrier has zero mean index at k1",
            ),
        )
    # sub-additivity constant: max over remainders r < k1 of c(r) - r * a_x
    c0 = Fraction(0)
    for r in range(1, k1):
        found = _fundamental_class_carrier(table, r)
        if found is not None:
            c0 = max(c0, found[1] - r * x.action)
    i_omega = md.I_omega_A
    for k_i, (_, m_i), _ in stable[1:]:
        l_i = k_i // k1
        nu_i = m_i - l_i * m1
        if nu_i * i_omega > c0:
            return ObstructionVerdict(
                status="contradiction",
                witness=(k_i, nu_i),
                details=(
                    f"nu_{k_i} * I_omega(A) = {nu_i * i_omega} exceeds the "
                    f"sub-additivity bound {c0}; a finite orbit set cannot "
                    "carry the fundamental class at all iterations",
                ),
            )
    return ObstructionVerdict(
        status="no_obstruction",
        details=("bound not exceeded within the supplied iterations",),
    )
