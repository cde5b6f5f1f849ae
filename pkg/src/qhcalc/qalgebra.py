"""Exact ground-field arithmetic and Novikov-graded quantum classes.

Everything here is exact: rationals are ``fractions.Fraction``, prime-field
elements are canonical residues in ``[0, p)``.  No floats anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Tuple, Union

Scalar = Union[int, Fraction]


class RingMismatchError(ValueError):
    """Two classes from different ring contexts were combined."""


class GradingError(ValueError):
    """An operation required a nonzero homogeneous class and did not get one."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class GroundField:
    """The coefficient field: the rationals (p == 0) or a prime field F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not _is_prime(self.p):
            raise ValueError(f"field order must be 0 (rationals) or prime, got {self.p}")

    @property
    def characteristic(self) -> int:
        return self.p

    def coerce(self, x: Scalar) -> Scalar:
        """Bring an integer or rational into canonical form for this field."""
        if self.p == 0:
            return Fraction(x)
        x = Fraction(x)
        if x.denominator % self.p == 0:
            raise ZeroDivisionError(f"denominator {x.denominator} not invertible mod {self.p}")
        num = x.numerator % self.p
        den = x.denominator % self.p
        return (num * pow(den, -1, self.p)) % self.p

    def zero(self) -> Scalar:
        return self.coerce(0)

    def one(self) -> Scalar:
        return self.coerce(1)

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return self.coerce(Fraction(a) + Fraction(b))

    def neg(self, a: Scalar) -> Scalar:
        return self.coerce(-Fraction(a))

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return self.coerce(Fraction(a) * Fraction(b))

    def inv(self, a: Scalar) -> Scalar:
        a = self.coerce(a)
        if a == 0:
            raise ZeroDivisionError("inversion of zero")
        if self.p == 0:
            return Fraction(1) / a
        return pow(int(a), -1, self.p)

    def parse(self, text: str) -> Scalar:
        return self.coerce(Fraction(text))

    def format(self, a: Scalar) -> str:
        return str(a)

    def spec(self) -> str:
        return "Q" if self.p == 0 else f"Fp:{self.p}"

    @classmethod
    def from_spec(cls, spec: str) -> "GroundField":
        spec = spec.strip()
        if spec == "Q":
            return cls(0)
        if spec.startswith("Fp:"):
            return cls(int(spec[3:]))
        raise ValueError(f"unknown field spec {spec!r} (expected 'Q' or 'Fp:<p>')")


def coeff_arith(field: GroundField, a: Scalar, b: Scalar, op: str) -> Scalar:
    """Single-dispatch helper over the four field operations.

    ``neg`` and ``inv`` are unary; ``b`` is ignored for them.
    """
    if op == "add":
        return field.add(a, b)
    if op == "mul":
        return field.mul(a, b)
    if op == "neg":
        return field.neg(a)
    if op == "inv":
        return field.inv(a)
    raise ValueError(f"unknown op {op!r}")


TermKey = Tuple[object, int]  # (basis label, q exponent)


@dataclass(frozen=True)
class QuantumClass:
    """A finite sum of (basis label, q^m) terms with exact coefficients.

    The ring context supplies the basis family, the minimal Chern number N,
    and the ground field.  Cohomological grading: a term (b, q^m) sits in
    degree |b| + 2N*m.  Zero coefficients are never stored.
    """

    ring: object
    terms: Tuple[Tuple[TermKey, Scalar], ...]

    @classmethod
    def build(cls, ring, mapping: Mapping[TermKey, Scalar]) -> "QuantumClass":
        field = ring.field
        cleaned = {}
        for (label, m), c in mapping.items():
            c = field.coerce(c)
            if c == 0:
                continue
            label = ring.normalize_label(label)
            key = (label, int(m))
            if key in cleaned:
                c = field.add(cleaned[key], c)
                if c == 0:
                    del cleaned[key]
                    continue
            cleaned[key] = c
        ordered = sorted(cleaned.items(), key=lambda kv: (ring.label_key(kv[0][0]), kv[0][1]))
        return cls(ring, tuple(ordered))

    # -- basic structure ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def term_dict(self) -> dict:
        return dict(self.terms)

    def _check_ring(self, other: "QuantumClass"):
        if self.ring != other.ring:
            raise RingMismatchError(f"ring contexts differ: {self.ring} vs {other.ring}")

    def __add__(self, other: "QuantumClass") -> "QuantumClass":
        self._check_ring(other)
        field = self.ring.field
        acc = dict(self.terms)
        for key, c in other.terms:
            acc[key] = field.add(acc.get(key, 0), c)
        return QuantumClass.build(self.ring, acc)

    def __neg__(self) -> "QuantumClass":
        field = self.ring.field
        return QuantumClass.build(self.ring, {k: field.neg(c) for k, c in self.terms})

    def __sub__(self, other: "QuantumClass") -> "QuantumClass":
        return self + (-other)

    def scale(self, c: Scalar) -> "QuantumClass":
        field = self.ring.field
        c = field.coerce(c)
        return QuantumClass.build(self.ring, {k: field.mul(v, c) for k, v in self.terms})

    def __mul__(self, other: "QuantumClass") -> "QuantumClass":
        self._check_ring(other)
        return self.ring.quantum_product(self, other)

    def __pow__(self, d: int) -> "QuantumClass":
        if d < 0:
            raise ValueError("negative powers are not defined")
        result = self.ring.one()
        for _ in range(d):
            result = result * self
        return result

    # -- grading -----------------------------------------------------------

    def term_degree(self, key: TermKey) -> int:
        label, m = key
        return self.ring.label_degree(label) + 2 * self.ring.N_chern * m

    def is_homogeneous(self) -> bool:
        degs = {self.term_degree(k) for k, _ in self.terms}
        return len(degs) <= 1

    def degree(self) -> int:
        """Cohomological degree of a nonzero homogeneous class."""
        degs = {self.term_degree(k) for k, _ in self.terms}
        if not degs:
            raise GradingError("zero class has no degree")
        if len(degs) > 1:
            raise GradingError(f"inhomogeneous class, term degrees {sorted(degs)}")
        return degs.pop()

    def q_shift(self, m: int) -> "QuantumClass":
        """Multiply by q^m: every Novikov exponent moves by m."""
        return QuantumClass.build(
            self.ring, {(label, e + m): c for (label, e), c in self.terms}
        )

    def __str__(self) -> str:
        from .serialize import class_to_str

        return class_to_str(self)


def qclass_add(a: QuantumClass, b: QuantumClass) -> QuantumClass:
    return a + b


def qclass_degree(a: QuantumClass) -> int:
    return a.degree()


def q_shift(a: QuantumClass, m: int) -> QuantumClass:
    return a.q_shift(m)
