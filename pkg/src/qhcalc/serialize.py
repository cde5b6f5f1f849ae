"""Parsing and formatting: class literals, JSON ring/orbit/scenario records.

Class literal syntax: ``1``, ``u``, ``u^3``, ``s[2,1]``, ``q^2*s[1]``,
``3/2*u``, sums joined with `` + `` / `` - ``, and ``ox`` between tensor
factors of a product ring.  All rationals travel as "a/b" strings in JSON.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import List, Tuple

from .qalgebra import GroundField, QuantumClass
from .rings import CPn, Grassmannian, ProductRing, RingPresentation
from .spectra import CappedOrbit, MonotoneData
from .ladders import Decomposition
from .carriers import OrbitTable, TableOrbit


class ParseError(ValueError):
    """Malformed literal or JSON input."""


# ---------------------------------------------------------------------------
# rationals


def frac_from_str(text) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}: {exc}") from exc


def frac_to_str(x) -> str:
    return str(Fraction(x))


# ---------------------------------------------------------------------------
# class literals

_NUM_RE = re.compile(r"^-?\d+(/\d+)?$")
_Q_RE = re.compile(r"^q(\^(-?\d+))?$")
_U_RE = re.compile(r"^u(\^(\d+))?$")
_S_RE = re.compile(r"^s\[([\d,\s]*)\]$")


def _split_terms(text: str) -> List[Tuple[int, str]]:
    """Split a literal into (sign, term) pairs on top-level + and -."""
    terms = []
    depth = 0
    sign = 1
    cur = []
    prev = ""
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if depth == 0 and ch in "+-" and prev not in "^*/" and cur and any(
            c.strip() for c in cur
        ):
            terms.append((sign, "".join(cur).strip()))
            sign = 1 if ch == "+" else -1
            cur = []
        else:
            cur.append(ch)
        if ch.strip():
            prev = ch
    last = "".join(cur).strip()
    if last:
        terms.append((sign, last))
    return terms


def _parse_base_label(ring: RingPresentation, text: str):
    text = text.strip()
    if isinstance(ring, ProductRing):
        parts = [p.strip() for p in text.split("ox")]
        if len(parts) != 2:
            raise ParseError(f"product label needs exactly one 'ox': {text!r}")
        return (
            _parse_base_label(ring.left, parts[0]),
            _parse_base_label(ring.right, parts[1]),
        )
    if text == "1":
        return ring.unit_label()
    m = _U_RE.match(text)
    if m and isinstance(ring, CPn):
        return ring.normalize_label(int(m.group(2) or 1))
    m = _S_RE.match(text)
    if m and isinstance(ring, Grassmannian):
        inner = m.group(1).strip()
        parts = [int(p) for p in inner.split(",")] if inner else []
        return ring.normalize_label(parts)
    raise ParseError(f"unrecognized basis label {text!r} for {type(ring).__name__}")


def _parse_term(ring: RingPresentation, text: str):
    """One product of a coefficient, q-powers, and one basis label."""
    coeff = Fraction(1)
    qpow = 0
    label = None
    factors = [f.strip() for f in text.split("*")]
    label_parts = []
    for f in factors:
        if not f:
            raise ParseError(f"empty factor in term {text!r}")
        if _NUM_RE.match(f):
            coeff *= Fraction(f)
            continue
        mq = _Q_RE.match(f)
        if mq:
            qpow += int(mq.group(2) or 1)
            continue
        label_parts.append(f)
    if not label_parts:
        label = ring.unit_label()
    elif len(label_parts) == 1:
        label = _parse_base_label(ring, label_parts[0])
    else:
        raise ParseError(f"more than one basis label in term {text!r}")
    return (label, qpow), coeff


def class_from_str(ring: RingPresentation, text: str) -> QuantumClass:
    text = text.strip()
    if not text:
        raise ParseError("empty class literal")
    if text == "0":
        return ring.zero()
    acc = {}
    field = ring.field
    for sign, term in _split_terms(text):
        key, coeff = _parse_term(ring, term)
        prior = acc.get(key, field.coerce(0))
        acc[key] = field.add(prior, field.coerce(sign * coeff))
    return QuantumClass.build(ring, acc)


def _label_to_str(ring: RingPresentation, label) -> str:
    if isinstance(ring, ProductRing):
        return (
            f"{_label_to_str(ring.left, label[0])} ox "
            f"{_label_to_str(ring.right, label[1])}"
        )
    if isinstance(ring, CPn):
        if label == 0:
            return "1"
        return "u" if label == 1 else f"u^{label}"
    if not label:
        return "1"
    return "s[" + ",".join(str(p) for p in label) + "]"


def class_to_str(cls: QuantumClass) -> str:
    if cls.is_zero():
        return "0"
    ring = cls.ring
    pieces = []
    for (label, m), c in cls.terms:
        factors = []
        if c != ring.field.one():
            factors.append(str(c))
        if m == 1:
            factors.append("q")
        elif m != 0:
            factors.append(f"q^{m}")
        lbl = _label_to_str(ring, label)
        if lbl != "1" or not factors:
            factors.append(lbl)
        pieces.append("*".join(factors))
    return " + ".join(pieces)


# ---------------------------------------------------------------------------
# ring JSON


def ring_from_json(data, field: GroundField = None) -> RingPresentation:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        kind = data["kind"]
    except (TypeError, KeyError) as exc:
        raise ParseError("ring spec missing key 'kind'") from exc
    if field is None:
        field = GroundField.from_spec(data.get("field", "Q"))
    lambda0 = frac_from_str(data.get("lambda0", "1"))
    try:
        if kind == "cpn":
            return CPn(n=int(data["n"]), field=field, lambda0=lambda0)
        if kind == "grassmannian":
            return Grassmannian(
                k=int(data["k"]), N=int(data["N"]), field=field, lambda0=lambda0
            )
        if kind == "product":
            factors = [ring_from_json(f, field=field) for f in data["factors"]]
            ring = factors[0]
            from .rings import kunneth

            for f in factors[1:]:
                ring = kunneth(ring, f)
            return ring
    except KeyError as exc:
        raise ParseError(f"ring spec missing key {exc}") from exc
    raise ParseError(f"unknown ring kind {kind!r}")


def ring_to_json(ring: RingPresentation) -> dict:
    if isinstance(ring, CPn):
        return {"kind": "cpn", "n": ring.n, "field": ring.field.spec()}
    if isinstance(ring, Grassmannian):
        return {
            "kind": "grassmannian", "k": ring.k, "N": ring.N,
            "field": ring.field.spec(),
        }
    return {
        "kind": "product",
        "factors": [ring_to_json(ring.left), ring_to_json(ring.right)],
        "field": ring.field.spec(),
    }


# ---------------------------------------------------------------------------
# decompositions


def decomposition_from_json(ring: RingPresentation, data) -> Decomposition:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        u0 = class_from_str(ring, data["u0"])
        factors = tuple(class_from_str(ring, f) for f in data["factors"])
        nu = int(data["nu"])
    except KeyError as exc:
        raise ParseError(f"decomposition missing key {exc}") from exc
    return Decomposition(u0=u0, factors=factors, nu=nu)


def decomposition_to_json(dec: Decomposition) -> dict:
    return {
        "u0": class_to_str(dec.u0),
        "factors": [class_to_str(f) for f in dec.factors],
        "nu": dec.nu,
    }


# ---------------------------------------------------------------------------
# orbits, tables, scenarios


def orbit_from_json(data) -> CappedOrbit:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        return CappedOrbit(
            orbit_id=data["id"],
            m=int(data.get("m", 0)),
            action=frac_from_str(data["action"]),
            mean_index=frac_from_str(data["delta"]),
            cz_index=None if data.get("cz") is None else int(data["cz"]),
            weakly_nondegenerate=bool(data.get("weakly_nondegenerate", False)),
        )
    except KeyError as exc:
        raise ParseError(f"orbit record missing key {exc}") from exc


def orbit_to_json(o: CappedOrbit) -> dict:
    return {
        "id": o.orbit_id,
        "m": o.m,
        "action": frac_to_str(o.action),
        "delta": frac_to_str(o.mean_index),
        "cz": o.cz_index,
    }


def monotone_from_json(data) -> MonotoneData:
    try:
        return MonotoneData(N=int(data["N"]), lam=frac_from_str(data["lambda"]))
    except KeyError as exc:
        raise ParseError(f"monotone record missing key {exc}") from exc


def monotone_to_json(md: MonotoneData) -> dict:
    return {"N": md.N, "lambda": frac_to_str(md.lam)}


def table_from_json(data) -> OrbitTable:
    try:
        md = monotone_from_json(data["monotone"])
        orbits = tuple(
            TableOrbit(
                orbit_id=o["id"],
                action=frac_from_str(o["action"]),
                delta=frac_from_str(o["delta"]),
                weakly_nondegenerate=bool(o.get("weakly_nondegenerate", False)),
            )
            for o in data["orbits"]
        )
        n = int(data["n"])
    except KeyError as exc:
        raise ParseError(f"scenario missing key {exc}") from exc
    return OrbitTable(md=md, n=n, orbits=orbits)


def model_from_json(data):
    from .models import CPnQuadraticModel, ProductModel

    if isinstance(data, str):
        data = json.loads(data)
    try:
        kind = data["kind"]
        if kind == "cpn":
            return CPnQuadraticModel(
                lambdas=tuple(frac_from_str(x) for x in data["lambdas"])
            )
        if kind == "product":
            return ProductModel(
                factors=tuple(model_from_json(f) for f in data["factors"])
            )
    except KeyError as exc:
        raise ParseError(f"model spec missing key {exc}") from exc
    raise ParseError(f"unknown model kind {kind!r}")


def model_to_json(model) -> dict:
    from .models import ProductModel

    if isinstance(model, ProductModel):
        return {
            "kind": "product",
            "factors": [model_to_json(f) for f in model.factors],
        }
    return {"kind": "cpn", "lambdas": [frac_to_str(x) for x in model.lambdas]}
