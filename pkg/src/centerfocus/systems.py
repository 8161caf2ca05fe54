"""Planar polynomial differential systems and their coefficient tables.

A system is described by a signature ``s(m0, m1, ..., ml)`` of distinct
homogeneity degrees (``m0`` is 1, or 0 for the classical affine example
``s(0,1)``) together with one coefficient slot per monomial of each side.
Slots carry the conventional binomial prefactors, so for ``s(1,2)`` the
right-hand sides read::

    dx/dt = c*x + d*y + g*x^2 + 2*h*x*y + k*y^2
    dy/dt = e*x + f*y + l*x^2 + 2*m*x*y + n*y^2

and ``s(1,2,3)`` extends them with ``p*x^3 + 3*q*x^2*y + 3*r*x*y^2 + s*y^3``
and ``t*x^3 + 3*u*x^2*y + 3*v*x*y^2 + w*y^3``.  Other signatures use
systematic slot names ``p{deg}_{j}`` / ``q{deg}_{j}`` with the same binomial
convention.

The center-focus variety is used through its canonical chart
``c=0, d=1, e=-1, f=0``, on which the linear part is the standard rotation
and the quadratic generator ``k2`` becomes ``x^2 + y^2``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Mapping

from .poly import Poly, PolyRing

VARIETY_CHART = {"c": Fraction(0), "d": Fraction(1), "e": Fraction(-1), "f": Fraction(0)}

_NAMED_BLOCKS = {
    0: ("a", "b"),
    1: ("cd", "ef"),
    2: ("ghk", "lmn"),
    3: ("pqrs", "tuvw"),
}


class SystemError(ValueError):
    """Malformed signature, unknown coefficient, or conflicting directives."""


@dataclass(frozen=True)
class Signature:
    degrees: tuple[int, ...]

    def __post_init__(self):
        d = self.degrees
        if not d:
            raise SystemError("empty signature")
        if list(d) != sorted(set(d)):
            raise SystemError("signature degrees must be sorted and distinct: %r" % (d,))
        if d[0] not in (0, 1):
            raise SystemError("leading degree must be 1 (or 0 for the affine example)")
        if 1 not in d:
            raise SystemError("signature must contain the linear degree 1")
        if any(x < 0 for x in d):
            raise SystemError("negative degree in signature")

    @staticmethod
    def of(*degrees: int) -> "Signature":
        return Signature(tuple(int(x) for x in degrees))

    @staticmethod
    def parse(text: str) -> "Signature":
        body = text.strip()
        if body.startswith("s(") and body.endswith(")"):
            body = body[2:-1]
        try:
            degrees = tuple(int(p) for p in body.split(",") if p.strip() != "")
        except ValueError:
            raise SystemError("cannot parse signature from %r" % (text,)) from None
        return Signature(degrees)

    @property
    def label(self) -> str:
        return "s(%s)" % ",".join(str(d) for d in self.degrees)

    @property
    def nonlinear_degrees(self) -> tuple[int, ...]:
        return tuple(d for d in self.degrees if d >= 2)

    @property
    def ell(self) -> int:
        """Number of components beyond the leading one."""
        return len(self.degrees) - 1


def slot_count(signature: Signature) -> int:
    """Total number of coefficient slots: two sides of d+1 slots per degree."""
    return 2 * sum(d + 1 for d in signature.degrees)


@dataclass(frozen=True)
class CoeffSymbol:
    name: str
    degree: int
    side: str  # "P" (dx/dt) or "Q" (dy/dt)
    position: int  # slot multiplies x^(degree-position) * y^position
    prefactor: int  # binomial(degree, position)


def _block_names(signature: Signature, degree: int) -> tuple[list[str], list[str]]:
    named = _NAMED_BLOCKS.get(degree)
    use_named = named is not None and (
        degree <= 1 or signature.degrees in ((1, 2), (1, 2, 3), (0, 1))
    )
    if use_named:
        return list(named[0]), list(named[1])
    width = degree + 1
    return (
        ["p%d_%d" % (degree, j) for j in range(width)],
        ["q%d_%d" % (degree, j) for j in range(width)],
    )


def _layout(signature: Signature) -> tuple[CoeffSymbol, ...]:
    symbols = []
    for degree in signature.degrees:
        p_list, q_list = _block_names(signature, degree)
        for side, names in (("P", p_list), ("Q", q_list)):
            for position, name in enumerate(names):
                symbols.append(
                    CoeffSymbol(name, degree, side, position, comb(degree, position))
                )
    return tuple(symbols)


@dataclass(frozen=True)
class VectorField:
    P: Poly
    Q: Poly


class SystemSpec:
    """A signature plus a value (or symbol) for every coefficient slot."""

    def __init__(self, signature: Signature, values: Mapping[str, Fraction | None] | None = None):
        self.signature = signature
        self.symbols = _layout(signature)
        self._by_name = {s.name: s for s in self.symbols}
        self.ring = PolyRing(("x", "y") + tuple(s.name for s in self.symbols), n_phase=2)
        self.values: dict[str, Fraction | None] = {s.name: None for s in self.symbols}
        if values:
            for name, v in values.items():
                if name not in self._by_name:
                    raise SystemError("unknown coefficient %r for %s" % (name, signature.label))
                self.values[name] = None if v is None else Fraction(v)

    def __repr__(self):
        assigned = {k: str(v) for k, v in self.values.items() if v is not None}
        return "SystemSpec(%s, %r)" % (self.signature.label, assigned)

    def symbol(self, name: str) -> CoeffSymbol:
        try:
            return self._by_name[name]
        except KeyError:
            raise SystemError("unknown coefficient %r" % (name,)) from None

    def with_values(self, updates: Mapping[str, Fraction | None]) -> "SystemSpec":
        merged = dict(self.values)
        for name, v in updates.items():
            if name not in self._by_name:
                raise SystemError("unknown coefficient %r for %s" % (name, self.signature.label))
            merged[name] = None if v is None else Fraction(v)
        return SystemSpec(self.signature, merged)

    @property
    def is_symbolic(self) -> bool:
        return all(v is None for v in self.values.values())

    @property
    def is_concrete(self) -> bool:
        return all(v is not None for v in self.values.values())

    @property
    def phase_indices(self) -> tuple[int, int]:
        return (0, 1)

    def block_indices(self, degree: int) -> list[int]:
        """Ring indices of the coefficient symbols of one component."""
        return [self.ring.index[s.name] for s in self.symbols if s.degree == degree]

    def coefficient_groups(self) -> list[list[int]]:
        """Variable groups for typing: per-degree coefficient blocks."""
        return [self.block_indices(d) for d in self.signature.degrees]

    def substituted(self, p: Poly) -> Poly:
        """Substitute this spec's concrete values into a generic-ring polynomial."""
        bindings = {
            name: self.ring.const(v) for name, v in self.values.items() if v is not None
        }
        return p.subs(bindings)

    @property
    def on_variety(self) -> bool:
        return all(self.values.get(k) == v for k, v in VARIETY_CHART.items())


@lru_cache(maxsize=None)
def _generic(signature_degrees: tuple[int, ...]) -> SystemSpec:
    return SystemSpec(Signature(signature_degrees))


def build_generic(signature: Signature) -> SystemSpec:
    """Fully symbolic system for a signature (cached; shared ring)."""
    return _generic(signature.degrees)


def vector_field(spec: SystemSpec) -> VectorField:
    """Assemble P and Q with the layout's binomial prefactors, substituting
    any concrete coefficient values."""
    ring = spec.ring
    P = ring.zero()
    Q = ring.zero()
    for s in spec.symbols:
        value = spec.values[s.name]
        coeff = ring.var(s.name) if value is None else ring.const(value)
        mono = ring.monomial({"x": s.degree - s.position, "y": s.position}, s.prefactor)
        if s.side == "P":
            P = P + coeff * mono
        else:
            Q = Q + coeff * mono
    return VectorField(P, Q)


def restrict_to_variety(spec: SystemSpec) -> SystemSpec:
    """Pin the linear part to the rotation chart c=0, d=1, e=-1, f=0.

    Nonlinear coefficients are never touched.  A concrete linear part that
    disagrees with the chart is an error, not something to overwrite.
    """
    if 1 not in spec.signature.degrees:
        raise SystemError("variety restriction needs a linear component")
    for name, want in VARIETY_CHART.items():
        have = spec.values.get(name)
        if have is not None and have != want:
            raise SystemError(
                "linear coefficient %s=%s contradicts the variety chart (%s=%s)"
                % (name, have, name, want)
            )
    return spec.with_values(VARIETY_CHART)


def linear_generators(spec: SystemSpec) -> dict[str, Poly]:
    """The linear-part generators i1 = c+f, i2 = c^2+2de+f^2 and
    k2 = -e*x^2 + (c-f)*x*y + d*y^2, with concrete values substituted."""
    if 1 not in spec.signature.degrees:
        raise SystemError("system has no linear component")
    r = spec.ring
    c, d, e, f = (r.var(n) for n in "cdef")
    x, y = r.var("x"), r.var("y")
    gens = {
        "i1": c + f,
        "i2": c * c + 2 * d * e + f * f,
        "k2": -e * x * x + (c - f) * x * y + d * y * y,
    }
    return {k: spec.substituted(v) for k, v in gens.items()}


def k2_discriminant_report(spec: SystemSpec) -> dict:
    """Both discriminant expressions for k2: the classical (c-f)^2 + 4de of
    the binary quadratic, and 2*i2 - i1^2.  They are one and the same
    polynomial; the report carries the identity check and the values on the
    given spec so callers never have to guess a sign convention."""
    r = spec.ring
    c, d, e, f = (r.var(n) for n in "cdef")
    classical = (c - f) ** 2 + 4 * d * e
    i1 = c + f
    i2 = c * c + 2 * d * e + f * f
    via_invariants = 2 * i2 - i1 * i1
    return {
        "classical": classical,
        "via_invariants": via_invariants,
        "identical": classical == via_invariants,
        "on_spec": spec.substituted(classical),
    }


# -- external formats ------------------------------------------------------


def parse_system(arg: str | Mapping) -> SystemSpec:
    """Parse a system argument: JSON text/object, or the inline shorthand
    ``"s(1,2); V; g=1, n=1/2"``.

    Shorthand rules: ``V`` applies the variety restriction; when any
    assignment is present the spec is concrete and unlisted nonlinear
    coefficients default to 0; with no assignments they stay symbolic.
    """
    if isinstance(arg, Mapping):
        return _from_json_object(arg)
    text = arg.strip()
    if text.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SystemError("bad system JSON: %s" % (exc,)) from None
        return _from_json_object(obj)
    return _from_shorthand(text)


def _parse_rational(raw, where: str) -> Fraction:
    if isinstance(raw, bool):
        raise SystemError("bad rational %r for %s" % (raw, where))
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, str):
        try:
            return Fraction(raw.strip())
        except (ValueError, ZeroDivisionError):
            raise SystemError("bad rational %r for %s" % (raw, where)) from None
    raise SystemError("bad rational %r for %s" % (raw, where))


def _from_json_object(obj: Mapping) -> SystemSpec:
    unknown = set(obj) - {"signature", "coefficients", "variety"}
    if unknown:
        raise SystemError("unknown system keys: %s" % ", ".join(sorted(unknown)))
    if "signature" not in obj:
        raise SystemError("system JSON needs a 'signature' list")
    sig_raw = obj["signature"]
    if isinstance(sig_raw, str):
        signature = Signature.parse(sig_raw)
    else:
        signature = Signature(tuple(int(x) for x in sig_raw))
    spec = build_generic(signature)
    coeffs = obj.get("coefficients") or {}
    updates: dict[str, Fraction | None] = {}
    for name, raw in coeffs.items():
        updates[name] = None if raw is None else _parse_rational(raw, name)
    spec = spec.with_values(updates)
    if obj.get("variety"):
        spec = restrict_to_variety(spec)
    return spec


def _from_shorthand(text: str) -> SystemSpec:
    parts = [p.strip() for p in text.split(";")]
    if not parts or not parts[0]:
        raise SystemError("empty system shorthand")
    signature = Signature.parse(parts[0])
    spec = build_generic(signature)
    variety = False
    assignments: dict[str, Fraction] = {}
    for part in parts[1:]:
        if not part:
            continue
        if part in ("V", "v"):
            variety = True
            continue
        for item in part.split(","):
            item = item.strip()
            if not item:
                continue
            if "=" not in item:
                raise SystemError("bad shorthand fragment %r (want name=value or V)" % (item,))
            name, _, raw = item.partition("=")
            name = name.strip()
            spec.symbol(name)  # validates, with a clear error
            assignments[name] = _parse_rational(raw.strip(), name)
    if assignments:
        concrete = {
            s.name: Fraction(0) for s in spec.symbols if s.degree >= 2
        }
        concrete.update(assignments)
        spec = spec.with_values(concrete)
    if variety:
        spec = restrict_to_variety(spec)
    return spec


def system_to_json(spec: SystemSpec) -> dict:
    """JSON-ready echo of a spec (symbolic slots are null)."""
    return {
        "signature": list(spec.signature.degrees),
        "coefficients": {
            name: (None if v is None else str(v)) for name, v in spec.values.items()
        },
    }
