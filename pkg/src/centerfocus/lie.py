"""The four-operator Lie algebra acting on systems, and comitant verification.

Each elementary matrix E in gl(2) induces a one-parameter family of linear
substitutions T = I + eps*E.  Transforming a vector field F by
T^{-1} o F o T and expanding to first order in eps gives the field increment

    delta F = E*F - J_F * (E z),

whose coefficient readout defines a derivation D_E on the coefficient ring.
The operator attached to E is  X_E = (E z) . grad_phase  +  D_E.  With this
orientation the classical generators of the affine example (i1, i2, i3, k1,
k2, k3) satisfy X1(k) = X4(k) = -g*k and X2(k) = X3(k) = 0, with the weight
g determined by  2g = sum_i d_i*(m_i - 1) - delta;  that anchor freezes the
sign convention.

``D1`` and ``D4`` act diagonally on coefficient monomials; the calibrated
pair of their negated eigenvalues is the isobarity of a coefficient
polynomial (the calibration anchor is the leading defining focal quantity of
``s(1,2)``, whose pair is (3, -1)).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .poly import Inhomogeneous, Poly
from .systems import Signature, SystemSpec, build_generic, vector_field


@dataclass(frozen=True)
class ComitantType:
    delta: int
    d: tuple[int, ...]

    def as_tuple(self) -> tuple[int, ...]:
        return (self.delta,) + self.d

    def __str__(self):
        return "(%s)" % ",".join(str(v) for v in self.as_tuple())


def weight_of(ctype: ComitantType, signature: Signature) -> int | None:
    """Weight g from 2g = sum d_i*(m_i - 1) - delta; None when 2g is odd
    (no comitant of that type exists)."""
    if len(ctype.d) != len(signature.degrees):
        raise ValueError("type has %d blocks, signature has %d" % (len(ctype.d), len(signature.degrees)))
    twice = sum(di * (mi - 1) for di, mi in zip(ctype.d, signature.degrees)) - ctype.delta
    if twice % 2:
        return None
    return twice // 2


class CoeffDerivation:
    """A derivation of the coefficient ring, given on the coefficient symbols."""

    def __init__(self, name: str, spec: SystemSpec, table: dict[str, Poly]):
        self.name = name
        self.spec = spec
        self.table = table

    def __call__(self, p: Poly) -> Poly:
        out = p.ring.zero()
        for name, image in self.table.items():
            if image.is_zero():
                continue
            dp = p.diff(name)
            if dp.is_zero():
                continue
            out = out + image * dp
        return out

    def iterate(self, p: Poly, times: int) -> Poly:
        for _ in range(times):
            p = self(p)
        return p


class LieOperator:
    """Phase part (E z).grad plus the matching coefficient derivation."""

    def __init__(self, name: str, spec: SystemSpec, phase: tuple[Poly, Poly], derivation: CoeffDerivation):
        self.name = name
        self.spec = spec
        self.phase = phase
        self.derivation = derivation

    def __call__(self, p: Poly) -> Poly:
        wx, wy = self.phase
        return wx * p.diff("x") + wy * p.diff("y") + self.derivation(p)

    def __repr__(self):
        return "<LieOperator %s>" % (self.name,)


@dataclass(frozen=True)
class Operators:
    x1: LieOperator
    x2: LieOperator
    x3: LieOperator
    x4: LieOperator
    d1: CoeffDerivation
    d2: CoeffDerivation
    d3: CoeffDerivation
    d4: CoeffDerivation

    def all_x(self) -> tuple[LieOperator, ...]:
        return (self.x1, self.x2, self.x3, self.x4)


def operators(spec: SystemSpec) -> Operators:
    """The operators X1..X4 and D1..D4 for the spec's signature.

    The coefficient derivations are derived from the infinitesimal
    substitution, not tabulated; the spec must be fully symbolic since the
    operators act on the symbolic coordinate ring.
    """
    if not spec.is_symbolic:
        raise ValueError("operators need a fully symbolic system spec")
    return _operators_for(spec.signature.degrees)


# elementary matrices, listed with the phase fields x*d/dx, y*d/dx, x*d/dy, y*d/dy
_ELEMENTARY = (
    ("X1", (1, 0, 0, 0)),
    ("X2", (0, 1, 0, 0)),
    ("X3", (0, 0, 1, 0)),
    ("X4", (0, 0, 0, 1)),
)


@lru_cache(maxsize=None)
def _operators_for(degrees: tuple[int, ...]) -> Operators:
    spec = build_generic(Signature(degrees))
    ring = spec.ring
    x, y = ring.var("x"), ring.var("y")
    F = vector_field(spec)
    Px, Py, Qx, Qy = F.P.diff("x"), F.P.diff("y"), F.Q.diff("x"), F.Q.diff("y")
    xs, ds = [], []
    for name, (a, b, c, d) in _ELEMENTARY:
        # E = [[a, b], [c, d]]; phase field components of E z
        wx = x * a + y * b
        wy = x * c + y * d
        dP = (F.P * a + F.Q * b) - (Px * wx + Py * wy)
        dQ = (F.P * c + F.Q * d) - (Qx * wx + Qy * wy)
        table: dict[str, Poly] = {}
        for s in spec.symbols:
            src = dP if s.side == "P" else dQ
            entry = src.coefficient_of((0, 1), (s.degree - s.position, s.position))
            table[s.name] = entry * Fraction(1, s.prefactor)
        # the readout must account for every term of the increment
        rebuilt_P = ring.zero()
        rebuilt_Q = ring.zero()
        for s in spec.symbols:
            mono = ring.monomial({"x": s.degree - s.position, "y": s.position}, s.prefactor)
            if s.side == "P":
                rebuilt_P = rebuilt_P + table[s.name] * mono
            else:
                rebuilt_Q = rebuilt_Q + table[s.name] * mono
        if rebuilt_P != dP or rebuilt_Q != dQ:
            raise AssertionError("coefficient readout lost terms for %s" % name)
        derivation = CoeffDerivation("D" + name[1], spec, table)
        ds.append(derivation)
        xs.append(LieOperator(name, spec, (wx, wy), derivation))
    return Operators(xs[0], xs[1], xs[2], xs[3], ds[0], ds[1], ds[2], ds[3])


def type_of(p: Poly, spec: SystemSpec):
    """ComitantType of a polynomial, or an Inhomogeneous witness."""
    groups = [list(spec.phase_indices)] + spec.coefficient_groups()
    degs = p.multidegree(groups)
    if isinstance(degs, Inhomogeneous):
        return degs
    return ComitantType(degs[0], tuple(degs[1:]))


@dataclass
class ComitantVerdict:
    ok: bool
    ctype: ComitantType | None
    weight: int | None
    reason: str = ""
    witness_operator: str = ""
    residual: Poly | None = None

    def __bool__(self):
        return self.ok


def is_comitant(p: Poly, spec: SystemSpec) -> ComitantVerdict:
    """Necessary-and-sufficient operator test: X1(p) = X4(p) = -g*p and
    X2(p) = X3(p) = 0 for the weight g of p's type."""
    ctype = type_of(p, spec)
    if isinstance(ctype, Inhomogeneous):
        raise ValueError("polynomial is not homogeneous per variable block: %r" % (ctype,))
    g = weight_of(ctype, spec.signature)
    if g is None:
        return ComitantVerdict(False, ctype, None, reason="half-integer weight")
    ops = operators(spec)
    for op, expect_scale in ((ops.x1, -g), (ops.x2, 0), (ops.x3, 0), (ops.x4, -g)):
        residual = op(p) - p * expect_scale
        if not residual.is_zero():
            return ComitantVerdict(
                False, ctype, g, reason="operator identity fails",
                witness_operator=op.name, residual=residual,
            )
    return ComitantVerdict(True, ctype, g)


class ReconstructionError(ValueError):
    def __init__(self, message: str, residual: Poly):
        super().__init__(message)
        self.residual = residual


def reconstruct_from_semi_invariant(S: Poly, delta: int, spec: SystemSpec) -> Poly:
    """Rebuild the comitant with leading semi-invariant S:

        k = sum_{j=0}^{delta} (-1)^j / j! * D3^j(S) * x^(delta-j) * y^j

    Fails (with the offending residual) when D3^(delta+1)(S) != 0, i.e. S is
    not the leading coefficient of a degree-delta comitant.
    """
    if S.involves(spec.phase_indices):
        raise ValueError("semi-invariant must be free of phase variables")
    ops = operators(spec)
    ring = spec.ring
    term = S
    out = ring.zero()
    fact = 1
    for j in range(delta + 1):
        if j:
            term = ops.d3(term)
            fact *= j
        mono = ring.monomial({"x": delta - j, "y": j}, Fraction((-1) ** j, fact))
        out = out + term * mono
    residual = ops.d3(term)
    if not residual.is_zero():
        raise ReconstructionError(
            "input is not a leading semi-invariant of phase degree %d" % delta, residual
        )
    return out


@dataclass
class NotIsobaric:
    witness: tuple

    def __bool__(self):
        return False


@lru_cache(maxsize=None)
def _diagonal_rates(degrees: tuple[int, ...]) -> tuple[dict[str, Fraction], dict[str, Fraction]]:
    spec = build_generic(Signature(degrees))
    ops = _operators_for(degrees)
    rates = []
    for deriv in (ops.d1, ops.d4):
        table = {}
        for s in spec.symbols:
            image = deriv.table[s.name]
            var = spec.ring.var(s.name)
            if image.is_zero():
                table[s.name] = Fraction(0)
                continue
            ratio = image.divide_exact(var)
            if ratio is None or ratio.total_degree() != 0:
                raise AssertionError("%s is not diagonal on %s" % (deriv.name, s.name))
            table[s.name] = ratio.leading()[1]
        rates.append(table)
    return rates[0], rates[1]


def isobarity_of(p: Poly, spec: SystemSpec):
    """Calibrated simultaneous eigenvalue pair of p under D1 and D4.

    p must be free of phase variables and every monomial must carry the same
    eigenvalue pair; otherwise a :class:`NotIsobaric` witness of two
    conflicting monomials is returned.  Calibration: the pair is the negated
    eigenvalues, anchored so the leading defining focal quantity of s(1,2)
    reports (3, -1); the anchor is enforced by the reproduction suite.
    """
    if p.involves(spec.phase_indices):
        raise ValueError("isobarity applies to coefficient polynomials only")
    if p.is_zero():
        raise ValueError("isobarity of the zero polynomial is undefined")
    rate1, rate4 = _diagonal_rates(spec.signature.degrees)
    names = spec.ring.names
    pair = None
    first_mono = None
    for mono in p.terms:
        lam1 = sum(e * rate1[names[i]] for i, e in enumerate(mono) if e and i >= 2)
        lam4 = sum(e * rate4[names[i]] for i, e in enumerate(mono) if e and i >= 2)
        this = (-lam1, -lam4)
        if pair is None:
            pair, first_mono = this, mono
        elif this != pair:
            return NotIsobaric(witness=(first_mono, mono))
    return (int(pair[0]), int(pair[1]))


def independence_rank(polys: list[Poly], trials: int = 5, seed: int = 1) -> int:
    """Transcendence-degree estimate: maximal rank of the Jacobian of the
    polynomials with respect to all ring variables at seeded random rational
    points.  Always a lower bound; equals the true transcendence degree with
    probability 1."""
    if not polys:
        raise ValueError("independence_rank needs at least one polynomial")
    ring = polys[0].ring
    for p in polys:
        if p.ring != ring:
            raise ValueError("polynomials come from different rings")
    jac = [[p.diff(i) for i in range(ring.nvars)] for p in polys]
    rng = random.Random(seed)
    best = 0
    for _ in range(max(1, trials)):
        point = {
            name: Fraction(rng.randint(-30, 30), rng.randint(1, 7)) for name in ring.names
        }
        matrix = [[entry.eval_all(point) for entry in row] for row in jac]
        best = max(best, linalg.rank(matrix))
        if best == min(len(polys), ring.nvars):
            break
    return best


def bracket(op_a: LieOperator, op_b: LieOperator, p: Poly) -> Poly:
    """[a, b] applied to p."""
    return op_a(op_b(p)) - op_b(op_a(p))
