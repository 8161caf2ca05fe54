"""Hilbert series in cyclotomic-factored form, Krull dimensions, and the
algebraic-basis bound.

A series is a rational function  numerator / prod (1 - m_i)^mult_i  where
each m_i is a monomial in the series variables.  The built-in fixtures are
the published series of the affine example's comitant and invariant
algebras; the module is a calculator over such data, not a constructor of
new series.

The Krull dimension of a graded algebra equals the pole multiplicity of its
(single-variable) Hilbert series at 1: each factor (1 - t^a)^m contributes
m, and the numerator's vanishing order at t = 1 (computed by exact division
by 1 - t) is subtracted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .poly import Poly, PolyRing
from .systems import Signature, slot_count


@dataclass(frozen=True)
class HilbertSeries:
    variables: tuple[str, ...]
    numerator: Poly
    factors: tuple[tuple[tuple[int, ...], int], ...]  # ((exponents), multiplicity)

    def __post_init__(self):
        for exps, mult in self.factors:
            if len(exps) != len(self.variables):
                raise ValueError("factor exponent width does not match variables")
            if mult < 1 or all(e == 0 for e in exps):
                raise ValueError("bad denominator factor (1 - %r)^%d" % (exps, mult))

    @property
    def ring(self) -> PolyRing:
        return self.numerator.ring

    def denominator_poly(self) -> Poly:
        den = self.ring.one()
        for exps, mult in self.factors:
            factor = self.ring.one() - self.ring.monomial(exps)
            den = den * factor**mult
        return den

    def describe(self) -> dict:
        return {
            "variables": list(self.variables),
            "numerator": str(self.numerator),
            "denominator": [[list(e), m] for e, m in self.factors],
        }


def make_series(variables: Sequence[str], numerator: str | Poly, factors) -> HilbertSeries:
    ring = PolyRing(tuple(variables))
    num = ring.parse(numerator) if isinstance(numerator, str) else numerator
    packed = []
    for item in factors:
        exps, mult = item
        if isinstance(exps, int):
            exps = (exps,)
        packed.append((tuple(int(e) for e in exps), int(mult)))
    return HilbertSeries(tuple(variables), num, tuple(packed))


def _vanishing_order_at_one(num: Poly) -> int:
    """Largest power of (1 - t) dividing a univariate polynomial."""
    ring = num.ring
    one_minus_t = ring.one() - ring.var(ring.names[0])
    order = 0
    while True:
        quotient = num.divide_exact(one_minus_t)
        if quotient is None:
            return order
        num = quotient
        order += 1


def krull_dimension(series: HilbertSeries) -> int:
    """Pole multiplicity at 1 of a single-variable series."""
    if len(series.variables) != 1:
        raise ValueError("Krull dimension needs a single-variable series")
    if series.numerator.is_zero():
        raise ValueError("zero numerator has no pole data")
    poles = sum(mult for _, mult in series.factors)
    return poles - _vanishing_order_at_one(series.numerator)


def expand(series: HilbertSeries, N: int) -> list:
    """Exact power-series coefficients 0..N of a single-variable series."""
    if len(series.variables) != 1:
        raise ValueError("expansion needs a single-variable series")
    if N < 0:
        raise ValueError("expansion order must be >= 0")
    coeffs = [Fraction(0)] * (N + 1)
    for mono, c in series.numerator.terms.items():
        if mono[0] <= N:
            coeffs[mono[0]] += c
    for (a,), mult in series.factors:
        for _ in range(mult):
            for i in range(a, N + 1):  # multiply by 1/(1 - t^a)
                coeffs[i] += coeffs[i - a]
    return [int(c) if c.denominator == 1 else c for c in coeffs]


def compare(a: HilbertSeries, b: HilbertSeries, N: int) -> str:
    """Coefficient-wise comparison to order N: 'equal', 'a<=b', 'b<=a' or
    'incomparable'."""
    ca, cb = expand(a, N), expand(b, N)
    le = all(x <= y for x, y in zip(ca, cb))
    ge = all(x >= y for x, y in zip(ca, cb))
    if le and ge:
        return "equal"
    if le:
        return "a<=b"
    if ge:
        return "b<=a"
    return "incomparable"


def envelope_check(a: HilbertSeries, C: Fraction | int, m: int, N: int) -> bool:
    """Coefficient-wise  a <= C / (1-t)^m  to order N, which bounds the
    Krull dimension of a's algebra by m."""
    C = Fraction(C)
    coeffs = expand(a, N)
    return all(coeffs[n] <= C * comb(n + m - 1, m - 1) for n in range(N + 1))


def series_equal(a: HilbertSeries, b: HilbertSeries) -> bool:
    """Exact equality as rational functions (cross-multiplication)."""
    if set(a.variables) != set(b.variables):
        return False
    names = tuple(sorted(set(a.variables)))
    ring = PolyRing(names)

    def lift(series: HilbertSeries, target: PolyRing):
        mapping = [target.index[v] for v in series.variables]

        def move(p: Poly) -> Poly:
            out = {}
            for mono, c in p.terms.items():
                exps = [0] * target.nvars
                for src, e in enumerate(mono):
                    exps[mapping[src]] = e
                out[tuple(exps)] = c
            return Poly(target, out)

        den = target.one()
        for exps, mult in series.factors:
            vec = [0] * target.nvars
            for src, e in enumerate(exps):
                vec[mapping[src]] = e
            den = den * (target.one() - target.monomial(vec)) ** mult
        return move(series.numerator), den

    na, da = lift(a, ring)
    nb, db = lift(b, ring)
    return na * db == nb * da


def specialize(series: HilbertSeries, mode: str, var: str | None = None) -> HilbertSeries:
    """Substitute variables of a generalized series.

    mode "invariants": first variable (the phase grading) goes to 0; factors
    whose monomial involves it collapse to 1 and drop out.
    mode "common": every variable becomes one variable (``var``, default the
    first variable's name), merging factors and cancelling numerator factors
    where the division is exact.
    """
    if mode == "invariants":
        if len(series.variables) < 2:
            raise ValueError("invariant specialization needs a phase variable to drop")
        rest = series.variables[1:]
        ring = PolyRing(rest)
        num = {}
        for mono, c in series.numerator.terms.items():
            if mono[0] == 0:
                num[mono[1:]] = c
        numerator = Poly(ring, num)
        factors = []
        for exps, mult in series.factors:
            if exps[0] == 0:
                factors.append((exps[1:], mult))
        if numerator.is_zero():
            raise ValueError("numerator vanishes identically under the substitution")
        return HilbertSeries(rest, numerator, tuple(factors))
    if mode == "common":
        name = var or series.variables[0]
        ring = PolyRing((name,))
        num = {}
        for mono, c in series.numerator.terms.items():
            key = (sum(mono),)
            num[key] = num.get(key, Fraction(0)) + c
        num = {k: v for k, v in num.items() if v}
        numerator = Poly(ring, num)
        if numerator.is_zero():
            raise ValueError("numerator vanishes identically under the substitution")
        merged: dict[int, int] = {}
        for exps, mult in series.factors:
            total = sum(exps)
            if total == 0:
                raise ValueError("a denominator factor degenerates to zero")
            merged[total] = merged.get(total, 0) + mult
        factors = sorted(merged.items())
        # cancel numerator factors that divide exactly
        out_factors = []
        for a, mult in factors:
            factor = ring.one() - ring.monomial((a,))
            while mult > 0:
                quotient = numerator.divide_exact(factor)
                if quotient is None:
                    break
                numerator = quotient
                mult -= 1
            if mult:
                out_factors.append(((a,), mult))
        return HilbertSeries((name,), numerator, tuple(out_factors))
    raise ValueError("unknown specialization mode %r" % (mode,))


# -- published series data ---------------------------------------------------

BUILTIN_SERIES = {
    # comitant algebra of the affine example, common grading
    "S01": make_series(("u",), "1 - u + u^2", [(1, 2), (2, 1), (3, 2)]),
    # invariant algebra of the affine example, common grading
    "SI01": make_series(("z",), "1", [(1, 1), (2, 1), (3, 1)]),
    # the same two algebras with the full (phase, block) grading
    "S01_generalized": make_series(
        ("u", "z0", "z1"),
        "1 + u*z0*z1",
        [((1, 1, 0), 1), ((0, 0, 1), 1), ((0, 0, 2), 1), ((0, 2, 1), 1), ((2, 0, 1), 1)],
    ),
    "SI01_generalized": make_series(
        ("z0", "z1"), "1", [((0, 1), 1), ((0, 2), 1), ((2, 1), 1)]
    ),
}


def builtin_series(name: str) -> HilbertSeries:
    try:
        return BUILTIN_SERIES[name]
    except KeyError:
        raise ValueError(
            "unknown builtin series %r (have %s)" % (name, ", ".join(sorted(BUILTIN_SERIES)))
        ) from None


def series_from_json(obj: dict) -> HilbertSeries:
    """File schema: {"numerator": "1 - u + u^2", "denominator": [[1,2],[2,1]],
    "variable": "u"?}.  The variable defaults to the single name appearing
    in the numerator, or "t" for constant numerators."""
    unknown = set(obj) - {"numerator", "denominator", "variable"}
    if unknown:
        raise ValueError("unknown series keys: %s" % ", ".join(sorted(unknown)))
    if "numerator" not in obj or "denominator" not in obj:
        raise ValueError("series JSON needs 'numerator' and 'denominator'")
    text = str(obj["numerator"])
    var = obj.get("variable")
    if var is None:
        import re

        names = sorted(set(re.findall(r"[A-Za-z_][A-Za-z_0-9]*", text)))
        if len(names) > 1:
            raise ValueError("several variables in numerator; give 'variable'")
        var = names[0] if names else "t"
    factors = []
    for item in obj["denominator"]:
        if not (isinstance(item, (list, tuple)) and len(item) == 2):
            raise ValueError("denominator entries are [power, multiplicity] pairs")
        factors.append((int(item[0]), int(item[1])))
    return make_series((var,), text, factors)


# -- the algebraic-basis bound ----------------------------------------------


def rho_bound(signature: Signature) -> int:
    """Number of elements in an algebraic basis of the comitant algebra:
    2*(sum of all degrees + count of extra components) + 1, which equals the
    coefficient slot count minus one."""
    degrees = signature.degrees
    ell = len(degrees) - 1
    rho = 2 * (sum(degrees) + ell) + 1
    assert rho == slot_count(signature) - 1
    return rho


#: Published Krull dimensions (and integer-basis sizes where known) for the
#: classical algebras.  omega entries record the known or conjectured number
#: of essential center conditions; they are documentation, not computation.
REFERENCE_TABLE = {
    "SI_2": {"krull": 3, "integer_basis_size": 3, "notes": ""},
    "SI_3": {"krull": 5, "integer_basis_size": 5, "notes": ""},
    "SI_4": {"krull": 7, "integer_basis_size": 9, "notes": "integer basis strictly larger"},
    "S_{0,1}": {"krull": 5, "integer_basis_size": 5, "notes": ""},
    "SI_{0,1}": {"krull": 3, "integer_basis_size": 3, "notes": ""},
    "SI_{1,2}": {"krull": 7, "integer_basis_size": 7, "notes": "omega = 3 essential center conditions"},
    "S_{1,2}": {"krull": 9, "integer_basis_size": None, "notes": ""},
    "SI_{1,2,3}": {"krull": 15, "integer_basis_size": 21, "notes": "omega unknown; conjectured <= 13"},
}


def _normalize_name(name: str) -> str:
    return name.replace("{", "").replace("}", "").replace("_", "").replace(",", "").upper()


def reference_table(name: str | None = None):
    """The published dimension table, or one row looked up leniently
    ("SI_{1,2,3}", "SI123" and "si 1,2,3" all match)."""
    if name is None:
        return dict(REFERENCE_TABLE)
    wanted = _normalize_name(name.replace(" ", ""))
    for key, row in REFERENCE_TABLE.items():
        if _normalize_name(key) == wanted:
            return dict(row)
    raise ValueError("unknown algebra %r" % (name,))
