"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial lives in a :class:`PolyRing`, which fixes an ordered tuple of
variable names.  The first ``n_phase`` variables are the phase variables
(``x`` and ``y`` throughout this package); the remaining ones are coefficient
symbols.  Terms are stored as a dict mapping exponent tuples (one entry per
ring variable) to :class:`fractions.Fraction` coefficients.  Zero
coefficients are never stored, so equal polynomials have identical term
dicts and comparison is exact.

Term order is graded reverse-lexicographic over the fixed variable order.
It determines iteration order, the canonical text rendering, and the leading
term used by exact division.

The text grammar (the only wire format for polynomials) is a sum of signed
terms ``q*v1^e1*...*vk^ek`` with rationals written ``num/den`` and arbitrary
whitespace: ``x^2 + y^2``, ``-1/2*g*l + m``.  :meth:`PolyRing.parse` and
``str()`` round-trip exactly.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Scalar = Union[int, Fraction]

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))")


def grevlex_key(exps: tuple) -> tuple:
    """Sort key: larger key = later monomial in the descending canonical order.

    Descending sort by this key lists the grevlex-largest monomial first.
    """
    return (sum(exps), tuple(-e for e in reversed(exps)))


class PolyRing:
    """An ordered polynomial ring Q[v1, ..., vn] with a phase-variable prefix."""

    def __init__(self, names: Sequence[str], n_phase: int = 0):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names: %r" % (names,))
        if not 0 <= n_phase <= len(names):
            raise ValueError("n_phase out of range")
        self.names = names
        self.n_phase = n_phase
        self.index = {name: i for i, name in enumerate(names)}
        self._zero_exps = (0,) * len(names)

    def __repr__(self):
        return "PolyRing(%s; phase=%d)" % (",".join(self.names), self.n_phase)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.names == other.names
            and self.n_phase == other.n_phase
        )

    __hash__ = None

    @property
    def nvars(self) -> int:
        return len(self.names)

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, value: Scalar) -> "Poly":
        value = Fraction(value)
        if value == 0:
            return Poly(self, {})
        return Poly(self, {self._zero_exps: value})

    def var(self, name: str) -> "Poly":
        try:
            i = self.index[name]
        except KeyError:
            raise ValueError("unknown variable %r in %r" % (name, self)) from None
        exps = [0] * self.nvars
        exps[i] = 1
        return Poly(self, {tuple(exps): Fraction(1)})

    def monomial(self, exps: Mapping[str, int] | Sequence[int], coeff: Scalar = 1) -> "Poly":
        if isinstance(exps, Mapping):
            vec = [0] * self.nvars
            for name, e in exps.items():
                vec[self.index[name]] = int(e)
            exps = vec
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise ValueError("bad exponent vector %r" % (exps,))
        coeff = Fraction(coeff)
        if coeff == 0:
            return self.zero()
        return Poly(self, {exps: coeff})

    def coerce(self, value: "Poly | Scalar") -> "Poly":
        if isinstance(value, Poly):
            if value.ring != self:
                raise ValueError("polynomial from a different ring")
            return value
        return self.const(value)

    # -- parsing ---------------------------------------------------------

    def parse(self, text: str) -> "Poly":
        """Parse the canonical text grammar.  Raises ValueError with the
        offending position on malformed input or unknown variable names."""
        tokens = self._tokenize(text)
        result = self.zero()
        pos = 0
        sign = 1
        n = len(tokens)
        if n == 0:
            raise ValueError("empty polynomial text")
        while pos < n:
            kind, value, at = tokens[pos]
            if kind == "op" and value in "+-":
                sign = 1 if value == "+" else -1
                pos += 1
                if pos >= n:
                    raise ValueError("dangling sign at position %d" % at)
            term, pos = self._parse_term(tokens, pos)
            result = result + term * sign
            sign = 1
            if pos < n:
                kind, value, at = tokens[pos]
                if not (kind == "op" and value in "+-"):
                    raise ValueError("expected '+' or '-' at position %d, got %r" % (at, value))
        return result

    def _parse_term(self, tokens, pos):
        coeff = Fraction(1)
        exps = [0] * self.nvars
        saw_factor = False
        n = len(tokens)
        while True:
            kind, value, at = tokens[pos]
            if kind == "num":
                num = int(value)
                pos += 1
                if pos < n and tokens[pos][:2] == ("op", "/"):
                    pos += 1
                    if pos >= n or tokens[pos][0] != "num":
                        raise ValueError("expected denominator at position %d" % at)
                    den = int(tokens[pos][1])
                    if den == 0:
                        raise ValueError("zero denominator at position %d" % at)
                    pos += 1
                    coeff *= Fraction(num, den)
                else:
                    coeff *= num
            elif kind == "name":
                if value not in self.index:
                    raise ValueError("unknown variable %r at position %d" % (value, at))
                power = 1
                pos += 1
                if pos < n and tokens[pos][:2] == ("op", "^"):
                    pos += 1
                    if pos >= n or tokens[pos][0] != "num":
                        raise ValueError("expected exponent at position %d" % at)
                    power = int(tokens[pos][1])
                    pos += 1
                exps[self.index[value]] += power
            else:
                raise ValueError("unexpected %r at position %d" % (value, at))
            saw_factor = True
            if pos < n and tokens[pos][:2] == ("op", "*"):
                pos += 1
                if pos >= n:
                    raise ValueError("dangling '*'")
                continue
            break
        if not saw_factor:
            raise ValueError("empty term")
        return self.monomial(exps, coeff), pos

    @staticmethod
    def _tokenize(text):
        tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                if text[pos:].strip() == "":
                    break
                raise ValueError("bad character %r at position %d" % (text[pos], pos))
            if m.lastgroup == "num":
                tokens.append(("num", m.group("num"), m.start()))
            elif m.lastgroup == "name":
                tokens.append(("name", m.group("name"), m.start()))
            else:
                tokens.append(("op", m.group("op"), m.start()))
            pos = m.end()
        return tokens


class Poly:
    """Immutable sparse polynomial; arithmetic is exact and results canonical."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms  # exponent tuple -> nonzero Fraction; owned, not mutated

    # -- basic protocol --------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    __hash__ = None

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self):
        """Terms in descending canonical (grevlex) order."""
        return sorted(self.terms.items(), key=lambda kv: grevlex_key(kv[0]), reverse=True)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = self.ring.coerce(other)
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = out.get(mono)
            if s is None:
                out[mono] = c
            else:
                s = s + c
                if s:
                    out[mono] = s
                else:
                    del out[mono]
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self.ring.coerce(other))

    def __rsub__(self, other):
        return self.ring.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self.ring.zero()
            other = Fraction(other)
            return Poly(self.ring, {m: c * other for m, c in self.terms.items()})
        other = self.ring.coerce(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return self.ring.zero()
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                mono = tuple(u + v for u, v in zip(ma, mb))
                s = out.get(mono)
                if s is None:
                    out[mono] = ca * cb
                else:
                    s = s + ca * cb
                    if s:
                        out[mono] = s
                    else:
                        del out[mono]
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n = base_needed
        return result

    def __truediv__(self, scalar):
        if not isinstance(scalar, (int, Fraction)) or scalar == 0:
            raise ValueError("polynomials divide only by nonzero scalars; use divide_exact")
        return self * (1 / Fraction(scalar))

    # -- calculus and substitution ---------------------------------------

    def diff(self, var: str | int) -> "Poly":
        """Formal partial derivative with respect to one ring variable."""
        i = self.ring.index[var] if isinstance(var, str) else var
        out = {}
        for mono, c in self.terms.items():
            e = mono[i]
            if e == 0:
                continue
            new = mono[:i] + (e - 1,) + mono[i + 1 :]
            nc = c * e
            s = out.get(new)
            if s is None:
                out[new] = nc
            else:
                s = s + nc
                if s:
                    out[new] = s
                else:
                    del out[new]
        return Poly(self.ring, out)

    def subs(self, bindings: Mapping[str | int, "Poly | Scalar"]) -> "Poly":
        """Simultaneous substitution; unbound variables pass through.

        Values may be scalars or polynomials of the same ring.
        """
        ring = self.ring
        if not bindings:
            return self
        repl: dict[int, Poly] = {}
        for key, value in bindings.items():
            i = ring.index[key] if isinstance(key, str) else key
            repl[i] = ring.coerce(value)
        out = ring.zero()
        powers: dict[tuple[int, int], Poly] = {}
        for mono, c in self.terms.items():
            residual = list(mono)
            factor = None
            for i, rep in repl.items():
                e = mono[i]
                if e == 0:
                    continue
                residual[i] = 0
                p = powers.get((i, e))
                if p is None:
                    p = rep**e
                    powers[(i, e)] = p
                factor = p if factor is None else factor * p
            term = ring.monomial(residual, c)
            out = out + (term * factor if factor is not None else term)
        return out

    def eval_all(self, point: Mapping[str, Scalar]) -> Fraction:
        """Evaluate at a full point (every variable bound); exact Fraction."""
        ring = self.ring
        values = [None] * ring.nvars
        for name, v in point.items():
            values[ring.index[name]] = Fraction(v)
        for i, v in enumerate(values):
            if v is None:
                raise ValueError("eval_all: variable %r unbound" % (ring.names[i],))
        total = Fraction(0)
        cache: dict[tuple[int, int], Fraction] = {}
        for mono, c in self.terms.items():
            term = c
            for i, e in enumerate(mono):
                if e == 0:
                    continue
                p = cache.get((i, e))
                if p is None:
                    p = values[i] ** e
                    cache[(i, e)] = p
                term = term * p
            total += term
        return total

    # -- structure queries -----------------------------------------------

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(m) for m in self.terms)

    def degree_in(self, group: Iterable[int]) -> int:
        group = list(group)
        if not self.terms:
            return 0
        return max(sum(m[i] for i in group) for m in self.terms)

    def multidegree(self, groups: Sequence[Iterable[int]]):
        """Per-group degrees if homogeneous in every group, else an
        :class:`Inhomogeneous` witness holding two offending monomials."""
        groups = [list(g) for g in groups]
        if not self.terms:
            return tuple(0 for _ in groups)
        it = iter(self.terms)
        first = next(it)
        degs = tuple(sum(first[i] for i in g) for g in groups)
        for mono in it:
            for gi, g in enumerate(groups):
                if sum(mono[i] for i in g) != degs[gi]:
                    return Inhomogeneous(group=gi, witness=(first, mono))
        return degs

    def coefficient_of(self, group: Sequence[int], exps: Sequence[int]) -> "Poly":
        """Coefficient of the monomial ``prod(v_g^e_g)`` over the given group:
        a polynomial free of those variables."""
        out = {}
        want = tuple(exps)
        for mono, c in self.terms.items():
            if tuple(mono[i] for i in group) != want:
                continue
            new = list(mono)
            for i in group:
                new[i] = 0
            out[tuple(new)] = c
        return Poly(self.ring, out)

    def part_of_degree_in(self, group: Sequence[int], degree: int) -> "Poly":
        """Sum of terms whose total degree over ``group`` equals ``degree``."""
        out = {m: c for m, c in self.terms.items() if sum(m[i] for i in group) == degree}
        return Poly(self.ring, out)

    def involves(self, group: Iterable[int]) -> bool:
        return any(any(m[i] for i in group) for m in self.terms)

    def leading(self):
        """(monomial, coefficient) of the grevlex-largest term; None if zero."""
        if not self.terms:
            return None
        mono = max(self.terms, key=grevlex_key)
        return mono, self.terms[mono]

    def content(self) -> Fraction:
        """Positive rational content (gcd of coefficients); 0 for the zero poly."""
        from math import gcd

        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def divide_exact(self, q: "Poly"):
        """Return r with self == q*r when q divides exactly, else None.

        Raises ZeroDivisionError for a zero divisor.
        """
        q = self.ring.coerce(q)
        if q.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self.ring.zero()
        qlead = q.leading()
        qm, qc = qlead
        rem = self
        quot: dict = {}
        while rem.terms:
            rm, rc = rem.leading()
            diff = tuple(a - b for a, b in zip(rm, qm))
            if any(d < 0 for d in diff):
                return None
            factor = rc / qc
            quot[diff] = quot.get(diff, Fraction(0)) + factor
            rem = rem - q * Poly(self.ring, {diff: factor})
        return Poly(self.ring, {m: c for m, c in quot.items() if c})

    # -- rendering --------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.names
        pieces = []
        for mono, coeff in self.sorted_terms():
            factors = []
            for i, e in enumerate(mono):
                if e == 0:
                    continue
                factors.append(names[i] if e == 1 else "%s^%d" % (names[i], e))
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            pieces.append(("- " if coeff < 0 else "+ ") + body)
        first = pieces[0]
        text = ("-" + first[2:]) if first.startswith("- ") else first[2:]
        for p in pieces[1:]:
            text += " " + p
        return text

    def __repr__(self):
        return "<Poly %s>" % (str(self),)


class Inhomogeneous:
    """Witness that a polynomial is not homogeneous for some variable group."""

    __slots__ = ("group", "witness")

    def __init__(self, group: int, witness: tuple):
        self.group = group
        self.witness = witness

    def __repr__(self):
        return "Inhomogeneous(group=%d, witness=%r)" % (self.group, self.witness)

    def __bool__(self):
        return False
