"""Exact linear algebra kernels: rational elimination and Bareiss determinants.

Everything here is exact.  Rational matrices are lists of lists of
``Fraction``; polynomial matrices are lists of lists of :class:`~centerfocus.poly.Poly`.
The Bareiss determinant is fraction-free (every division is exact) with full
pivoting by minimal term count, which keeps intermediate polynomials small
and the result deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .budget import check_budget
from .poly import Poly, PolyRing


def rank(matrix: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a rational matrix."""
    m = [list(map(Fraction, row)) for row in matrix]
    if not m:
        return 0
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        for i in range(r + 1, rows):
            if m[i][c] == 0:
                continue
            f = m[i][c] * inv
            mi, mr = m[i], m[r]
            for j in range(c, cols):
                mi[j] -= f * mr[j]
        r += 1
        if r == rows:
            break
    return r


def solve(matrix, rhs, zero):
    """Solve ``matrix @ x = rhs`` exactly with free unknowns set to zero.

    ``matrix`` is rational (m x n); ``rhs`` entries may be Fractions or
    polynomials (anything supporting +, -, and multiplication by Fraction).
    Returns ``(solution, free_columns)`` or ``None`` when inconsistent.
    ``zero`` is the additive zero of the rhs type.
    """
    m = [list(map(Fraction, row)) for row in matrix]
    b = list(rhs)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        b[r], b[piv] = b[piv], b[r]
        inv = 1 / m[r][c]
        for i in range(r + 1, rows):
            if m[i][c] == 0:
                continue
            f = m[i][c] * inv
            mi, mr = m[i], m[r]
            for j in range(c, cols):
                mi[j] -= f * mr[j]
            b[i] = b[i] - b[r] * f
        pivots.append((r, c))
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        residue = b[i]
        if isinstance(residue, Poly):
            if not residue.is_zero():
                return None
        elif residue != 0:
            return None
    pivot_cols = {c for _, c in pivots}
    free_cols = [c for c in range(cols) if c not in pivot_cols]
    sol = [zero] * cols
    for row, col in reversed(pivots):
        acc = b[row]
        mrow = m[row]
        for j in range(col + 1, cols):
            if mrow[j] != 0:
                acc = acc - sol[j] * mrow[j]
        sol[col] = acc * (1 / mrow[col])
    return sol, free_cols


def nullspace(matrix: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Basis of the right kernel of a rational matrix."""
    m = [list(map(Fraction, row)) for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * p for a, p in zip(m[i], m[r])]
        pivots.append((r, c))
        r += 1
        if r == rows:
            break
    pivot_cols = [c for _, c in pivots]
    basis = []
    for free in (c for c in range(cols) if c not in pivot_cols):
        vec = [Fraction(0)] * cols
        vec[free] = Fraction(1)
        for row, col in pivots:
            vec[col] = -m[row][free]
        basis.append(vec)
    return basis


def left_null_vector(matrix: Sequence[Sequence[Fraction]]) -> list[Fraction] | None:
    """A nonzero vector v with v @ matrix = 0, or None if the rows span."""
    transposed = [list(col) for col in zip(*matrix)]
    basis = nullspace(transposed)
    return basis[0] if basis else None


def det(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant of a square rational matrix by exact elimination."""
    n = len(matrix)
    m = [list(map(Fraction, row)) for row in matrix]
    sign = 1
    result = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pivot = m[k][k]
        result *= pivot
        inv = 1 / pivot
        for i in range(k + 1, n):
            if m[i][k] == 0:
                continue
            f = m[i][k] * inv
            mi, mk = m[i], m[k]
            for j in range(k + 1, n):
                mi[j] -= f * mk[j]
        check_budget()
    return result * sign


def bareiss_det(matrix: Sequence[Sequence[Poly]], ring: PolyRing) -> Poly:
    """Determinant of a square polynomial matrix, fraction-free.

    One-step Bareiss: every interior division is exact.  The pivot at each
    step is the nonzero candidate with the fewest terms (ties resolved by
    row-then-column order), which both avoids blowup and makes the result
    independent of the caller's row scaling quirks.
    """
    n = len(matrix)
    if n == 0:
        return ring.one()
    m = [[ring.coerce(e) for e in row] for row in matrix]
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        best = None
        for i in range(k, n):
            for j in range(k, n):
                e = m[i][j]
                if e.is_zero():
                    continue
                size = len(e)
                if best is None or size < best[0]:
                    best = (size, i, j)
        if best is None:
            return ring.zero()
        _, pi, pj = best
        if pi != k:
            m[k], m[pi] = m[pi], m[k]
            sign = -sign
        if pj != k:
            for row in m:
                row[k], row[pj] = row[pj], row[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            row_i = m[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                num = pivot * row_i[j] - lead * m[k][j]
                q = num.divide_exact(prev)
                if q is None:  # cannot happen for exact Bareiss; guards bugs
                    raise ArithmeticError("Bareiss division was not exact")
                row_i[j] = q
            row_i[k] = ring.zero()
            check_budget()
        prev = pivot
    result = m[n - 1][n - 1]
    return -result if sign < 0 else result
