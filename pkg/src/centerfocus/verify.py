"""The built-in reproduction suite: every published quantity this library
recomputes, checked at full precision.

Each check compares an engine output against a reference value and yields a
verdict: ``pass``, ``fail``, or ``logged-discrepancy``.  The last is
reserved for the handful of known sign/normalization conflicts among the
published values themselves (the restriction constants appear with both
signs in different places, and the cubic extension of the first focal
quantity is printed with a different normalization and one suspect symbol);
for those, magnitudes are asserted and the observed signs recorded.

The suite is deterministic for a fixed seed and is the backing store of the
``verify`` endpoint/subcommand and of the acceptance test module.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, asdict
from fractions import Fraction

from . import hilbert as hb
from . import linalg
from .focal import (
    comitant_chain_check,
    defining_numerator_at,
    focal_quantities,
    grade_split,
    matching_system,
    pseudo_quantities,
    restrict_check,
    restrict_check_order2,
    structure,
    torus_scaled_point,
    _symbolic_solution,
)
from .lie import (
    bracket,
    independence_rank,
    is_comitant,
    isobarity_of,
    operators,
    reconstruct_from_semi_invariant,
    type_of,

)
from .poly import PolyRing
from .systems import (
    Signature,
    build_generic,
    linear_generators,
    restrict_to_variety,
    slot_count,
    vector_field,
)


@dataclass
class Check:
    name: str
    expected: str
    got: str
    verdict: str  # pass | fail | logged-discrepancy

    @staticmethod
    def of(name: str, expected, got, ok: bool | None = None, logged: bool = False) -> "Check":
        if logged:
            verdict = "logged-discrepancy"
        else:
            if ok is None:
                ok = expected == got
            verdict = "pass" if ok else "fail"
        return Check(name, str(expected), str(got), verdict)


# reference polynomial of the second focal quantity (times 24) for s(1,2)
REFERENCE_24L2 = (
    "62*g^3*h - 2*g*h^3 + 95*g^2*h*k - 2*h^3*k + 38*g*h*k^2 + 5*h*k^3 - 62*g^3*l"
    " + 27*g*h^2*l - 39*g^2*k*l + 29*h^2*k*l - 15*g*k^2*l - 8*g*h*l^2 + 15*h*k*l^2"
    " - 5*g*l^3 + 53*g^2*h*m + 66*g*h*k*m + 13*h*k^2*m - 127*g^2*l*m - 6*h^2*l*m"
    " - 68*g*k*l*m - 15*k^2*l*m - 13*h*l^2*m - 5*l^3*m + 6*g*h*m^2 + 6*h*k*m^2"
    " - 63*g*l*m^2 - 29*k*l*m^2 + 2*l*m^3 + 6*g^3*n + 61*g*h^2*n + 72*g^2*k*n"
    " + 63*h^2*k*n + 33*g*k^2*n + 5*k^3*n - 10*g*h*l*n + 68*h*k*l*n - 33*g*l^2*n"
    " + 15*k*l^2*n - 72*g^2*m*n - 6*h^2*m*n + 10*g*k*m*n + 8*k^2*m*n - 66*h*l*m*n"
    " - 38*l^2*m*n - 61*g*m^2*n - 27*k*m^2*n + 2*m^3*n + 72*g*h*n^2 + 127*h*k*n^2"
    " - 72*g*l*n^2 + 39*k*l*n^2 - 53*h*m*n^2 - 95*l*m*n^2 - 6*g*n^3 + 62*k*n^3"
    " - 62*m*n^3"
)

REFERENCE_L1 = "1/2*g*l - 1/2*g*h - 1/2*h*k - 1/2*k*n + 1/2*l*m + 1/2*m*n"

# known-good 9x10 matrix and right-hand side of the order-1 system for
# s(1,2); three cells of the compact published display are typos and are
# taken from the expanded equation lists, which two further displays confirm
REFERENCE_ORDER1_MATRIX = [
    ["3*c", "3*e", "0", "0", "0", "0", "0", "0", "0", "0"],
    ["3*d", "6*c + 3*f", "6*e", "0", "0", "0", "0", "0", "0", "0"],
    ["0", "6*d", "3*c + 6*f", "3*e", "0", "0", "0", "0", "0", "0"],
    ["0", "0", "3*d", "3*f", "0", "0", "0", "0", "0", "0"],
    ["3*g", "3*l", "0", "0", "4*c", "4*e", "0", "0", "0", "-1*e^2"],
    ["6*h", "6*g + 6*m", "6*l", "0", "4*d", "12*c + 4*f", "12*e", "0", "0", "2*c*e - 2*e*f"],
    ["3*k", "12*h + 3*n", "3*g + 12*m", "3*l", "0", "12*d", "12*c + 12*f", "12*e", "0",
     "2*d*e - c^2 + 2*c*f - f^2"],
    ["0", "6*k", "6*h + 6*n", "6*m", "0", "0", "12*d", "4*c + 12*f", "4*e", "2*d*f - 2*c*d"],
    ["0", "0", "3*k", "3*n", "0", "0", "0", "4*d", "4*f", "-1*d^2"],
]
REFERENCE_ORDER1_RHS = [
    "2*e*g - c*l + f*l",
    "f*g - c*g + 4*e*h - 2*d*l - 2*c*m + 2*f*m",
    "2*f*h - 2*c*h + 2*e*k - 4*d*m - c*n + f*n",
    "f*k - c*k - 2*d*n",
    "0", "0", "0", "0", "0",
]


def _spec12():
    return build_generic(Signature.of(1, 2))


def _spec123():
    return build_generic(Signature.of(1, 2, 3))


def _oracle12(K: int):
    return focal_quantities(restrict_to_variety(_spec12()), K)


def _rand_point(spec, rng, lo=-9, hi=9, den=4):
    return {s.name: Fraction(rng.randint(lo, hi), rng.randint(1, den)) for s in spec.symbols}


def check_first_focal(seed: int = 1) -> list[Check]:
    spec = _spec12()
    L1 = _oracle12(1).L[0]
    ref = spec.ring.parse(REFERENCE_L1)
    return [Check.of("first focal quantity of s(1,2), closed form", str(ref), str(L1))]


def check_second_focal(seed: int = 1) -> list[Check]:
    spec = _spec12()
    seq = _oracle12(2)
    ref = spec.ring.parse(REFERENCE_24L2)
    diff = seq.L[1] * 24 - ref
    quotient = diff.divide_exact(seq.L[0])
    divisible = quotient is not None
    return [
        Check.of("24*L2 minus reference divisible by L1", "divisible",
                 "divisible" if divisible else "not divisible", divisible),
        Check.of("24*L2 equals reference exactly (quotient 0)", "0",
                 str(quotient) if divisible else "n/a", divisible and quotient.is_zero()),
    ]


def check_variety_cross(seed: int = 1, npoints: int = 10, kmax: int = 3) -> list[Check]:
    rng = random.Random(seed)
    spec = _spec12()
    variety = restrict_to_variety(spec)
    seq = focal_quantities(variety, kmax)
    checks = []
    agreements = 0
    for _ in range(npoints):
        nl = {s.name: Fraction(rng.randint(-12, 12), rng.randint(1, 5))
              for s in spec.symbols if s.degree >= 2}
        point_spec = variety.with_values(nl)
        sols = pseudo_quantities(point_spec, kmax, mode="point")
        full_point = {nm: v for nm, v in point_spec.values.items()}
        ok_here = True
        for k in range(1, kmax + 1):
            g_val = sols[k - 1].value_at_zero_free()
            l_val = seq.L[k - 1].eval_all({**full_point, "x": 0, "y": 0})
            if g_val != l_val:
                ok_here = False
        agreements += ok_here
    checks.append(
        Check.of("variety restriction: G_k equals L_k (k<=%d) at seeded points" % kmax,
                 "%d/%d points agree exactly" % (npoints, npoints),
                 "%d/%d points agree exactly" % (agreements, npoints),
                 agreements == npoints)
    )
    return checks


def check_matrix_structure(seed: int = 1) -> list[Check]:
    spec = _spec12()
    ring = spec.ring
    ms = matching_system((1, 2), 1)
    ok_shape1 = (ms.m, ms.n) == (9, 10)
    mismatches = []
    for i in range(9):
        for j in range(10):
            if ms.rows[i][j] != ring.parse(REFERENCE_ORDER1_MATRIX[i][j]):
                mismatches.append((i, j))
        if ms.rhs[i] != ring.parse(REFERENCE_ORDER1_RHS[i]):
            mismatches.append((i, "rhs"))
    ms2 = matching_system((1, 2), 2)
    counts_ok = all(
        (matching_system((1, 2), k).m, matching_system((1, 2), k).n)
        == (k * (2 * k + 7), k * (2 * k + 7) + k)
        for k in range(1, 6)
    )
    return [
        Check.of("order-1 system is 9x10", "9x10", "%dx%d" % (ms.m, ms.n), ok_shape1),
        Check.of("order-1 system matches the reference matrix entrywise",
                 "no mismatches", "mismatches: %r" % (mismatches,) if mismatches else "no mismatches",
                 not mismatches),
        Check.of("order-2 system is 22x24", "22x24", "%dx%d" % (ms2.m, ms2.n)),
        Check.of("row/unknown counts match k(2k+7) and k(2k+7)+k for k=1..5",
                 "all match", "all match" if counts_ok else "mismatch", counts_ok),
    ]


def check_degrees_types(seed: int = 1) -> list[Check]:
    rng = random.Random(seed)
    checks = []
    spec12 = _spec12()
    linear = {s.name for s in spec12.symbols if s.degree == 1}
    for k in (1, 2, 3):
        st = structure(Signature.of(1, 2), k)
        d1, d2 = st.types[0][1], st.types[0][2]
        while True:
            pt = _rand_point(spec12, rng)
            base = defining_numerator_at((1, 2), k, pt)
            if base != 0:
                break
        lam, mu = Fraction(2), Fraction(3)
        scaled = {nm: (v * lam if nm in linear else v * mu) for nm, v in pt.items()}
        bideg_ok = defining_numerator_at((1, 2), k, scaled) == lam**d1 * mu**d2 * base
        tau = Fraction(5, 2)
        total_ok = (
            defining_numerator_at((1, 2), k, {nm: v * tau for nm, v in pt.items()})
            == tau**st.N * base
        )
        checks.append(Check.of(
            "s(1,2) order %d numerator bidegree (%d,%d), total degree %d" % (k, d1, d2, st.N),
            "scaling probes agree", "scaling probes agree" if bideg_ok and total_ok else "probe failed",
            bideg_ok and total_ok))
    spec123 = _spec123()
    block = {s.name: s.degree for s in spec123.symbols}
    for k in (1, 2, 3):
        st = structure(Signature.of(1, 2, 3), k)
        base_d1 = st.types[0][1]
        while True:
            pt = _rand_point(spec123, rng)
            base = defining_numerator_at((1, 2, 3), k, pt)
            if base != 0:
                break
        samples = []
        for t in range(k + 3):
            lam, mu, nu = Fraction(2 + t), Fraction(3), Fraction(2) ** (t + 1)
            scaled = {nm: v * (lam if block[nm] == 1 else mu if block[nm] == 2 else nu)
                      for nm, v in pt.items()}
            samples.append(((lam, mu, nu), defining_numerator_at((1, 2, 3), k, scaled)))
        A = [[l ** (base_d1 + i) * m ** (2 * (k - i)) * n**i for i in range(k + 1)]
             for (l, m, n), _ in samples]
        b = [val for _, val in samples]
        solved = linalg.solve([row[:] for row in A[: k + 1]], b[: k + 1], Fraction(0))
        graded_ok = solved is not None and all(
            sum(A[t][i] * solved[0][i] for i in range(k + 1)) == b[t] for t in range(len(samples))
        )
        checks.append(Check.of(
            "s(1,2,3) order %d graded types %s" % (k, list(st.types)),
            "graded scaling model consistent",
            "graded scaling model consistent" if graded_ok else "model failed", graded_ok))
    sol = _symbolic_solution((1, 2, 3), 1, ("b2",))
    parts = grade_split(sol.numerator_core, spec123)
    checks.append(Check.of(
        "s(1,2,3) order-1 numerator splits into graded parts",
        "[(0, 8, 2, 0), (0, 9, 0, 1)]", str(list(parts.keys()))))
    return checks


def check_comitant_suite(seed: int = 1) -> list[Check]:
    checks = []
    spec01 = build_generic(Signature.of(0, 1))
    r = spec01.ring
    a, b, c, d, e, f, x, y = (r.var(nm) for nm in "abcdefxy")
    generators = {
        "i1": (c + f, 0),
        "i2": (c * c + 2 * d * e + f * f, 0),
        "i3": (-e * a * a + (c - f) * a * b + d * b * b, -1),
        "k1": (-b * x + a * y, -1),
        "k2": (-e * x * x + (c - f) * x * y + d * y * y, -1),
        "k3": (-(e * a + f * b) * x + (c * a + d * b) * y, -1),
    }
    all_ok = True
    got = {}
    for name, (poly, want_weight) in generators.items():
        v = is_comitant(poly, spec01)
        got[name] = v.weight if v.ok else "not a comitant"
        all_ok = all_ok and v.ok and v.weight == want_weight
    checks.append(Check.of("six classical generators verify with their weights",
                           "{'i1': 0, 'i2': 0, 'i3': -1, 'k1': -1, 'k2': -1, 'k3': -1}",
                           str(got), all_ok))
    i1, i2, i3 = generators["i1"][0], generators["i2"][0], generators["i3"][0]
    k1, k2, k3 = generators["k1"][0], generators["k2"][0], generators["k3"][0]
    syzygy = (i1 * k1 - k3) ** 2 + k3 * k3 - i2 * k1 * k1 - 2 * i3 * k2
    checks.append(Check.of("generator syzygy vanishes exactly", "0", str(syzygy)))
    spec12 = _spec12()
    chain = comitant_chain_check(spec12)
    checks.append(Check.of("first-order comitant: operator test, type, weight",
                           "ok (4, 8, 2) weight -1",
                           "%s %s weight %s" % ("ok" if chain.comitant_ok else "fails",
                                                chain.ctype, chain.weight),
                           chain.comitant_ok and chain.ctype == (4, 8, 2) and chain.weight == -1))
    sol0 = _symbolic_solution((1, 2), 1, ("b0",))
    rep = restrict_check(sol0, spec12, _oracle12(1))
    checks.append(Check.of("first-order restriction magnitude", "8", str(rep.magnitude),
                           rep.magnitude == 8))
    checks.append(Check.of("first-order restriction sign (reference prints -8)",
                           "-8", str(rep.ratio), logged=rep.ratio != -8))
    checks.append(Check.of("quartic comitant equals ratio * L1 * (x^2+y^2)^2 on the variety",
                           "True", str(rep.quartic_ok), rep.quartic_checked and rep.quartic_ok))
    checks.append(Check.of("chain particular solution clears to a comitant",
                           "True", str(chain.particular_ok), chain.particular_ok))
    checks.append(Check.of("chain link signs vs printed alternation",
                           str(list(chain.reference_link_signs)), str(chain.link_signs),
                           logged=not chain.links_match_reference))
    return checks


def check_isobarity(seed: int = 1, npoints: int = 5) -> list[Check]:
    rng = random.Random(seed)
    spec = _spec12()
    got = []
    for i in range(5):
        sol = _symbolic_solution((1, 2), 1, ("b%d" % i,))
        got.append(isobarity_of(sol.numerator_core, spec))
    expected = [(3, -1), (2, 0), (1, 1), (0, 2), (-1, 3)]
    checks = [Check.of("order-1 numerator isobarity list", str(expected), str(got))]
    table_ok = True
    witness = ""
    for i in range(5):
        for j in range(7):
            want = (7 - i - j, i + j - 3)
            found = None
            for _ in range(npoints):
                pt = _rand_point(spec, rng)
                base = defining_numerator_at((1, 2), 2, pt, ("b%d" % i, "d%d" % j))
                if base == 0:
                    continue
                pair = []
                for alpha, beta in ((Fraction(2), Fraction(1)), (Fraction(1), Fraction(3))):
                    scaled = torus_scaled_point(spec, pt, alpha, beta)
                    ratio = defining_numerator_at((1, 2), 2, scaled, ("b%d" % i, "d%d" % j)) / base
                    base_factor = alpha if beta == 1 else beta
                    w = 0
                    while ratio > 1:
                        ratio /= base_factor
                        w += 1
                    while ratio < 1:
                        ratio *= base_factor
                        w -= 1
                    pair.append(w if ratio == 1 else None)
                found = tuple(pair)
                break
            if found != want:
                table_ok = False
                witness = "entry (%d,%d): got %s want %s" % (i, j, found, want)
    checks.append(Check.of("order-2 isobarity table via torus probes",
                           "all 35 entries match", witness or "all 35 entries match", table_ok))
    return checks


def check_hilbert_krull(seed: int = 1) -> list[Check]:
    checks = []
    checks.append(Check.of("Krull dimension of the comitant-algebra series", "5",
                           str(hb.krull_dimension(hb.builtin_series("S01")))))
    checks.append(Check.of("Krull dimension of the invariant-algebra series", "3",
                           str(hb.krull_dimension(hb.builtin_series("SI01")))))
    rho_got = [hb.rho_bound(Signature.of(1, 2)), hb.rho_bound(Signature.of(1, 3)),
               hb.rho_bound(Signature.of(1, 2, 3))]
    checks.append(Check.of("algebraic-basis bounds for s(1,2), s(1,3), s(1,2,3)",
                           "[9, 11, 17]", str(rho_got)))

    def signatures_up_to(total):
        out = []

        def extend(prefix, start, weight):
            if prefix and 1 in prefix:
                out.append(tuple(prefix))
            for nxt in range(start, total + 1):
                if weight + nxt > total:
                    break
                extend(prefix + [nxt], nxt + 1, weight + nxt)

        extend([], 0, 0)
        return [s for s in out if s and s[0] in (0, 1) and 1 in s]

    identity_ok = all(
        hb.rho_bound(Signature(s)) == slot_count(Signature(s)) - 1 for s in signatures_up_to(12)
    )
    checks.append(Check.of("bound equals coefficient count minus one (all signatures, sum<=12)",
                           "identity holds", "identity holds" if identity_ok else "fails",
                           identity_ok))
    table = hb.reference_table()
    monotone = all(
        row["integer_basis_size"] is None or row["krull"] <= row["integer_basis_size"]
        for row in table.values()
    )
    checks.append(Check.of("reference table: krull <= integer basis size", "True", str(monotone)))
    return checks


def check_s123_consistency(seed: int = 1) -> list[Check]:
    spec123 = _spec123()
    v123 = restrict_to_variety(spec123)
    L1_123 = focal_quantities(v123, 1).L[0]
    L1_12 = _oracle12(1).L[0]
    cubics = {s.name for s in spec123.symbols if s.degree == 3}
    quads = {s.name for s in spec123.symbols if s.degree == 2}
    zeroed = L1_123.subs({nm: spec123.ring.const(0) for nm in cubics})
    checks = [Check.of("cubic-zeroed L1 of s(1,2,3) equals L1 of s(1,2)",
                       str(L1_12), str(zeroed))]
    cubic_part = L1_123.subs({nm: spec123.ring.const(0) for nm in quads})
    symmetric = spec123.ring.parse("p + r + u + w")
    quotient = cubic_part.divide_exact(symmetric)
    structural_ok = quotient is not None and quotient.total_degree() == 0
    checks.append(Check.of("cubic-only part of L1 is a rational multiple of p + r + u + w",
                           "constant multiple", str(quotient) if structural_ok else "no",
                           structural_ok))
    checks.append(Check.of(
        "cubic part vs printed form -3/4*(p+r+u+v) (suspected misprint: v for w)",
        "-3/4 on p+r+u+v", "%s on p+r+u+w" % (quotient,), logged=True))
    return checks


def check_property_suites(seed: int = 1, cases: int = 1000) -> list[Check]:
    rng = random.Random(seed)
    ring = PolyRing(("x", "y", "s", "t"), n_phase=2)

    def rand_poly(max_terms=5, max_exp=3):
        out = ring.zero()
        for _ in range(rng.randint(0, max_terms)):
            exps = [rng.randint(0, max_exp) for _ in range(4)]
            out = out + ring.monomial(exps, Fraction(rng.randint(-8, 8), rng.randint(1, 4)))
        return out

    budget = cases
    ring_ok = derivative_ok = division_ok = eval_ok = parse_ok = True
    while budget > 0:
        p, q, r = rand_poly(), rand_poly(), rand_poly()
        ring_ok &= (p + q) * r == p * r + q * r and p * q == q * p and (p + q) + r == p + (q + r)
        dx = (p * q).diff("x")
        derivative_ok &= dx == p.diff("x") * q + p * q.diff("x")
        if not q.is_zero():
            division_ok &= (p * q).divide_exact(q) == p
        point = {nm: Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for nm in ring.names}
        eval_ok &= (p * q).eval_all(point) == p.eval_all(point) * q.eval_all(point)
        parse_ok &= ring.parse(str(p)) == p
        budget -= 5
    checks = [
        Check.of("ring axioms on seeded random instances", "hold", "hold" if ring_ok else "fail", ring_ok),
        Check.of("derivative Leibniz rule on seeded random instances", "holds",
                 "holds" if derivative_ok else "fails", derivative_ok),
        Check.of("exact division round trip on seeded random instances", "holds",
                 "holds" if division_ok else "fails", division_ok),
        Check.of("evaluation homomorphism on seeded random instances", "holds",
                 "holds" if eval_ok else "fails", eval_ok),
        Check.of("text rendering parses back on seeded random instances", "holds",
                 "holds" if parse_ok else "fails", parse_ok),
    ]
    bracket_ok = True
    for degrees in ((0, 1), (1, 2)):
        spec = build_generic(Signature(degrees))
        ops = operators(spec)
        gens = [spec.ring.var(nm) for nm in spec.ring.names]
        for gpoly in gens:
            if not bracket(ops.x1, ops.x4, gpoly).is_zero():
                bracket_ok = False
            lhs = bracket(ops.x2, ops.x3, gpoly)
            if lhs != ops.x4(gpoly) - ops.x1(gpoly):
                bracket_ok = False
    checks.append(Check.of("operator brackets: [X1,X4]=0 and [X2,X3]=X4-X1", "hold",
                           "hold" if bracket_ok else "fail", bracket_ok))
    spec12 = _spec12()
    gens12 = linear_generators(spec12)
    rec = reconstruct_from_semi_invariant(spec12.ring.parse("-1*e"), 2, spec12)
    checks.append(Check.of("semi-invariant reconstruction round trip (k2)",
                           str(gens12["k2"]), str(rec)))
    # determinism under row permutation: G_1 from a shuffled copy of the rows
    sub = matching_system((1, 2), 1)
    order = list(range(sub.m))
    rng.shuffle(order)
    free_col = sub.unknowns.index("b2")
    g_col = sub.unknowns.index("G1")
    keep = [j for j in range(sub.n) if j != free_col]
    g_pos = keep.index(g_col)
    values = _rand_point(spec12, rng)
    point = {**values, "x": Fraction(0), "y": Fraction(0)}
    mats = []
    for rows in (list(range(sub.m)), order):
        mat = [[sub.rows[i][j].eval_all(point) for j in keep] for i in rows]
        num = [list(row) for row in mat]
        for pos, i in enumerate(rows):
            num[pos][g_pos] = sub.rhs[i].eval_all(point)
        mats.append(linalg.det(num) / linalg.det(mat))
    checks.append(Check.of("G_1 value invariant under row permutation", str(mats[0]), str(mats[1])))
    ranks = (
        independence_rank([gens12["i1"], gens12["i2"]], seed=seed),
        independence_rank([spec12.ring.var("c"), spec12.ring.var("f"),
                           spec12.ring.parse("c + f")], seed=seed),
    )
    checks.append(Check.of("independence ranks: {i1,i2} and {c,f,c+f}", "(2, 2)", str(ranks)))
    return checks


def check_order2_restriction(seed: int = 1) -> list[Check]:
    spec = _spec12()
    rep = restrict_check_order2(spec, _oracle12(2), seed=seed)
    mags = sorted(set(rep.magnitudes.values()))
    signs = sorted(set(c / abs(c) for c in rep.constants.values()))
    checks = [
        Check.of("order-2 restriction magnitude (even free indices)", "[2304]", str([str(m) for m in mags]),
                 mags == [Fraction(2304)]),
        Check.of("order-2 restriction vanishes for odd free indices", "True", str(rep.odd_all_zero)),
        Check.of("order-2 restriction sign (reference prints -2304 and +2304)",
                 "-1", str([str(s) for s in signs]), logged=signs != [Fraction(-1)]),
    ]
    return checks


SUITE = (
    ("first focal quantity", check_first_focal),
    ("second focal quantity", check_second_focal),
    ("variety cross-check", check_variety_cross),
    ("matrix structure", check_matrix_structure),
    ("degrees and types", check_degrees_types),
    ("comitant suite", check_comitant_suite),
    ("isobarity", check_isobarity),
    ("hilbert and krull", check_hilbert_krull),
    ("cubic extension consistency", check_s123_consistency),
    ("property suites", check_property_suites),
    ("order-2 restriction constants", check_order2_restriction),
)


def run_paper_suite(seed: int = 1) -> dict:
    """Run every reproduction check; returns a report dict with one entry
    per check and an overall verdict (logged discrepancies do not fail)."""
    started = time.monotonic()
    checks: list[Check] = []
    for section, fn in SUITE:
        for check in fn(seed=seed):
            check.name = "%s: %s" % (section, check.name)
            checks.append(check)
    failed = [c.name for c in checks if c.verdict == "fail"]
    return {
        "command": "verify",
        "inputs": {"suite": "paper", "seed": seed},
        "results": {
            "total": len(checks),
            "passed": sum(c.verdict == "pass" for c in checks),
            "failed": len(failed),
            "logged_discrepancies": sum(c.verdict == "logged-discrepancy" for c in checks),
        },
        "checks": [asdict(c) for c in checks],
        "ok": not failed,
        "elapsed_ms": round((time.monotonic() - started) * 1000.0, 3),
    }
