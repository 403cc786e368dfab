"""Acceptance criteria 1-11.  Each test prints one PASS/FAIL line.

Arithmetic is exact throughout, so every comparison is an equality.
Run directly (``python tests/test_acceptance.py``) for the summary alone.
"""

import random
import sys
import time
from fractions import Fraction

import pytest

from gcn_cohomology.algebra import (
    AlgebraElement,
    Gen,
    GcN,
    bracket,
    check_jacobi,
    check_skew_symmetry,
    generator_pairs,
    generator_triples,
)
from gcn_cohomology.cochains import (
    as_leibniz,
    delta_reduce,
    differential,
    from_leibniz,
    homotopy_residual,
    leibniz_differential,
    random_cochain,
    random_leibniz_cochain,
    reduced_differential,
    tau0,
    tau1,
    tau2,
    tau_twisted,
    weight_of,
)
from gcn_cohomology.engine import (
    cohomology_dim,
    cohomology_representatives,
    find_primitive,
    gamma_bar,
    gamma_bar_cocycle,
    leibniz_f,
    psi_coefficient,
    psi_prime,
    recursion_residual,
    solve_recursion,
    verify_cocycle,
)
from gcn_cohomology.modules import FreeRankN, Trivial, TwistedScalar, check_module_axioms
from gcn_cohomology.poly import Poly, lam, lam_sum

SEED = 20240917
COUNT = 20


def report(n, ok, detail, out=None):
    line = "criterion %2d: %s  %s" % (n, "PASS" if ok else "FAIL", detail)
    (out or sys.stdout).write(line + "\n")
    return ok


@pytest.fixture
def say(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            report(n, ok, detail, sys.stdout)
        return ok
    return emit


def criterion_1():
    t0 = time.perf_counter()
    bad = []
    count = 0
    for N in (1, 2):
        alg = GcN(N)
        for a, b in generator_pairs(alg, 4):
            count += 1
            if not check_skew_symmetry(alg, a, b).is_zero():
                bad.append((N, a, b))
        for a, b, c in generator_triples(alg, 4):
            count += 1
            if not check_jacobi(alg, a, b, c).is_zero():
                bad.append((N, a, b, c))
    secs = time.perf_counter() - t0
    ok = not bad and secs <= 120
    return ok, "%d skew/Jacobi checks, %d nonzero residuals, %.1fs" % (count, len(bad), secs)


def criterion_2():
    bad = []
    count = 0
    c = AlgebraElement.central_unit()
    for N in (1, 2):
        alg = GcN(N, extended=True)
        for a, b, x in generator_triples(alg, 4):
            count += 1
            if not check_jacobi(alg, a, b, x).is_zero():
                bad.append((N, a, b, x))
        for g in alg.generators(4):
            e = AlgebraElement.gen(g)
            if not (bracket(alg, c, e).is_zero() and bracket(alg, e, c).is_zero()):
                bad.append((N, "C", g))
    return not bad, "%d extended Jacobi triples, C central; %d failures" % (count, len(bad))


def criterion_3():
    mods = [Trivial(), TwistedScalar(1), TwistedScalar(2)]
    mods += [FreeRankN(N, a) for N in (1, 2) for a in (0, Fraction(1, 2), -1)]
    bad = []
    for mod in mods:
        for N in ((mod.N,) if isinstance(mod, FreeRankN) else (1, 2)):
            fails = check_module_axioms(mod, GcN(N), 3)
            if fails:
                bad.append((mod.spec, N, len(fails)))
    return not bad, "%d modules at level <= 3; failures %s" % (len(mods), bad or "none")


def criterion_4():
    rng = random.Random(SEED)
    cases = [(GcN(1), Trivial(), 3), (GcN(1), FreeRankN(1, Fraction(1, 2)), 3),
             (GcN(1), TwistedScalar(2), 3), (GcN(2), Trivial(), 2)]
    n_d = n_dl = 0
    bad = []
    for alg, mod, L in cases:
        for q in (0, 1, 2):
            for _ in range(COUNT):
                c = random_cochain(rng, q, alg, mod, L, max_degree=1)
                n_d += 1
                if not differential(differential(c)).is_zero():
                    bad.append(("d", mod.spec, q))
    for alg, mod, L in [(GcN(1), Trivial(), 3), (GcN(1), FreeRankN(1, 0), 2)]:
        for q in (0, 1, 2):
            for _ in range(COUNT):
                c = random_leibniz_cochain(rng, q, alg, mod, L)
                n_dl += 1
                if not leibniz_differential(leibniz_differential(c)).is_zero():
                    bad.append(("d_L", mod.spec, q))
    return not bad, "d^2 on %d cochains, d_L^2 on %d cochains; %d nonzero" % (n_d, n_dl, len(bad))


def criterion_5():
    rng = random.Random(SEED + 5)
    gc1, gc2 = GcN(1), GcN(2)
    results = {}
    ok = n = 0
    for p in (-2, -1, 0, 1, 2):
        for _ in range(10):
            c = random_cochain(rng, rng.choice((1, 2)), gc1, Trivial(), 3, degree=p)
            r = homotopy_residual(tau1, c)
            n += 1
            ok += r == c.truncate(r.level).scale(p)
    results["degree"] = (ok, n)
    ok = n = 0
    for _ in range(10):
        c = random_cochain(rng, rng.choice((1, 2)), gc2, Trivial(), 1, max_degree=1)
        want = c.like({t: tuple(x.scale(weight_of(t)) for x in v) for t, v in c.values.items()})
        n += 1
        ok += homotopy_residual(tau2, c) == want
    results["weight"] = (ok, n)
    ok = n = 0
    for a in (1, 2):
        for _ in range(10):
            q = rng.choice((1, 2))
            c = random_cochain(rng, q, gc1, TwistedScalar(a), 3, max_degree=1)
            r = homotopy_residual(tau_twisted, c)
            s = lam_sum(range(1, q + 1)) + Poly.const(a)
            diff = r + c.truncate(r.level).scale(a)
            n += 1
            ok += all(x.divide_linear(s, q)[1].is_zero() for v in diff.values.values() for x in v)
    results["twisted"] = (ok, n)
    ok = n = 0
    for N, alpha in ((1, 0), (1, Fraction(1, 2)), (2, 0), (2, Fraction(1, 2))):
        for _ in range(10 if N == 1 else 5):
            q = rng.choice((1, 2))
            c = delta_reduce(random_cochain(rng, q, GcN(N), FreeRankN(N, alpha), 2 if N == 1 else 1, max_degree=1))
            n += 1
            ok += homotopy_residual(tau0, c) == c
    results["natural"] = (ok, n)
    passed = all(a == b and b >= 10 for a, b in results.values())
    return passed, ", ".join("%s %d/%d" % (k, a, b) for k, (a, b) in results.items())


def criterion_6():
    dims = [cohomology_dim(q, 1, 3, 1, degrees=[0]) for q in (0, 1, 2)]
    prev = [cohomology_dim(q, 1, 2, 1, degrees=[0], check_stable=False) for q in (0, 1, 2)]
    h3 = cohomology_dim(3, 1, 3, 1, degrees=[0], check_stable=False)
    dims_ok = [r.dim_H for r in dims] == [1, 0, 0] and [r.dim_H for r in prev] == [1, 0, 0]
    # the printed gamma-bar is not closed (criterion 11), so the certified
    # facts are established for a corrected degree-0 cocycle with the same
    # value on (J^0, J^0, J^1)
    z = gamma_bar_cocycle(3)
    closed = not verify_cocycle(z, 4)
    prim = find_primitive(z)
    certified = closed and not prim.feasible and prim.certificate_valid
    printed_closed = not verify_cocycle(gamma_bar(3), 3)
    detail = "H^0..2 = %s (L=2: %s); H^3 reported %d; corrected gamma-bar cocycle %s, no primitive %s; printed gamma-bar closed: %s" % (
        [r.dim_H for r in dims], [r.dim_H for r in prev], h3.dim_H,
        "yes" if closed else "no", "certified" if certified else "not certified", printed_closed)
    return dims_ok and certified, detail


def criterion_7():
    dims = [cohomology_dim(q, 1, 3, 1, reduced=True).dim_H for q in (0, 1, 2)]
    reps = cohomology_representatives(2, 1, 3, 1, reduced=True)
    p = psi_prime(1, 3)
    spanned = False
    coef = None
    if len(reps) == 1:
        res = find_primitive(p, modulo=reps)
        if res.feasible and res.coefficients[0] != 0:
            coef = res.coefficients[0]
            spanned = find_primitive(p - reps[0].scale(coef)).feasible
    ok = dims == [1, 0, 1] and spanned
    return ok, "reduced dims %s; psi' - (%s) rep exact: %s" % (dims, coef, spanned)


def criterion_8():
    dims = {(L, q): cohomology_dim(q, 1, L, 1, TwistedScalar(1), reduced=True).dim_H
            for L in (1, 2, 3) for q in (0, 1, 2)}
    return not any(dims.values()), "C_1 reduced dims (L, q) -> %s" % sorted(dims.items())


def criterion_9():
    dims = {}
    for N in (1, 2):
        for alpha in (0, Fraction(1, 2)):
            for q in (0, 1, 2):
                for L in (1, 2):
                    dims[(N, str(alpha), q, L)] = cohomology_dim(q, N, L, 1, FreeRankN(N, alpha), reduced=True).dim_H
    # on reduced cocycles d tau0 z = z, which exhibits a primitive directly
    rng = random.Random(SEED + 9)
    ok = n = 0
    for N, alpha in ((1, 0), (1, Fraction(1, 2)), (2, 0), (2, Fraction(1, 2))):
        mod = FreeRankN(N, alpha)
        L = 2 if N == 1 else 1
        for _ in range(5):
            q = rng.choice((1, 2))
            phi = delta_reduce(random_cochain(rng, q - 1, GcN(N), mod, L, max_degree=1))
            z = reduced_differential(phi, L)
            n += 1
            ok += reduced_differential(tau0(z), L) == z
    nonzero = {k: v for k, v in dims.items() if v}
    return not nonzero and ok == n, "%d natural-module dims, nonzero: %s; z = d tau0 z on %d/%d cocycles" % (
        len(dims), nonzero or "none", ok, n)


def criterion_10():
    sol = solve_recursion(6)
    agree = all(x == psi_coefficient(m, n) for (m, n), x in sol.items())
    residual = [(m, n) for m in range(7) for n in range(7 - m) if recursion_residual(m, n)]
    p2 = psi_prime(2, 1)
    spot_00 = all(
        p2.values.get((a, b), (Poly(),))[0] == lam(1).scale(1 if (a.k == b.j and a.j == b.k) else 0)
        for a in GcN(2).generators(0) for b in GcN(2).generators(0) if a <= b)
    j1 = Gen(1, 1, 1)
    spot_11 = psi_prime(1, 2).values[(j1, j1)] == (Poly.var(1, 3).scale(Fraction(-1, 6)),)
    ok = agree and not residual and spot_00 and spot_11
    return ok, "%d coefficients solved, closed form agrees %s, residuals %s; spot values %s/%s" % (
        len(sol), agree, residual or "none", spot_00, spot_11)


def criterion_11():
    L = 4
    dl = leibniz_differential(leibniz_f(L), L)
    gb = gamma_bar(L)
    equal = dl == as_leibniz(gb)
    mismatch = sorted({t[2].n for t in set(from_leibniz(dl).values) ^ set(gb.values)}
                      | {t[2].n for t in gb.values if from_leibniz(dl).values.get(t) != gb.values[t]})
    residual_levels = {}
    for cond in range(1, L + 1):
        residual_levels[cond] = len(verify_cocycle(gamma_bar(cond), cond))
    closed = not any(residual_levels.values())
    prim = find_primitive(gamma_bar(3))
    cert = not prim.feasible and prim.certificate_valid
    detail = "d_L f = gamma-bar: %s (differs at J^n, n in %s); d gamma-bar residual tuples by level %s; infeasibility certificate %s" % (
        equal, mismatch or "none", residual_levels, cert)
    return equal and closed and cert, detail


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


@pytest.mark.parametrize("n", range(1, 12))
def test_criterion(n, say):
    ok, detail = CRITERIA[n - 1]()
    assert say(n, ok, detail), detail


if __name__ == "__main__":
    results = [report(i + 1, *f()) for i, f in enumerate(CRITERIA)]
    sys.exit(0 if all(results) else 1)
