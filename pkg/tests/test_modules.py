from fractions import Fraction

import pytest

from gcn_cohomology.algebra import Gen, GcN
from gcn_cohomology.modules import (
    FreeRankN,
    Trivial,
    TwistedScalar,
    basis_vector,
    check_module_axioms,
    lambda_action,
    parse_module,
    partial_action,
    synthetic_module,
)
from gcn_cohomology.poly import D, LAM, ONE, ZERO, Poly

lam, d = Poly.var(LAM), Poly.var(D)


def test_natural_action_formula():
    mod = FreeRankN(2, Fraction(1, 2))
    e2 = basis_vector(mod, 1)
    # J^m_A _lam v = (d + lam + alpha)^m A v
    got = lambda_action(mod, Gen(2, 1, 2), e2)
    assert got == ((d + lam + Poly.const(Fraction(1, 2))) ** 2, ZERO)
    assert lambda_action(mod, Gen(2, 2, 1), e2) == (ZERO, ZERO)
    # coefficients in d shift by lambda
    assert lambda_action(mod, Gen(0, 1, 1), (d, ZERO)) == (d + lam, ZERO)


def test_scalar_modules_have_trivial_action():
    for mod in (Trivial(), TwistedScalar(2)):
        assert lambda_action(mod, Gen(1, 1, 1), (ONE,)) == (ZERO,)
    assert partial_action(TwistedScalar(3), (ONE,)) == (Poly.const(3),)
    assert partial_action(Trivial(), (ONE,)) == (ZERO,)


@pytest.mark.parametrize("mod", [
    Trivial(), TwistedScalar(1), TwistedScalar(2),
    FreeRankN(1, 0), FreeRankN(1, Fraction(1, 2)), FreeRankN(1, -1),
    FreeRankN(2, 0), FreeRankN(2, Fraction(1, 2)), FreeRankN(2, -1),
], ids=lambda m: m.spec)
def test_module_axioms(mod):
    N = mod.N if isinstance(mod, FreeRankN) else 2
    assert check_module_axioms(mod, GcN(N), 2) == []


def test_synthetic_module_breaks_the_axioms():
    assert check_module_axioms(synthetic_module(1, 2), GcN(1), 1)
    assert check_module_axioms(synthetic_module(1, 1), GcN(1), 1) == []


def test_parse_module():
    assert parse_module("trivial") == Trivial()
    assert parse_module("twisted:3/2") == TwistedScalar(Fraction(3, 2))
    assert parse_module("twisted:0") == Trivial()
    assert parse_module("natural:2:-1") == FreeRankN(2, -1)
    assert parse_module("natural:1") == FreeRankN(1, 0)
    for bad in ("twisted", "natural:x", "free:1", "natural:0"):
        with pytest.raises(ValueError):
            parse_module(bad)


def test_specs_round_trip():
    for mod in (Trivial(), TwistedScalar(Fraction(-1, 3)), FreeRankN(2, Fraction(1, 2))):
        assert parse_module(mod.spec) == mod
