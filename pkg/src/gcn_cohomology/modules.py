"""Coefficient modules over gc_N: trivial C, twisted C_a, and C^N_alpha[d].

A module element is a tuple of polynomials, one per free generator e_1..e_r of
the module (r = 1 for the scalar kinds).  For the free module the variable
``D`` inside a component is the module's own translation operator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

from .algebra import AlgebraElement, Gen, GcN, bracket, generator_pairs
from .poly import D, LAM, MU, ONE, ZERO, Poly

ModuleElement = Tuple[Poly, ...]


@dataclass(frozen=True)
class Trivial:
    rank: int = 1

    @property
    def spec(self) -> str:
        return "trivial"


@dataclass(frozen=True)
class TwistedScalar:
    """C_a: one-dimensional, d acts by ``a`` (nonzero), trivial algebra action."""

    a: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        if self.a == 0:
            raise ValueError("C_a needs a != 0; use Trivial for a = 0")

    rank = 1

    @property
    def spec(self) -> str:
        return "twisted:%s" % self.a


@dataclass(frozen=True)
class FreeRankN:
    """C^N_alpha[d] with J^m_A _lam v = (d + lam + alpha)^m A v."""

    N: int
    alpha: Fraction = Fraction(0)
    # test fixture only: J^0_I acts at lam^0 by ``j0_scale`` instead of 1
    j0_scale: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "j0_scale", Fraction(self.j0_scale))
        if self.N < 1:
            raise ValueError("N must be >= 1")

    @property
    def rank(self) -> int:
        return self.N

    @property
    def spec(self) -> str:
        s = "natural:%d:%s" % (self.N, self.alpha)
        if self.j0_scale != 1:
            s += ":c=%s" % self.j0_scale
        return s


def synthetic_module(N: int, c, alpha=0) -> FreeRankN:
    """Free module whose J^0_I acts at lambda = 0 by the scalar ``c``.

    Not a conformal module for c != 1; only used to exercise the general
    hypothesis of the vanishing argument.
    """
    return FreeRankN(N, Fraction(alpha), Fraction(c))


def parse_module(text: str):
    """``trivial`` | ``twisted:a`` | ``natural:N:alpha``."""
    parts = text.strip().split(":")
    kind = parts[0]
    try:
        if kind == "trivial" and len(parts) == 1:
            return Trivial()
        if kind == "twisted" and len(parts) == 2:
            a = Fraction(parts[1])
            return Trivial() if a == 0 else TwistedScalar(a)
        if kind == "natural" and len(parts) in (2, 3):
            alpha = Fraction(parts[2]) if len(parts) == 3 else Fraction(0)
            return FreeRankN(int(parts[1]), alpha)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError("bad module spec %r: %s" % (text, exc)) from None
    raise ValueError("bad module spec %r (expected trivial|twisted:a|natural:N:alpha)" % text)


def has_action(mod) -> bool:
    return isinstance(mod, FreeRankN)


def zero_element(mod) -> ModuleElement:
    return (ZERO,) * mod.rank


def basis_vector(mod, i: int) -> ModuleElement:
    return tuple(ONE if k == i else ZERO for k in range(mod.rank))


@lru_cache(maxsize=None)
def _shift_power(alpha: Fraction, m: int, lam_var: int) -> Poly:
    return (Poly.var(D) + Poly.var(lam_var) + Poly.const(alpha)) ** m


def lambda_action(mod, g: Gen, v: ModuleElement, lam: Poly | None = None) -> ModuleElement:
    """g _lam v for a free generator g; ``lam`` defaults to the variable LAM."""
    if len(v) != mod.rank:
        raise ValueError("element of rank %d for module of rank %d" % (len(v), mod.rank))
    if not isinstance(mod, FreeRankN):
        return zero_element(mod)
    if not (1 <= g.j <= mod.N and 1 <= g.k <= mod.N):
        raise ValueError("generator %s does not act on rank %d" % (g, mod.N))
    x = Poly.var(LAM) if lam is None else lam
    comp = v[g.k - 1]
    if not comp:
        return zero_element(mod)
    # p(d) e_k  |->  p(d + x) (d + x + alpha)^m E_{jk} e_k
    shifted = comp.subs({D: Poly.var(D) + x})
    factor = _shift_power(mod.alpha, g.n, LAM)
    if x != Poly.var(LAM):
        factor = factor.subs({LAM: x})
    out = [ZERO] * mod.rank
    out[g.j - 1] = shifted * factor
    if g.n == 0 and mod.j0_scale != 1 and g.j == g.k:
        # J^0_{E_jj} picks up (c - 1) e_j at lambda^0, so J^0_I acts by c
        out[g.j - 1] = out[g.j - 1] + comp.scale(mod.j0_scale - 1)
    return tuple(out)


def act(mod, a: AlgebraElement, v: ModuleElement, lam: Poly | None = None) -> ModuleElement:
    """a _lam v for an algebra element with d-coefficients: (p(d) g)_lam v = p(-lam) g_lam v."""
    x = Poly.var(LAM) if lam is None else lam
    out = list(zero_element(mod))
    for g, p in a.terms.items():
        w = lambda_action(mod, g, v, x)
        px = p.subs({D: -x})
        for i in range(mod.rank):
            if w[i]:
                out[i] = out[i] + px * w[i]
    return tuple(out)


def partial_action(mod, v: ModuleElement) -> ModuleElement:
    if isinstance(mod, Trivial):
        return zero_element(mod)
    if isinstance(mod, TwistedScalar):
        return tuple(c.scale(mod.a) for c in v)
    return tuple(c * Poly.var(D) for c in v)


def _sub(u: ModuleElement, w: ModuleElement) -> ModuleElement:
    return tuple(a - b for a, b in zip(u, w))


def check_module_axioms(mod, alg: GcN, level: int) -> List[Tuple[str, object, ModuleElement]]:
    """Residuals of the module axioms; an empty list means every check passed.

    Each entry is ``(axiom, arguments, residual)``.
    """
    L, M = Poly.var(LAM), Poly.var(MU)
    failures = []
    vecs = [basis_vector(mod, i) for i in range(mod.rank)]
    dvecs = [partial_action(mod, v) for v in vecs]
    for a, b in generator_pairs(alg, level):
        ea, eb = AlgebraElement.gen(a), AlgebraElement.gen(b)
        br = bracket(alg, ea, eb, L)
        for i, v in enumerate(vecs):
            lhs = _sub(act(mod, ea, act(mod, eb, v, M), L), act(mod, eb, act(mod, ea, v, L), M))
            res = _sub(lhs, act(mod, br, v, L + M))
            if any(res):
                failures.append(("commutator", (a, b, i), res))
    for a in alg.generators(level):
        ea = AlgebraElement.gen(a)
        da = AlgebraElement.gen(a, Poly.var(D))
        for i, v in enumerate(vecs):
            av = act(mod, ea, v, L)
            res = _sub(act(mod, da, v, L), tuple(c.scale(-1) * L for c in av))
            if any(res):
                failures.append(("d-left", (a, i), res))
            # a_lam (d v) = (d + lam) a_lam v, with d acting through the module
            lhs = act(mod, ea, dvecs[i], L)
            rhs = _add(partial_action(mod, av), tuple(L * c for c in av))
            res = _sub(lhs, rhs)
            if any(res):
                failures.append(("d-right", (a, i), res))
    return failures


def _add(u: ModuleElement, w: ModuleElement) -> ModuleElement:
    return tuple(a + b for a, b in zip(u, w))
