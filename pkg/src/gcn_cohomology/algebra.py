"""The general conformal algebras gc_N, the Virasoro conformal algebra, and
the central extension of gc_N.

Elements are finite sums ``sum_g p_g(d) g`` over free generators, where the
coefficient polynomials may contain the translation variable ``D`` together
with any scalar variables (lambda_i, the bracket variables).  Generators of
gc_N are ``Gen(n, j, k)`` meaning J^n_{E_{jk}}; general matrices are expanded
over the E_{jk} basis on construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from .poly import D, LAM, MU, ONE, ZERO, Poly, binomial

VIR_L = "L"


class Gen(NamedTuple):
    """Free generator J^n_{E_{jk}} of gc_N (1-based matrix indices)."""

    n: int
    j: int
    k: int

    def __str__(self) -> str:
        return "J[%d,%d,%d]" % self


@dataclass(frozen=True)
class GcN:
    N: int
    extended: bool = False
    corrupt: bool = False  # debug: perturbs one structure constant

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be >= 1")

    @property
    def name(self) -> str:
        return "gc_%d%s" % (self.N, "~" if self.extended else "")

    def labels(self) -> List[Tuple[int, int]]:
        return [(j, k) for j in range(1, self.N + 1) for k in range(1, self.N + 1)]

    def generators(self, max_level: int) -> List[Gen]:
        return [Gen(n, j, k) for n in range(max_level + 1) for j, k in self.labels()]

    def check(self, g) -> None:
        if not isinstance(g, Gen):
            raise ValueError("%r is not a gc_N generator" % (g,))
        if g.n < 0 or not (1 <= g.j <= self.N and 1 <= g.k <= self.N):
            raise ValueError("generator %s out of range for N=%d" % (g, self.N))


@dataclass(frozen=True)
class Virasoro:
    corrupt: bool = False

    @property
    def name(self) -> str:
        return "Vir"

    def generators(self, max_level: int = 0) -> List[str]:
        return [VIR_L]

    def check(self, g) -> None:
        if g != VIR_L:
            raise ValueError("%r is not the Virasoro generator" % (g,))


class AlgebraElement:
    """Finite sum of generators with polynomial coefficients, plus a central part."""

    __slots__ = ("terms", "central")

    def __init__(self, terms: Optional[Dict[object, Poly]] = None, central: Poly = ZERO):
        self.terms: Dict[object, Poly] = {g: p for g, p in (terms or {}).items() if p}
        # C spans a trivial C[d]-module
        self.central = central.subs({D: ZERO}) if central else ZERO

    @classmethod
    def gen(cls, g, coeff: Poly = ONE) -> "AlgebraElement":
        return cls({g: coeff})

    @classmethod
    def central_unit(cls) -> "AlgebraElement":
        return cls({}, ONE)

    def is_zero(self) -> bool:
        return not self.terms and not self.central

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.terms == other.terms and self.central == other.central

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.terms)
        for g, p in other.terms.items():
            out[g] = out.get(g, ZERO) + p
        return AlgebraElement(out, self.central + other.central)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement({g: -p for g, p in self.terms.items()}, -self.central)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def mul(self, p: Poly) -> "AlgebraElement":
        """Multiply every coefficient by ``p`` (a polynomial in d and scalars)."""
        return AlgebraElement({g: c * p for g, c in self.terms.items()}, self.central * p)

    def subs(self, mapping) -> "AlgebraElement":
        return AlgebraElement(
            {g: c.subs(mapping) for g, c in self.terms.items()}, self.central.subs(mapping)
        )

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = ["(%s)*%s" % (p, g) for g, p in sorted(self.terms.items(), key=lambda t: str(t[0]))]
        if self.central:
            parts.append("(%s)*C" % self.central)
        return " + ".join(parts)

    __repr__ = __str__


def matrix_element(N: int, n: int, matrix: Sequence[Sequence]) -> AlgebraElement:
    """J^n_A for a general N x N matrix A, expanded over the E_{jk} basis."""
    terms = {}
    for j in range(N):
        for k in range(N):
            a = matrix[j][k]
            if a:
                terms[Gen(n, j + 1, k + 1)] = Poly.const(Fraction(a))
    return AlgebraElement(terms)


def identity_element(N: int, n: int = 0) -> AlgebraElement:
    return AlgebraElement({Gen(n, j, j): ONE for j in range(1, N + 1)})


@lru_cache(maxsize=None)
def _lam_plus_d_pow(s: int) -> Poly:
    return (Poly.var(LAM) + Poly.var(D)) ** s


@lru_cache(maxsize=None)
def _neg_lam_pow(s: int) -> Poly:
    return (-Poly.var(LAM)) ** s


def _central_coeff(m: int, n: int) -> Fraction:
    return Fraction((-1) ** n * factorial(m) * factorial(n), factorial(m + n + 1))


@lru_cache(maxsize=None)
def _bracket_gc(alg: GcN, a: Gen, b: Gen) -> AlgebraElement:
    m, n = a.n, b.n
    terms: Dict[Gen, Poly] = {}

    def add(g: Gen, p: Poly):
        terms[g] = terms.get(g, ZERO) + p

    # E_{ja ka} E_{jb kb} = delta_{ka jb} E_{ja kb}
    if a.k == b.j:
        for s in range(m + 1):
            c = binomial(m, s)
            if alg.corrupt and s == 1:
                c += 1
            add(Gen(m + n - s, a.j, b.k), _lam_plus_d_pow(s).scale(c))
    if b.k == a.j:
        for s in range(n + 1):
            add(Gen(m + n - s, b.j, a.k), _neg_lam_pow(s).scale(-binomial(n, s)))
    central = ZERO
    if alg.extended and a.k == b.j and a.j == b.k:
        # tr(E_{ja ka} E_{jb kb}) = delta_{ka jb} delta_{ja kb}
        central = Poly.var(LAM, m + n + 1).scale(_central_coeff(m, n))
    return AlgebraElement(terms, central)


@lru_cache(maxsize=None)
def _bracket_vir(alg: Virasoro) -> AlgebraElement:
    two = 3 if alg.corrupt else 2
    return AlgebraElement({VIR_L: Poly.var(D) + Poly.var(LAM).scale(two)})


def bracket_generators(alg, a, b) -> AlgebraElement:
    """[a_lambda b] for free generators, coefficients in (LAM, D)."""
    alg.check(a)
    alg.check(b)
    if isinstance(alg, Virasoro):
        return _bracket_vir(alg)
    return _bracket_gc(alg, a, b)


def bracket(alg, a: AlgebraElement, b: AlgebraElement, lam: Poly | None = None) -> AlgebraElement:
    """[a_x b] for arbitrary elements, where ``x`` is the polynomial ``lam``.

    Sesquilinearity: a coefficient p(d) on ``a`` becomes p(-x), a coefficient
    q(d) on ``b`` becomes q(d + x).  Central parts of the inputs bracket to 0.
    """
    x = Poly.var(LAM) if lam is None else lam
    left_sub = {D: -x}
    right_sub = {D: Poly.var(D) + x}
    result = AlgebraElement()
    for ga, pa in a.terms.items():
        pa_x = pa.subs(left_sub)
        for gb, pb in b.terms.items():
            br = bracket_generators(alg, ga, gb)
            if br.is_zero():
                continue
            factor = pa_x * pb.subs(right_sub)
            sub = {LAM: x} if lam is not None else None
            terms = {}
            for g, c in br.terms.items():
                cx = c.subs(sub) if sub else c
                terms[g] = cx * factor
            central = br.central.subs(sub) if sub else br.central
            result = result + AlgebraElement(terms, central * factor)
    return result


def check_skew_symmetry(alg, a, b) -> AlgebraElement:
    """Residual of [a_lam b] + [b_{-lam-d} a]; zero means the identity holds."""
    ea, eb = AlgebraElement.gen(a), AlgebraElement.gen(b)
    lhs = bracket(alg, ea, eb)
    rev = bracket_generators(alg, b, a)
    flip = {LAM: -Poly.var(LAM) - Poly.var(D)}
    swapped = AlgebraElement(
        {g: c.subs(flip) for g, c in rev.terms.items()},
        rev.central.subs(flip),
    )
    return lhs + swapped


def check_jacobi(alg, a, b, c) -> AlgebraElement:
    """Residual of [a_lam [b_mu c]] - [[a_lam b]_{lam+mu} c] - [b_mu [a_lam c]]."""
    ea, eb, ec = (AlgebraElement.gen(x) for x in (a, b, c))
    L, M = Poly.var(LAM), Poly.var(MU)
    # inner brackets use fresh variables to avoid capture
    b_mu_c = bracket(alg, eb, ec, M)
    a_lam_c = bracket(alg, ea, ec, L)
    a_lam_b = bracket(alg, ea, eb, L)
    t1 = bracket(alg, ea, b_mu_c, L)
    t2 = bracket(alg, a_lam_b, ec, L + M)
    t3 = bracket(alg, eb, a_lam_c, M)
    return t1 - t2 - t3


def check_zero_bracket_central(alg: GcN, a) -> AlgebraElement:
    """[J^0_I _0 a] - [a _0 J^0_I], read in gc_N / d gc_N.

    The 0-bracket is a Lie bracket only on the quotient by d gc_N; there the
    residual vanishes.  Before the quotient, [a _0 J^0_I] is a nonzero multiple
    of d for a of level >= 1.
    """
    if not isinstance(alg, GcN):
        raise ValueError("0-bracket centrality is stated for gc_N")
    ident = identity_element(alg.N)
    ea = AlgebraElement.gen(a)
    zero = Poly.const(0)
    raw = bracket(alg, ident, ea, zero) - bracket(alg, ea, ident, zero)
    # free C[d]-module: p(d) g is in d gc_N iff p(0) = 0
    return raw.subs({D: zero})


def zero_bracket_raw(alg: GcN, a) -> AlgebraElement:
    """[J^0_I _0 a] - [a _0 J^0_I] without passing to the quotient."""
    ident = identity_element(alg.N)
    ea = AlgebraElement.gen(a)
    zero = Poly.const(0)
    return bracket(alg, ident, ea, zero) - bracket(alg, ea, ident, zero)


def generator_pairs(alg, max_total: int) -> Iterator[Tuple[object, object]]:
    gens = alg.generators(max_total)
    for a, b in product(gens, repeat=2):
        if _level(a) + _level(b) <= max_total:
            yield a, b


def generator_triples(alg, max_total: int) -> Iterator[Tuple[object, object, object]]:
    gens = alg.generators(max_total)
    for a, b, c in product(gens, repeat=3):
        if _level(a) + _level(b) + _level(c) <= max_total:
            yield a, b, c


def _level(g) -> int:
    return g.n if isinstance(g, Gen) else 0


def parse_generator(text: str):
    """Parse ``J[n,j,k]`` or ``L``."""
    s = text.strip()
    if s == VIR_L:
        return VIR_L
    if s.startswith("J[") and s.endswith("]"):
        parts = s[2:-1].split(",")
        if len(parts) == 3:
            n, j, k = (int(x) for x in parts)
            if n < 0:
                raise ValueError("negative level in %r" % text)
            return Gen(n, j, k)
    raise ValueError("cannot parse generator %r" % text)
