"""Basic, reduced and Leibniz cochains on gc_N and the operators acting on them.

A cochain is stored as its values on canonical generator tuples (sorted by
``(n, j, k)``) of level at most ``level``; it is an element of the quotient
complex obtained by forgetting all tuples of higher level.  The differential
only ever looks at tuples of equal or lower level, so every operator here is
exact on that quotient.

Values are module elements (tuples of polynomials) in the variables
lambda_1..lambda_q, plus ``D`` for free-module coefficients.  Reduced
cochains store one representative per class:

* trivial coefficients: lambda_q eliminated (lambda_q = -lambda_1 - ... - lambda_{q-1})
* C_a: lambda_q = -a - lambda_1 - ... - lambda_{q-1}
* free modules: ``D`` eliminated (D = -lambda_1 - ... - lambda_q)
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, permutations, product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .algebra import AlgebraElement, Gen, GcN, bracket_generators, parse_generator
from .modules import (
    FreeRankN,
    ModuleElement,
    Trivial,
    TwistedScalar,
    has_action,
    lambda_action,
    parse_module,
    partial_action,
    zero_element,
)
from .poly import D, LAM, ONE, ZERO, Poly, lam, lam_sum, parse_poly

Tuple_ = Tuple[Gen, ...]


# -- tuples ---------------------------------------------------------------------

def level_of(t: Sequence[Gen]) -> int:
    return sum(g.n for g in t)


def permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def canonicalize(t: Sequence[Gen]) -> Tuple[Tuple_, int, Tuple[int, ...]]:
    """Minimal reordering of ``t``: returns ``(u, sign, perm)`` with u[k] = t[perm[k]]."""
    perm = tuple(sorted(range(len(t)), key=lambda i: t[i]))
    return tuple(t[i] for i in perm), permutation_sign(perm), perm


@lru_cache(maxsize=None)
def stabilizer(u: Tuple_) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    """Permutations fixing the tuple ``u``, with their signs."""
    blocks: Dict[Gen, List[int]] = {}
    for i, g in enumerate(u):
        blocks.setdefault(g, []).append(i)
    groups = [b for b in blocks.values() if len(b) > 1]
    if not groups:
        return (((tuple(range(len(u)))), 1),)
    out = []
    for choice in product(*(permutations(b) for b in groups)):
        perm = list(range(len(u)))
        for block, image in zip(groups, choice):
            for src, dst in zip(block, image):
                perm[src] = dst
        out.append((tuple(perm), permutation_sign(perm)))
    return tuple(out)


def canonical_tuples(alg: GcN, q: int, max_level: int, min_level: int = 0) -> List[Tuple_]:
    gens = sorted(alg.generators(max_level))
    out = [
        t
        for t in combinations_with_replacement(gens, q)
        if min_level <= level_of(t) <= max_level
    ]
    out.sort(key=lambda t: (level_of(t), t))
    return out


def ordered_tuples(alg: GcN, q: int, max_level: int) -> List[Tuple_]:
    gens = sorted(alg.generators(max_level))
    out = [t for t in product(gens, repeat=q) if level_of(t) <= max_level]
    out.sort(key=lambda t: (level_of(t), t))
    return out


def lambda_vars(q: int) -> List[int]:
    return list(range(1, q + 1))


def value_vars(mod, q: int) -> List[int]:
    vs = lambda_vars(q)
    if isinstance(mod, FreeRankN):
        vs.append(D)
    return vs


# -- value helpers -----------------------------------------------------------------

def _vadd(u: ModuleElement, w: ModuleElement) -> ModuleElement:
    return tuple(a + b for a, b in zip(u, w))


def _vscale(u: ModuleElement, p) -> ModuleElement:
    if isinstance(p, Poly):
        return tuple(a * p for a in u)
    return tuple(a.scale(p) for a in u)


def _vsubs(u: ModuleElement, mapping) -> ModuleElement:
    return tuple(a.subs(mapping) for a in u)


def _vzero(u: ModuleElement) -> bool:
    return not any(u)


def symmetrize_value(u: Tuple_, value: ModuleElement) -> ModuleElement:
    """Average of sgn(s) * value(lambda_k -> lambda_{s(k)}) over the stabilizer of ``u``."""
    stab = stabilizer(u)
    if len(stab) == 1:
        return value
    acc = tuple(ZERO for _ in value)
    for perm, sign in stab:
        mapping = {k + 1: lam(perm[k] + 1) for k in range(len(u)) if perm[k] != k}
        acc = _vadd(acc, _vscale(_vsubs(value, mapping), sign))
    return _vscale(acc, Fraction(1, len(stab)))


# -- the cochain type --------------------------------------------------------------

class Cochain:
    """A q-cochain of gc_N with coefficients in ``module``, known up to ``level``."""

    def __init__(
        self,
        q: int,
        algebra: GcN,
        module,
        level: int,
        values: Optional[Dict[Tuple_, ModuleElement]] = None,
        reduced: bool = False,
        leibniz: bool = False,
        symmetrize: bool = True,
    ):
        if q < 0:
            raise ValueError("degree must be non-negative")
        if reduced and leibniz:
            raise ValueError("reduced Leibniz cochains are not supported")
        self.q = q
        self.algebra = algebra
        self.module = module
        self.level = level
        self.reduced = reduced
        self.leibniz = leibniz
        store: Dict[Tuple_, ModuleElement] = {}
        for t, v in (values or {}).items():
            t = tuple(t)
            if len(t) != q:
                raise ValueError("tuple %s has length %d, expected %d" % (t, len(t), q))
            if level_of(t) > level:
                continue
            if isinstance(v, Poly):
                v = (v,)
            v = tuple(v)
            if len(v) != module.rank:
                raise ValueError("value of rank %d for module of rank %d" % (len(v), module.rank))
            if not leibniz:
                u, sign, perm = canonicalize(t)
                if u != t:
                    # move the value to canonical order
                    v = _vscale(_vsubs(v, {k + 1: lam(perm.index(k) + 1) for k in range(q)}), sign)
                    t = u
                if symmetrize and not reduced:
                    v = symmetrize_value(t, v)
            if t in store:
                v = _vadd(store[t], v)
            if _vzero(v):
                store.pop(t, None)
            else:
                store[t] = v
        self.values = store

    # basic structure

    def like(self, values, q=None, level=None, reduced=None, symmetrize=False) -> "Cochain":
        return Cochain(
            self.q if q is None else q,
            self.algebra,
            self.module,
            self.level if level is None else level,
            values,
            reduced=self.reduced if reduced is None else reduced,
            leibniz=self.leibniz,
            symmetrize=symmetrize,
        )

    def is_zero(self) -> bool:
        return not self.values

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return (
            self.q == other.q
            and self.reduced == other.reduced
            and self.leibniz == other.leibniz
            and self.values == other.values
        )

    def __add__(self, other: "Cochain") -> "Cochain":
        self._compatible(other)
        out = dict(self.values)
        for t, v in other.values.items():
            out[t] = _vadd(out[t], v) if t in out else v
        return self.like(out, level=min(self.level, other.level))

    def __neg__(self) -> "Cochain":
        return self.like({t: _vscale(v, -1) for t, v in self.values.items()})

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def scale(self, c) -> "Cochain":
        return self.like({t: _vscale(v, c) for t, v in self.values.items()})

    def truncate(self, level: int) -> "Cochain":
        return self.like(self.values, level=min(level, self.level))

    def _compatible(self, other: "Cochain") -> None:
        if (self.q, self.reduced, self.leibniz) != (other.q, other.reduced, other.leibniz):
            raise ValueError("incompatible cochains")

    def value(self, t: Sequence[Gen]) -> ModuleElement:
        """Stored value on a tuple, reordering to canonical form if needed."""
        if self.reduced:
            raise ValueError("evaluate reduced cochains through lift()")
        return evaluate_on_generators(self, tuple(t), [lam(i + 1) for i in range(self.q)])

    def support(self) -> List[Tuple_]:
        return sorted(self.values, key=lambda t: (level_of(t), t))

    def __repr__(self) -> str:
        kind = "reduced " if self.reduced else ("Leibniz " if self.leibniz else "")
        return "<%s%d-cochain of %s in %s, level<=%d, %d tuples>" % (
            kind, self.q, self.algebra.name, self.module.spec, self.level, len(self.values))


def zero_cochain(q, algebra, module, level, reduced=False, leibniz=False) -> Cochain:
    return Cochain(q, algebra, module, level, {}, reduced=reduced, leibniz=leibniz)


# -- evaluation ------------------------------------------------------------------------

def evaluate_on_generators(c: Cochain, w: Tuple_, forms: Sequence[Poly]) -> ModuleElement:
    """gamma_{forms}(w) for a tuple of free generators."""
    if c.leibniz:
        v = c.values.get(w)
        if v is None:
            return zero_element(c.module)
        return _vsubs(v, {k + 1: forms[k] for k in range(c.q)})
    u, sign, perm = canonicalize(w)
    v = c.values.get(u)
    if v is None:
        return zero_element(c.module)
    mapping = {k + 1: forms[perm[k]] for k in range(c.q)}
    out = _vsubs(v, mapping)
    return out if sign == 1 else _vscale(out, -1)


def evaluate(c: Cochain, args: Sequence[AlgebraElement], forms: Optional[Sequence[Poly]] = None) -> ModuleElement:
    """Multilinear evaluation on algebra elements with d-coefficients.

    A coefficient p(d) in slot i contributes p(-lambda_i) (conformal antilinearity).
    """
    if len(args) != c.q:
        raise ValueError("expected %d arguments, got %d" % (c.q, len(args)))
    if c.reduced:
        c = lift(c)
    forms = [lam(i + 1) for i in range(c.q)] if forms is None else list(forms)
    acc = zero_element(c.module)
    slots = [list(a.terms.items()) for a in args]
    for combo in product(*slots):
        gens = tuple(g for g, _ in combo)
        coeff = ONE
        for i, (_, p) in enumerate(combo):
            coeff = coeff * p.subs({D: -forms[i]})
        if not coeff:
            continue
        acc = _vadd(acc, _vscale(evaluate_on_generators(c, gens, forms), coeff))
    return acc


# -- differentials ---------------------------------------------------------------------

class _Term:
    __slots__ = ("w", "forms", "coef", "action", "lam_index")

    def __init__(self, w, forms, coef, action=None, lam_index=0):
        self.w = w
        self.forms = forms
        self.coef = coef
        self.action = action
        self.lam_index = lam_index


@lru_cache(maxsize=200_000)
def differential_terms(alg: GcN, acting: bool, t: Tuple_, leibniz: bool = False) -> Tuple[_Term, ...]:
    """Expansion of (d gamma)(t) as a list of references to gamma's values."""
    n = len(t)
    lams = [lam(i + 1) for i in range(n)]
    out = []
    if acting:
        for i in range(n):
            rest = t[:i] + t[i + 1:]
            forms = tuple(lams[:i] + lams[i + 1:])
            out.append(_Term(rest, forms, Poly.const((-1) ** i), t[i], i + 1))
    for i in range(n):
        for j in range(i + 1, n):
            br = bracket_generators(alg, t[i], t[j])
            if br.is_zero():
                continue
            merged = lams[i] + lams[j]
            sub = {LAM: lams[i], D: -merged}
            rest_idx = [k for k in range(n) if k != i and k != j]
            if leibniz:
                # bracket sits where a_j was; 1-based sign (-1)^i
                sign = (-1) ** (i + 1)
                pos = j - 1
            else:
                sign = (-1) ** (i + j)
                pos = 0
            for g, cpoly in br.terms.items():
                coef = cpoly.subs(sub)
                if not coef:
                    continue
                rest = [t[k] for k in rest_idx]
                rest_forms = [lams[k] for k in rest_idx]
                rest.insert(pos, g)
                rest_forms.insert(pos, merged)
                out.append(_Term(tuple(rest), tuple(rest_forms), coef.scale(sign)))
    return tuple(out)


def apply_term(c: Cochain, term: _Term) -> ModuleElement:
    val = evaluate_on_generators(c, term.w, term.forms)
    if _vzero(val):
        return val
    if term.action is not None:
        val = lambda_action(c.module, term.action, val, lam(term.lam_index))
    return _vscale(val, term.coef)


def differential_at(c: Cochain, t: Tuple_) -> ModuleElement:
    acc = zero_element(c.module)
    for term in differential_terms(c.algebra, has_action(c.module), t, c.leibniz):
        acc = _vadd(acc, apply_term(c, term))
    return acc


def differential(c: Cochain, level: Optional[int] = None) -> Cochain:
    """d gamma on all (q+1)-tuples up to ``level`` (default: the cochain's level)."""
    if c.reduced:
        return reduced_differential(c, level)
    if c.leibniz:
        return leibniz_differential(c, level)
    lvl = c.level if level is None else level
    out = {}
    for t in canonical_tuples(c.algebra, c.q + 1, lvl):
        v = differential_at(c, t)
        if not _vzero(v):
            out[t] = v
    return Cochain(c.q + 1, c.algebra, c.module, lvl, out, symmetrize=False)


def leibniz_differential(c: Cochain, level: Optional[int] = None) -> Cochain:
    """d_L: the differential with the bracket left in place of its second argument."""
    lvl = c.level if level is None else level
    src = c if c.leibniz else as_leibniz(c)
    out = {}
    for t in ordered_tuples(c.algebra, c.q + 1, lvl):
        v = differential_at(src, t)
        if not _vzero(v):
            out[t] = v
    return Cochain(c.q + 1, c.algebra, c.module, lvl, out, leibniz=True)


def as_leibniz(c: Cochain) -> Cochain:
    """Forget skew-symmetry: store the values on every ordered tuple."""
    if c.leibniz:
        return c
    if c.reduced:
        raise ValueError("reduced cochains have no Leibniz form")
    forms = [lam(i + 1) for i in range(c.q)]
    out = {}
    for u in c.values:
        for perm in set(permutations(range(c.q))):
            w = tuple(u[p] for p in perm)
            out[w] = evaluate_on_generators(c, w, forms)
    return Cochain(c.q, c.algebra, c.module, c.level, out, leibniz=True)


def from_leibniz(c: Cochain) -> Cochain:
    """Read a Leibniz cochain on canonical tuples; exact only if it is skew-symmetric."""
    vals = {t: v for t, v in c.values.items() if canonicalize(t)[0] == t}
    return Cochain(c.q, c.algebra, c.module, c.level, vals, symmetrize=False)


def is_skew_symmetric(c: Cochain) -> bool:
    if not c.leibniz:
        return True
    forms = [lam(i + 1) for i in range(c.q)]
    for w, v in c.values.items():
        u, sign, perm = canonicalize(w)
        base = c.values.get(u, zero_element(c.module))
        mapping = {k + 1: forms[perm[k]] for k in range(c.q)}
        if _vscale(_vsubs(base, mapping), sign) != v:
            return False
    sym = from_leibniz(c)
    return sym == Cochain(c.q, c.algebra, c.module, c.level, sym.values)


def partial_on_cochain(c: Cochain) -> Cochain:
    """(d gamma) = (d_M + lambda_1 + ... + lambda_q) gamma."""
    if c.reduced:
        raise ValueError("the d-action is defined on basic cochains")
    s = lam_sum(range(1, c.q + 1))
    out = {}
    for t, v in c.values.items():
        out[t] = _vadd(partial_action(c.module, v), _vscale(v, s))
    return c.like(out)


def degree_component(c: Cochain, p: int) -> Cochain:
    """Homogeneous part of degree p: on tuple t keep lambda-degree p + |t|."""
    vs = value_vars(c.module, c.q)
    out = {}
    for t, v in c.values.items():
        k = p + level_of(t)
        if k < 0:
            continue
        w = tuple(a.homogeneous_component(k, vs) for a in v)
        if not _vzero(w):
            out[t] = w
    return c.like(out)


def degrees_present(c: Cochain) -> List[int]:
    vs = value_vars(c.module, c.q)
    ps = set()
    for t, v in c.values.items():
        for a in v:
            ps.update(d - level_of(t) for d in a.degrees_in(vs))
    return sorted(ps)


def weight_of(t: Sequence[Gen]) -> int:
    """sum(k_i - j_i), the eigenvalue of the J^0_h homotopy on tuple t."""
    return sum(g.k - g.j for g in t)


# -- homotopy operators -------------------------------------------------------------------

def _insert_last(c: Cochain, inserted: Sequence[Tuple[Gen, int]], last_form: Poly,
                 level: int, derivative: bool) -> Cochain:
    """(-1)^(q-1) * sum_g coeff * gamma_{l_1..l_{q-1}, x}(..., g), then x-derivative or x = 0."""
    q = c.q
    if q == 0:
        return zero_cochain(0, c.algebra, c.module, level) if q == 0 else None
    forms = [lam(i + 1) for i in range(q - 1)] + [last_form]
    sign = (-1) ** (q - 1)
    out = {}
    for s in canonical_tuples(c.algebra, q - 1, level):
        acc = zero_element(c.module)
        for g, coeff in inserted:
            val = evaluate_on_generators(c, s + (g,), forms)
            if not _vzero(val):
                acc = _vadd(acc, _vscale(val, coeff))
        if derivative:
            acc = tuple(a.coeff(LAM, 1) for a in acc)
        else:
            acc = tuple(a.subs({LAM: ZERO}) for a in acc)
        if not _vzero(acc):
            out[s] = _vscale(acc, sign)
    return Cochain(q - 1, c.algebra, c.module, level, out, symmetrize=False)


def _j_identity(alg: GcN, n: int) -> List[Tuple[Gen, int]]:
    return [(Gen(n, j, j), 1) for j in range(1, alg.N + 1)]


def tau1(c: Cochain) -> Cochain:
    """(-1)^(q-1) d/dlam gamma(..., J^1_I)|_{lam=0}; lowers the known level by one."""
    if c.q == 0:
        return zero_cochain(0, c.algebra, c.module, c.level)
    return _insert_last(c, _j_identity(c.algebra, 1), Poly.var(LAM), c.level - 1, True)


def tau2(c: Cochain) -> Cochain:
    """(-1)^(q-1) gamma(..., J^0_h) with the last variable set to 0, h = sum_j j E_jj."""
    if c.q == 0:
        return zero_cochain(0, c.algebra, c.module, c.level)
    h = [(Gen(0, j, j), j) for j in range(1, c.algebra.N + 1)]
    return _insert_last(c, h, Poly.var(LAM), c.level, False)


def tau_twisted(c: Cochain) -> Cochain:
    """(-1)^(q-1) gamma(..., J^1_I)|_{lam=0}, for C_a coefficients."""
    if not isinstance(c.module, TwistedScalar):
        raise ValueError("tau_twisted needs C_a coefficients")
    if c.q == 0:
        return zero_cochain(0, c.algebra, c.module, c.level)
    return _insert_last(c, _j_identity(c.algebra, 1), Poly.var(LAM), c.level - 1, False)


def tau0(c: Cochain) -> Cochain:
    """(-1)^(q-1) gamma(..., J^0_I)|_{lam=0}; on reduced cochains via a basic lift."""
    if not isinstance(c.module, FreeRankN):
        raise ValueError("tau0 needs free-module coefficients")
    if c.q == 0:
        return zero_cochain(0, c.algebra, c.module, c.level, reduced=c.reduced)
    if c.reduced:
        return delta_reduce(tau0(lift(c)))
    return _insert_last(c, _j_identity(c.algebra, 0), Poly.var(LAM), c.level, False)


# -- reduction ------------------------------------------------------------------------------

def reduction_map(mod, q: int) -> Optional[Dict[int, Poly]]:
    """Substitution realising the quotient by the d-action; None means the quotient is 0."""
    if isinstance(mod, FreeRankN):
        return {D: -lam_sum(range(1, q + 1))}
    if q == 0:
        return {} if isinstance(mod, Trivial) else None
    rest = -lam_sum(range(1, q))
    if isinstance(mod, TwistedScalar):
        return {q: rest - Poly.const(mod.a)}
    return {q: rest}


def reduce_value(mod, q: int, v: ModuleElement) -> ModuleElement:
    mapping = reduction_map(mod, q)
    if mapping is None:
        return zero_element(mod)
    return _vsubs(v, mapping)


def delta_reduce(c: Cochain) -> Cochain:
    """The map onto reduced cochains; kills exactly the d-multiples."""
    if c.reduced:
        return c
    if c.leibniz:
        raise ValueError("Leibniz cochains cannot be reduced")
    out = {}
    for t, v in c.values.items():
        w = reduce_value(c.module, c.q, v)
        if not _vzero(w):
            out[t] = w
    return Cochain(c.q, c.algebra, c.module, c.level, out, reduced=True, symmetrize=False)


def lift(c: Cochain) -> Cochain:
    """A basic cochain whose reduction is ``c``.

    The stored representative is read as a basic value (constant in the
    eliminated variable) and projected onto the skew-symmetric cochains.
    """
    if not c.reduced:
        return c
    basic = Cochain(c.q, c.algebra, c.module, c.level, c.values)
    if delta_reduce(basic).values != c.values:
        raise ValueError("values do not form a reduced cochain (not in the image of the reduction)")
    return basic


def reduced_differential(c: Cochain, level: Optional[int] = None) -> Cochain:
    return delta_reduce(differential(lift(c), level))


def homotopy_residual(op, c: Cochain) -> Cochain:
    """(d op + op d) c, computed on the levels where both sides are known."""
    d_c = differential(c)
    left = differential(op(c))
    right = op(d_c)
    lvl = min(left.level, right.level)
    return left.truncate(lvl) + right.truncate(lvl)


# -- random cochains ------------------------------------------------------------------------

def monomials(vars: Sequence[int], degree: int) -> Iterator[Tuple[Tuple[int, int], ...]]:
    """All monomials of exact total ``degree`` in ``vars`` (ascending variable ids)."""
    vars = sorted(vars)
    for combo in combinations_with_replacement(vars, degree):
        counts: Dict[int, int] = {}
        for v in combo:
            counts[v] = counts.get(v, 0) + 1
        yield tuple(sorted(counts.items()))


def random_cochain(
    rng: random.Random,
    q: int,
    algebra: GcN,
    module,
    level: int,
    degree: Optional[int] = None,
    max_degree: int = 2,
    density: float = 0.5,
    coeff_range: int = 3,
) -> Cochain:
    """Small-integer values on canonical tuples, then skew-symmetrized.

    With ``degree`` set the result is homogeneous of that degree; otherwise each
    tuple gets lambda-degrees between 0 and ``max_degree + |t|``.
    """
    vs = value_vars(module, q)
    values = {}
    for t in canonical_tuples(algebra, q, level):
        if degree is None:
            degs = range(0, max_degree + level_of(t) + 1)
        else:
            k = degree + level_of(t)
            degs = [k] if k >= 0 else []
        comps = []
        for _ in range(module.rank):
            terms = {}
            for k in degs:
                for m in monomials(vs, k):
                    if rng.random() < density:
                        c = rng.randint(-coeff_range, coeff_range)
                        if c:
                            terms[m] = c
            comps.append(Poly(terms))
        values[t] = tuple(comps)
    return Cochain(q, algebra, module, level, values)


def random_leibniz_cochain(rng, q, algebra, module, level, max_degree=1, density=0.5) -> Cochain:
    vs = value_vars(module, q)
    values = {}
    for t in ordered_tuples(algebra, q, level):
        comps = []
        for _ in range(module.rank):
            terms = {}
            for k in range(0, max_degree + level_of(t) + 1):
                for m in monomials(vs, k):
                    if rng.random() < density:
                        c = rng.randint(-3, 3)
                        if c:
                            terms[m] = c
            comps.append(Poly(terms))
        values[t] = tuple(comps)
    return Cochain(q, algebra, module, level, values, leibniz=True)


# -- text format -------------------------------------------------------------------------------

class CochainParseError(ValueError):
    def __init__(self, msg: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        super().__init__("line %d, column %d: %s" % (line, column, msg))


def format_cochain(c: Cochain) -> str:
    flags = []
    if c.reduced:
        flags.append("reduced")
    if c.leibniz:
        flags.append("leibniz")
    header = " ".join([str(c.q), str(c.algebra.N), c.module.spec, str(c.level)] + flags)
    lines = [header]
    for t in c.support():
        lhs = " ".join(str(g) for g in t)
        rhs = " ; ".join(str(p) for p in c.values[t])
        lines.append(("%s : %s" % (lhs, rhs)) if lhs else (": %s" % rhs))
    return "\n".join(lines) + "\n"


def parse_cochain(text: str) -> Cochain:
    lines = text.splitlines()
    body = [(i + 1, ln) for i, ln in enumerate(lines) if ln.strip() and not ln.lstrip().startswith("#")]
    if not body:
        raise CochainParseError("empty cochain file", 1)
    lineno, header = body[0]
    parts = header.split()
    if len(parts) < 4:
        raise CochainParseError("header must be 'q N module levelbound [reduced|leibniz]'", lineno)
    try:
        q, N, level = int(parts[0]), int(parts[1]), int(parts[3])
        module = parse_module(parts[2])
    except ValueError as exc:
        raise CochainParseError(str(exc), lineno) from None
    flags = set(parts[4:])
    unknown = flags - {"reduced", "leibniz"}
    if unknown:
        raise CochainParseError("unknown flag %s" % sorted(unknown)[0], lineno)
    alg = GcN(N)
    values = {}
    for lineno, ln in body[1:]:
        if ":" not in ln:
            raise CochainParseError("expected 'tuple : value'", lineno, len(ln) + 1)
        colon = ln.index(":")
        lhs, rhs = ln[:colon], ln[colon + 1:]
        try:
            t = tuple(parse_generator(tok) for tok in lhs.split())
        except ValueError as exc:
            raise CochainParseError(str(exc), lineno, 1) from None
        if len(t) != q:
            raise CochainParseError("tuple has %d entries, expected %d" % (len(t), q), lineno, 1)
        for g in t:
            try:
                alg.check(g)
            except ValueError as exc:
                raise CochainParseError(str(exc), lineno, 1) from None
        comps = []
        offset = colon + 1
        for chunk in rhs.split(";"):
            try:
                comps.append(parse_poly(chunk, lineno))
            except ValueError as exc:
                col = getattr(exc, "column", 1) + offset
                raise CochainParseError(str(exc).split(" at line")[0], lineno, col) from None
            offset += len(chunk) + 1
        if len(comps) != module.rank:
            raise CochainParseError("expected %d value components" % module.rank, lineno, colon + 2)
        if "reduced" in flags and reduce_value(module, q, tuple(comps)) != tuple(comps):
            raise CochainParseError("reduced value depends on an eliminated variable", lineno, colon + 2)
        values[t] = tuple(comps)
    return Cochain(
        q, alg, module, level, values,
        reduced="reduced" in flags, leibniz="leibniz" in flags, symmetrize=False,
    )
