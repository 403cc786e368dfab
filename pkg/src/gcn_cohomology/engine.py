"""Truncated cohomology computations and cocycle utilities.

A truncation keeps the q-cochains supported on tuples of level <= L.  The
differential of such a cochain (extended by zero above L) is examined on
(q+1)-tuples of level <= L + margin:

* cocycles are the cochains whose differential vanishes up to L + margin;
* coboundaries are differentials of level-<=L (q-1)-cochains, kept only when
  they are cocycles in the same sense.

Both spaces are computed in the raw coordinates of stored values (tuple,
component, monomial), where the differential is an honest linear map.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import Gen, GcN
from .cochains import (
    Cochain,
    Tuple_,
    apply_term,
    canonical_tuples,
    canonicalize,
    degree_component,
    degrees_present,
    differential,
    differential_terms,
    lift,
    monomials,
    reduction_map,
    symmetrize_value,
    tau1,
    tau2,
    level_of,
    value_vars,
    weight_of,
)
from .linalg import Echelon, SparseRationalMatrix, check_certificate, solve
from .modules import FreeRankN, Trivial, TwistedScalar, has_action
from .poly import ONE, ZERO, Poly

# a raw coordinate: (tuple, component, monomial)
Coord = Tuple[Tuple_, int, tuple]


class Indexer:
    def __init__(self):
        self.index: Dict[object, int] = {}
        self.keys: List[object] = []

    def __call__(self, key) -> int:
        i = self.index.get(key)
        if i is None:
            i = len(self.keys)
            self.index[key] = i
            self.keys.append(key)
        return i

    def __len__(self) -> int:
        return len(self.keys)


def cochain_coords(c: Cochain) -> Dict[Coord, Fraction]:
    out = {}
    for t, v in c.values.items():
        for i, p in enumerate(v):
            for m, x in p.terms.items():
                out[(t, i, m)] = Fraction(x)
    return out


def coords_to_cochain(coords: Dict[Coord, Fraction], q, algebra, module, level, reduced=False) -> Cochain:
    vals: Dict[Tuple_, list] = {}
    for (t, i, m), x in coords.items():
        if not x:
            continue
        comps = vals.setdefault(t, [dict() for _ in range(module.rank)])
        comps[i][m] = comps[i].get(m, 0) + x
    values = {t: tuple(Poly(c) for c in comps) for t, comps in vals.items()}
    return Cochain(q, algebra, module, level, values, reduced=reduced, symmetrize=False)


# -- truncation ---------------------------------------------------------------------

@dataclass(frozen=True)
class TruncationSpec:
    """Which finite piece of the complex to look at.

    ``degree`` selects the homogeneous component p (value degree p + level on
    each tuple); with ``degree=None`` every tuple gets all degrees up to
    ``window + level``.
    """

    N: int
    level: int
    margin: int = 1
    module: object = Trivial()
    reduced: bool = False
    degree: Optional[int] = None
    window: int = 1
    extended: bool = False
    corrupt: bool = False

    @property
    def algebra(self) -> GcN:
        return GcN(self.N, self.extended, self.corrupt)

    def degrees(self, t: Tuple_) -> List[int]:
        base = level_of(t)
        if self.degree is not None:
            k = self.degree + base
            return [k] if k >= 0 else []
        return list(range(0, self.window + base + 1))


def default_degrees(module, reduced: bool, level: int) -> Tuple[Optional[List[int]], int]:
    """Homogeneous components to scan, or a window for filtered cases.

    Returns ``(degrees, window)``; ``degrees`` is None when the complex is only
    filtered by degree and a single window computation is used instead.
    """
    if isinstance(module, Trivial) or (isinstance(module, TwistedScalar) and not reduced):
        if reduced:
            # reduced cochains of level n can sit as low as p = -n; psi' sits at p = 1
            return list(range(-level, 3)), 0
        return [0], 0
    if isinstance(module, FreeRankN) and module.alpha == 0 and module.j0_scale == 1:
        return list(range(-level, 2)), 0
    return None, 1


class _Complex:
    """Raw-coordinate differentials for one truncation, cached by degree."""

    def __init__(self, spec: TruncationSpec):
        self.spec = spec
        self.alg = spec.algebra
        self.mod = spec.module
        self.acting = has_action(self.mod)
        self._sources: Dict[Tuple[int, int], Dict[Tuple_, list]] = {}
        self._dcache: Dict[Tuple[int, Coord], Dict[Coord, Fraction]] = {}

    def basis(self, q: int) -> List[Dict[Coord, Fraction]]:
        """Skew-symmetric basis cochains of degree q, as raw coordinate vectors."""
        spec = self.spec
        vs = value_vars(self.mod, q)
        out = []
        for t in canonical_tuples(self.alg, q, spec.level):
            ech = Echelon()
            local = Indexer()
            for k in spec.degrees(t):
                for m in monomials(vs, k):
                    for comp in range(self.mod.rank):
                        v = [ZERO] * self.mod.rank
                        v[comp] = Poly({m: 1})
                        sv = symmetrize_value(t, tuple(v))
                        if not any(sv):
                            continue
                        vec = {}
                        for i, p in enumerate(sv):
                            for mm, x in p.terms.items():
                                vec[(t, i, mm)] = Fraction(x)
                        if ech.insert({local(key): x for key, x in vec.items()}):
                            out.append(vec)
        return out

    def _source_index(self, q: int, max_level: int) -> Dict[Tuple_, list]:
        """For q-cochains: stored tuple u -> [(target, term)] over targets up to max_level."""
        key = (q, max_level)
        if key not in self._sources:
            idx: Dict[Tuple_, list] = {}
            for T in canonical_tuples(self.alg, q + 1, max_level):
                for term in differential_terms(self.alg, self.acting, T, False):
                    u = canonicalize(term.w)[0]
                    idx.setdefault(u, []).append((T, term))
            self._sources[key] = idx
        return self._sources[key]

    def d_coord(self, q: int, coord: Coord, max_level: int) -> Dict[Coord, Fraction]:
        """Differential of a single stored monomial, on targets up to max_level."""
        ck = (q, coord, max_level)
        hit = self._dcache.get(ck)
        if hit is not None:
            return hit
        t, comp, m = coord
        v = [ZERO] * self.mod.rank
        v[comp] = Poly({m: 1})
        single = Cochain(q, self.alg, self.mod, max_level, {t: tuple(v)}, symmetrize=False)
        out: Dict[Coord, Fraction] = {}
        for T, term in self._source_index(q, max_level).get(t, ()):
            val = apply_term(single, term)
            for i, p in enumerate(val):
                for mm, x in p.terms.items():
                    key = (T, i, mm)
                    nv = out.get(key, 0) + x
                    if nv:
                        out[key] = nv
                    else:
                        out.pop(key, None)
        self._dcache[ck] = out
        return out

    def apply_d(self, q: int, vec: Dict[Coord, Fraction], max_level: int) -> Dict[Coord, Fraction]:
        out: Dict[Coord, Fraction] = {}
        for coord, x in vec.items():
            for key, y in self.d_coord(q, coord, max_level).items():
                nv = out.get(key, 0) + x * y
                if nv:
                    out[key] = nv
                else:
                    out.pop(key, None)
        return out

    def reduce(self, q: int, vec: Dict[Coord, Fraction]) -> Dict[Coord, Fraction]:
        if not self.spec.reduced:
            return vec
        mapping = reduction_map(self.mod, q)
        if mapping is None:
            return {}
        out: Dict[Coord, Fraction] = {}
        cache: Dict[tuple, Poly] = {}
        for (t, i, m), x in vec.items():
            img = cache.get(m)
            if img is None:
                img = Poly({m: 1}).subs(mapping)
                cache[m] = img
            for mm, y in img.terms.items():
                key = (t, i, mm)
                nv = out.get(key, 0) + x * y
                if nv:
                    out[key] = nv
                else:
                    out.pop(key, None)
        return out


def _rank(vectors: Iterable[Dict[Coord, Fraction]]) -> int:
    ech = Echelon()
    idx = Indexer()
    for v in vectors:
        ech.insert({idx(k): x for k, x in sorted(v.items(), key=_coord_order)})
    return ech.rank


def _coord_order(item):
    (t, i, m), _ = item
    return (level_of(t), t, i, m)


def _truncate(vec: Dict[Coord, Fraction], level: int) -> Dict[Coord, Fraction]:
    return {k: x for k, x in vec.items() if level_of(k[0]) <= level}


@dataclass
class CohomologyReport:
    q: int
    N: int
    L: int
    margin: int
    module: str
    reduced: bool
    dim_kernel: int
    dim_image: int
    dim_H: int
    stabilized: bool

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=False)


def _dims_one_degree(cx: _Complex, q: int) -> Tuple[int, int]:
    spec = cx.spec
    top = spec.level + spec.margin
    V = cx.basis(q)
    MV = [cx.reduce(q + 1, cx.apply_d(q, v, top)) for v in V]
    if spec.reduced:
        rank_v = _rank(cx.reduce(q, v) for v in V)
    else:
        rank_v = len(V)
    # d only depends on the class modulo the d-action, so this is dim of reduced cocycles
    dim_z = rank_v - _rank(MV)
    if q == 0:
        return dim_z, 0
    W = [_truncate(cx.apply_d(q - 1, w, spec.level), spec.level) for w in cx.basis(q - 1)]
    DW = [cx.reduce(q, w) for w in W]
    MDW = [cx.reduce(q + 1, cx.apply_d(q, w, top)) for w in W]
    dim_b = _rank(DW) - _rank(MDW)
    return dim_z, dim_b


def _plan(module, reduced, level, degrees, window):
    def_degrees, def_window = default_degrees(module, reduced, level)
    if degrees is None and window is None:
        degrees, window = def_degrees, def_window
    if window is None:
        window = def_window
    return ([None] if degrees is None else list(degrees)), window


def cohomology_dim(
    q: int,
    N: int,
    level: int,
    margin: int = 1,
    module=None,
    reduced: bool = False,
    degrees: Optional[Sequence[int]] = None,
    window: Optional[int] = None,
    extended: bool = False,
    check_stable: bool = True,
) -> CohomologyReport:
    """Dimension of the truncated cohomology in degree q.

    ``degrees`` lists homogeneous components to add up; ``window`` switches to
    a single filtered computation instead.  Defaults depend on the module.
    """
    module = Trivial() if module is None else module
    if q < 0 or level < 0 or margin < 0:
        raise ValueError("q, level and margin must be non-negative")
    plan, window = _plan(module, reduced, level, degrees, window)

    def dims_at(L: int) -> Tuple[int, int]:
        zk = zb = 0
        for p in plan:
            spec = TruncationSpec(N, L, margin, module, reduced, p, window, extended)
            k, b = _dims_one_degree(_Complex(spec), q)
            zk += k
            zb += b
        return zk, zb

    k, b = dims_at(level)
    stable = True
    if check_stable and level > 0:
        k0, b0 = dims_at(level - 1)
        stable = (k0 - b0) == (k - b)
    return CohomologyReport(
        q=q, N=N, L=level, margin=margin, module=module.spec, reduced=reduced,
        dim_kernel=k, dim_image=b, dim_H=k - b, stabilized=stable,
    )


def enumerate_basis(q: int, spec: TruncationSpec) -> List[Cochain]:
    """Basis cochains of degree q for one truncation (reduced ones are Delta-images)."""
    cx = _Complex(spec)
    out = []
    if spec.reduced:
        ech, idx = Echelon(), Indexer()
        for v in cx.basis(q):
            r = cx.reduce(q, v)
            if ech.insert({idx(k): x for k, x in sorted(r.items(), key=_coord_order)}):
                out.append(coords_to_cochain(r, q, cx.alg, cx.mod, spec.level, reduced=True))
        return out
    return [coords_to_cochain(v, q, cx.alg, cx.mod, spec.level) for v in cx.basis(q)]


def assemble_differential_matrix(q: int, spec: TruncationSpec):
    """Matrix of d from the degree-q basis into (q+1)-values up to level L + margin.

    Returns ``(matrix, row_keys)``; row keys are raw coordinates.
    """
    cx = _Complex(spec)
    rows = Indexer()
    cols = []
    for v in cx.basis(q):
        img = cx.reduce(q + 1, cx.apply_d(q, v, spec.level + spec.margin))
        cols.append({rows(k): x for k, x in sorted(img.items(), key=_coord_order)})
    return SparseRationalMatrix(max(len(rows), 1), cols), rows.keys


def cohomology_representatives(
    q: int, N: int, level: int, margin: int = 1, module=None, reduced: bool = False,
    degrees: Optional[Sequence[int]] = None, window: Optional[int] = None,
) -> List[Cochain]:
    """Cocycles whose classes span the truncated cohomology in degree q."""
    module = Trivial() if module is None else module
    plan, window = _plan(module, reduced, level, degrees, window)
    reps = []
    for p in plan:
        spec = TruncationSpec(N, level, margin, module, reduced, p, window)
        cx = _Complex(spec)
        top = level + margin
        V = cx.basis(q)
        ech, idx = Echelon(), Indexer()
        for v in V:
            ech.insert({idx(k): x for k, x in sorted(cx.reduce(q + 1, cx.apply_d(q, v, top)).items(), key=_coord_order)})
        cocycles = []
        for kv in ech.kernel:
            vec: Dict[Coord, Fraction] = {}
            for j, x in kv.items():
                for key, y in V[j].items():
                    vec[key] = vec.get(key, 0) + x * y
            cocycles.append(cx.reduce(q, {k: x for k, x in vec.items() if x}))
        span, sidx = Echelon(), Indexer()
        if q > 0:
            W = [_truncate(cx.apply_d(q - 1, w, level), level) for w in cx.basis(q - 1)]
            wech, widx = Echelon(), Indexer()
            for w in W:
                wech.insert({widx(k): x for k, x in sorted(cx.reduce(q + 1, cx.apply_d(q, w, top)).items(), key=_coord_order)})
            for kv in wech.kernel:
                vec = {}
                for j, x in kv.items():
                    for key, y in W[j].items():
                        vec[key] = vec.get(key, 0) + x * y
                span.insert({sidx(k): x for k, x in sorted(cx.reduce(q, vec).items(), key=_coord_order) if x})
        for z in cocycles:
            if span.insert({sidx(k): x for k, x in sorted(z.items(), key=_coord_order)}):
                reps.append(coords_to_cochain(z, q, cx.alg, cx.mod, level, reduced=reduced))
    return reps


# -- cocycles and primitives ---------------------------------------------------------------

def verify_cocycle(c: Cochain, level: Optional[int] = None) -> List[Tuple[Tuple_, tuple]]:
    """Nonzero values of d c on (q+1)-tuples up to ``level`` (default: c.level).

    Above c.level the cochain is read as zero, so residuals there may be
    truncation effects rather than genuine failures.
    """
    lvl = c.level if level is None else level
    dc = differential(c, lvl)
    return [(t, dc.values[t]) for t in dc.support()]


@dataclass
class PrimitiveResult:
    feasible: bool
    primitive: Optional[Cochain] = None
    # infeasible: a combination y of the equations with y^T M = 0 and y . c != 0
    certificate: Optional[Dict[Coord, Fraction]] = None
    certificate_value: Optional[Fraction] = None
    certificate_valid: bool = False
    # coefficients of the extra cocycles when solving d phi + sum c_i z_i = c
    coefficients: Optional[List[Fraction]] = None

    def certificate_json(self) -> List[list]:
        if not self.certificate:
            return []
        rows = []
        for (t, i, m), x in sorted(self.certificate.items(), key=_coord_order):
            mono = "*".join("l%d^%d" % (v, e) for v, e in m) or "1"
            rows.append([" ".join(str(g) for g in t), i, mono, str(x)])
        return rows


def _degree_plan(c: Cochain) -> Tuple[Optional[List[int]], int]:
    degs, _ = default_degrees(c.module, c.reduced, c.level)
    present = degrees_present(c) or [0]
    if degs is not None:
        return sorted(set(present)), 0
    return None, max(0, max(present))


def find_primitive(c: Cochain, degrees: Optional[Sequence[int]] = None,
                   window: Optional[int] = None, modulo: Sequence[Cochain] = ()) -> PrimitiveResult:
    """Solve d phi = c over level-<=L (q-1)-cochains, or certify that no such phi exists.

    The equations are the values of d phi on all q-tuples up to c.level.  With
    ``modulo`` the system becomes d phi + sum_i a_i z_i = c and the a_i are
    returned as ``coefficients``.
    """
    q = c.q
    if q == 0:
        if c.is_zero():
            return PrimitiveResult(True, c)
        coords = cochain_coords(c)
        return PrimitiveResult(False, certificate=coords, certificate_value=sum(x * x for x in coords.values()),
                               certificate_valid=True)
    if degrees is None and window is None:
        degrees, window = _degree_plan(c)
    plan = [None] if degrees is None else list(degrees)
    spec0 = TruncationSpec(c.algebra.N, c.level, 0, c.module, c.reduced, None, window or 0,
                           c.algebra.extended, c.algebra.corrupt)
    rows = Indexer()
    target = {k: x for k, x in cochain_coords(c).items()}
    for k in sorted(target, key=lambda k: (level_of(k[0]), k)):
        rows(k)
    cols, basis = [], []
    for p in plan:
        spec = TruncationSpec(spec0.N, spec0.level, 0, spec0.module, spec0.reduced, p,
                              spec0.window, spec0.extended, spec0.corrupt)
        cx = _Complex(spec)
        for v in cx.basis(q - 1):
            img = cx.reduce(q, _truncate(cx.apply_d(q - 1, v, c.level), c.level))
            cols.append({rows(k): x for k, x in sorted(img.items(), key=_coord_order)})
            basis.append(v)
    n_phi = len(cols)
    for z in modulo:
        if (z.q, z.reduced) != (q, c.reduced):
            raise ValueError("extra cocycles must match the target's degree and kind")
        cols.append({rows(k): x for k, x in sorted(cochain_coords(z.truncate(c.level)).items(), key=_coord_order)})
    M = SparseRationalMatrix(max(len(rows), 1), cols)
    rhs = {rows.index[k]: x for k, x in target.items()}
    res = solve(M, rhs)
    if res.feasible:
        coefficients = [res.solution.get(n_phi + i, Fraction(0)) for i in range(len(modulo))]
        vec: Dict[Coord, Fraction] = {}
        for j, x in res.solution.items():
            if j >= n_phi:
                continue
            for key, y in basis[j].items():
                vec[key] = vec.get(key, 0) + x * y
        vec = {k: x for k, x in vec.items() if x}
        if c.reduced:
            vec = _Complex(spec0).reduce(q - 1, vec)
        phi = coords_to_cochain(vec, q - 1, c.algebra, c.module, c.level, reduced=c.reduced)
        return PrimitiveResult(True, phi, coefficients=coefficients)
    cert = {rows.keys[r]: x for r, x in res.certificate.items()}
    return PrimitiveResult(
        False, certificate=cert, certificate_value=res.certificate_value,
        certificate_valid=check_certificate(M, rhs, res.certificate),
    )


# -- builtin cochains ------------------------------------------------------------------------

def psi_coefficient(m: int, n: int) -> Fraction:
    """(-1)^n m! n! / (m+n+1)!"""
    return Fraction((-1) ** n * factorial(m) * factorial(n), factorial(m + n + 1))


def psi_prime(N: int, level: int) -> Cochain:
    """The reduced 2-cocycle lambda^(m+n+1) (-1)^n m!n!/(m+n+1)! tr(AB) on (J^m_A, J^n_B)."""
    alg = GcN(N)
    values = {}
    for t in canonical_tuples(alg, 2, level):
        a, b = t
        # tr(E_{ja ka} E_{jb kb}) = [ka = jb][ja = kb]
        if a.k == b.j and a.j == b.k:
            values[t] = (Poly.var(1, a.n + b.n + 1).scale(psi_coefficient(a.n, b.n)),)
    return Cochain(2, alg, Trivial(), level, values, reduced=True, symmetrize=False)


def psi_basic(N: int, level: int) -> Cochain:
    """A basic 2-cochain whose reduction is psi' (skew-symmetrized constant lift)."""
    return lift(psi_prime(N, level))


def gamma_bar(level: int) -> Cochain:
    """The 3-cochain of gc_1 with value lambda_2^n - lambda_1^n on (J^0, J^0, J^n), n >= 1."""
    alg = GcN(1)
    j0 = Gen(0, 1, 1)
    values = {
        (j0, j0, Gen(n, 1, 1)): (Poly.var(2, n) - Poly.var(1, n),)
        for n in range(1, level + 1)
    }
    return Cochain(3, alg, Trivial(), level, values)


def leibniz_f(level: int) -> Cochain:
    """Leibniz 2-cochain of gc_1: 1 on (J^0, J^0), zero elsewhere."""
    j0 = Gen(0, 1, 1)
    return Cochain(2, GcN(1), Trivial(), level, {(j0, j0): (ONE,)}, leibniz=True)


def gamma_bar_cocycle(level: int, margin: int = 1) -> Cochain:
    """A degree-0 3-cocycle of gc_1 (up to level + margin) with value lambda_2 - lambda_1 on (J^0, J^0, J^1).

    Found by an exact solve over the degree-0 basis; the result is determined by
    the deterministic pivot order, not by a closed formula.
    """
    spec = TruncationSpec(1, level, margin, Trivial(), False, 0)
    cx = _Complex(spec)
    V = cx.basis(3)
    j0, j1 = Gen(0, 1, 1), Gen(1, 1, 1)
    anchor = (j0, j0, j1)
    rows = Indexer()
    cols = []
    for v in V:
        col = {("d",) + k: x for k, x in cx.apply_d(3, v, level + margin).items()}
        for k, x in v.items():
            if k[0] == anchor:
                col[("a",) + k] = x
        cols.append({rows(k): x for k, x in sorted(col.items(), key=lambda kv: (kv[0][0], _coord_order((kv[0][1:], 0))))})
    rhs_keys = {("a", anchor, 0, ((1, 1),)): Fraction(-1), ("a", anchor, 0, ((2, 1),)): Fraction(1)}
    rhs = {rows(k): x for k, x in rhs_keys.items()}
    res = solve(SparseRationalMatrix(len(rows), cols), rhs)
    if not res.feasible:
        raise ArithmeticError("no degree-0 3-cocycle with the required value at this truncation")
    vec: Dict[Coord, Fraction] = {}
    for j, x in res.solution.items():
        for k, y in V[j].items():
            vec[k] = vec.get(k, 0) + x * y
    return coords_to_cochain({k: x for k, x in vec.items() if x}, 3, GcN(1), Trivial(), level)


BUILTINS = ("psi-prime", "psi-basic", "gamma-bar", "gamma-bar-cocycle", "leibniz-f")


def builtin_cocycle(name: str, N: int = 1, level: int = 3, margin: int = 1) -> Cochain:
    key = name.replace("_", "-").lower()
    if key == "psi-prime":
        return psi_prime(N, level)
    if key == "psi-basic":
        return psi_basic(N, level)
    if N != 1 and key in ("gamma-bar", "gamma-bar-cocycle", "leibniz-f"):
        raise ValueError("%s is defined for gc_1 only" % name)
    if key == "gamma-bar":
        return gamma_bar(level)
    if key == "gamma-bar-cocycle":
        return gamma_bar_cocycle(level, margin)
    if key == "leibniz-f":
        return leibniz_f(level)
    raise ValueError("unknown builtin %r (choose from %s)" % (name, ", ".join(BUILTINS)))


# -- coefficient law ----------------------------------------------------------------------------

def _binom(top: int, bottom: int) -> int:
    return comb(top, bottom) if 0 <= bottom <= top else 0


def recursion_rhs(m: int, n: int) -> int:
    """Right side of the psi' recursion per unit trace: C(m, m+n) - (-1)^(m+n) C(n, m+n).

    Only J^0-components of the bracket survive the lambda-derivative at zero, so
    the binomials are the coefficients of J^0 in [J^m _lam J^n]; they vanish
    unless n = 0 (first term) or m = 0 (second term).
    """
    return _binom(m, m + n) - (-1) ** (m + n) * _binom(n, m + n)


def recursion_residual(m: int, n: int, coeff=psi_coefficient) -> Fraction:
    lhs = Fraction(0)
    if m:
        lhs += m * coeff(m - 1, n)
    if n:
        lhs += n * coeff(m, n - 1)
    return lhs - recursion_rhs(m, n)


def solve_recursion(max_total: int) -> Dict[Tuple[int, int], Fraction]:
    """Solve the recursion exactly, with c_AB = 1.

    The equations with m + n = k pin down every c^(a,b) with a + b = k - 1; an
    inconsistent system raises ArithmeticError.
    """
    sol: Dict[Tuple[int, int], Fraction] = {}
    for k in range(1, max_total + 2):
        unknowns = [(a, k - 1 - a) for a in range(k)]
        idx = {u: i for i, u in enumerate(unknowns)}
        cols: List[Dict[int, Fraction]] = [dict() for _ in unknowns]
        rhs = {}
        for m in range(k + 1):
            n = k - m
            if m:
                cols[idx[(m - 1, n)]][m] = Fraction(m)
            if n:
                col = cols[idx[(m, n - 1)]]
                col[m] = col.get(m, 0) + n
            if recursion_rhs(m, n):
                rhs[m] = Fraction(recursion_rhs(m, n))
        e = Echelon()
        for col in cols:
            e.insert(col)
        if e.rank != len(unknowns):
            raise ArithmeticError("recursion does not determine total %d" % (k - 1))
        res = solve(SparseRationalMatrix(k + 1, cols), rhs)
        if not res.feasible:
            raise ArithmeticError("recursion inconsistent at total %d" % k)
        for u, i in idx.items():
            sol[u] = res.solution.get(i, Fraction(0))
    return sol


# -- gauge fixing ---------------------------------------------------------------------------------

def normalize_degree_zero(c: Cochain) -> Cochain:
    """Subtract d(sum_{p != 0} tau1(c^(p)) / p), leaving a cohomologous degree-0 cocycle.

    tau1 reads one level higher than it writes, so the result is known up to
    c.level - 1.
    """
    if c.reduced or not isinstance(c.module, Trivial):
        raise ValueError("degree normalization needs basic cochains with trivial coefficients")
    if verify_cocycle(c, c.level):
        raise ValueError("input is not a cocycle")
    correction = None
    for p in degrees_present(c):
        if p == 0:
            continue
        term = tau1(degree_component(c, p)).scale(Fraction(1, p))
        correction = term if correction is None else correction + term
    if correction is None:
        return c
    out_level = c.level - 1
    return c.truncate(out_level) - differential(correction, out_level)


def weight_components(c: Cochain) -> Dict[int, Cochain]:
    parts: Dict[int, dict] = {}
    for t, v in c.values.items():
        parts.setdefault(weight_of(t), {})[t] = v
    return {w: c.like(vals) for w, vals in sorted(parts.items())}


def normalize_weight_zero(c: Cochain) -> Cochain:
    """Subtract d(sum_{w != 0} tau2(c_w) / w) so that only balanced tuples carry values."""
    if c.algebra.N < 2:
        raise ValueError("weight normalization needs N >= 2")
    if c.reduced or not isinstance(c.module, Trivial):
        raise ValueError("weight normalization needs basic cochains with trivial coefficients")
    if verify_cocycle(c, c.level):
        raise ValueError("input is not a cocycle")
    correction = None
    for w, part in weight_components(c).items():
        if w == 0:
            continue
        term = tau2(part).scale(Fraction(1, w))
        correction = term if correction is None else correction + term
    if correction is None:
        return c
    return c - differential(correction, c.level)
