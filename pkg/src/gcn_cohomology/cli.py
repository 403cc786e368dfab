"""Command line entry point: ``gcn-cohomology <command> [options]``.

Commands: axioms, cohomology, verify, properties, export.  Every run is
deterministic for fixed options (including ``--seed``), and the exit status is
0 exactly when every check in the run passed.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict
from typing import List, Optional

from .algebra import (
    AlgebraElement,
    GcN,
    check_jacobi,
    check_skew_symmetry,
    check_zero_bracket_central,
    bracket,
    generator_pairs,
    generator_triples,
)
from .cochains import (
    CochainParseError,
    as_leibniz,
    delta_reduce,
    differential,
    format_cochain,
    from_leibniz,
    homotopy_residual,
    is_skew_symmetric,
    leibniz_differential,
    parse_cochain,
    partial_on_cochain,
    random_cochain,
    random_leibniz_cochain,
    reduced_differential,
    tau0,
    tau1,
    tau2,
    tau_twisted,
    weight_of,
)
from .engine import (
    BUILTINS,
    builtin_cocycle,
    cohomology_dim,
    find_primitive,
    gamma_bar,
    verify_cocycle,
)
from .modules import FreeRankN, Trivial, TwistedScalar, check_module_axioms, parse_module
from .poly import Poly, lam_sum

THREADS_ENV = "GCN_THREADS"


class Report:
    """Ordered list of named checks."""

    def __init__(self, command: str, config: dict):
        self.command = command
        self.config = config
        self.checks: List[dict] = []
        self.extra: dict = {}

    def add(self, tag: str, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append({"tag": tag, "check": name, "pass": bool(ok), "detail": detail})

    @property
    def ok(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            doc = {"command": self.command, "config": self.config, "checks": self.checks, "pass": self.ok}
            doc.update(self.extra)
            return json.dumps(doc, indent=2, sort_keys=True)
        lines = ["%s  %s" % (self.command, " ".join("%s=%s" % kv for kv in sorted(self.config.items())))]
        width = max([len(c["check"]) for c in self.checks] + [10])
        for c in self.checks:
            line = "[%-18s] %-*s  %s" % (c["tag"], width, c["check"], "PASS" if c["pass"] else "FAIL")
            if c["detail"]:
                line += "  " + c["detail"]
            lines.append(line)
        lines.append("overall: %s" % ("PASS" if self.ok else "FAIL"))
        return "\n".join(lines)


def _q_range(text: str) -> List[int]:
    if ".." in text:
        a, b = text.split("..", 1)
        lo, hi = int(a), int(b)
    else:
        lo = hi = int(text)
    if lo < 0 or hi < lo:
        raise argparse.ArgumentTypeError("bad q range %r" % text)
    return list(range(lo, hi + 1))


def _module(text: str):
    try:
        return parse_module(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _residual_text(res, limit: int = 3) -> str:
    shown = ["%s -> %s" % (args, r) for args, r in res[:limit]]
    more = "" if len(res) <= limit else " (+%d more)" % (len(res) - limit)
    return "; ".join(shown) + more


# -- axioms ------------------------------------------------------------------------------------

def cmd_axioms(args) -> Report:
    alg = GcN(args.N, extended=args.extended, corrupt=args.corrupt)
    rep = Report("axioms", {"N": args.N, "level": args.level, "extended": args.extended, "corrupt": args.corrupt})
    skew = [((a, b), r) for a, b in generator_pairs(alg, args.level) if (r := check_skew_symmetry(alg, a, b))]
    rep.add("skew-symmetry", "skew-symmetry of the lambda-bracket", not skew,
            "%d pairs" % sum(1 for _ in generator_pairs(alg, args.level)) if not skew else _residual_text(skew))
    jac = [((a, b, c), r) for a, b, c in generator_triples(alg, args.level) if (r := check_jacobi(alg, a, b, c))]
    rep.add("jacobi", "Jacobi identity", not jac,
            "%d triples" % sum(1 for _ in generator_triples(alg, args.level)) if not jac else _residual_text(jac))
    cen = [(a, r) for a in alg.generators(args.level) if (r := check_zero_bracket_central(alg, a))]
    rep.add("zero-bracket", "J^0_I central for the 0-bracket", not cen, _residual_text(cen) if cen else "")
    if args.extended:
        c = AlgebraElement.central_unit()
        bad = [g for g in alg.generators(args.level)
               if bracket(alg, c, AlgebraElement.gen(g)) or bracket(alg, AlgebraElement.gen(g), c)]
        rep.add("central", "[C_lam a] = 0", not bad, ", ".join(map(str, bad[:3])))
    modules = [args.module] if args.module is not None else [Trivial(), TwistedScalar(1), FreeRankN(args.N, 0)]
    for mod in modules:
        fails = check_module_axioms(mod, alg, min(args.level, 3))
        rep.add("module", "module axioms for %s" % mod.spec, not fails,
                _residual_text([((k, a), r) for k, a, r in fails]) if fails else "")
    return rep


# -- cohomology --------------------------------------------------------------------------------

def _one_dim(job):
    q, N, level, margin, module, reduced, degrees, window = job
    r = cohomology_dim(q, N, level, margin, module, reduced, degrees, window)
    return asdict(r)


def cmd_cohomology(args) -> Report:
    module = args.module or Trivial()
    degrees = args.degrees
    jobs = [(q, args.N, args.level, args.margin, module, args.reduced, degrees, args.window) for q in args.q]
    n = _threads()
    if n > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=n) as pool:
            rows = list(pool.map(_one_dim, jobs))
    else:
        rows = [_one_dim(j) for j in jobs]
    rep = Report("cohomology", {"N": args.N, "level": args.level, "margin": args.margin,
                                "module": module.spec, "reduced": args.reduced})
    rep.extra["reports"] = rows
    for r in rows:
        rep.add("dim-H", "q=%d" % r["q"], r["dim_H"] >= 0,
                "dim_H=%d (kernel %d, image %d, stable %s)"
                % (r["dim_H"], r["dim_kernel"], r["dim_image"], "yes" if r["stabilized"] else "no"))
    return rep


# -- verify ------------------------------------------------------------------------------------

def _load(args):
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            return parse_cochain(fh.read()), os.path.basename(args.file)
    return builtin_cocycle(args.builtin, args.N, args.level, args.margin), args.builtin


def cmd_verify(args) -> Report:
    if not args.builtin and not args.file:
        raise SystemExit("verify needs --builtin or --file")
    c, label = _load(args)
    rep = Report("verify", {"source": label, "N": c.algebra.N, "level": c.level})
    if c.leibniz:
        dl = leibniz_differential(c, c.level)
        rep.add("leibniz", "d_L^2 = 0", leibniz_differential(dl, c.level).is_zero())
        skew = is_skew_symmetric(dl)
        rep.add("leibniz", "d_L c is skew-symmetric", skew)
        if c.algebra.N == 1:
            gb = as_leibniz(gamma_bar(c.level))
            rep.add("leibniz", "d_L c equals gamma-bar", dl == gb,
                    "" if dl == gb else "on canonical tuples: %s" % _compare_canonical(dl, gamma_bar(c.level)))
        return rep
    res = verify_cocycle(c, args.condition_level)
    lvl = c.level if args.condition_level is None else args.condition_level
    rep.add("cocycle", "d c = 0 up to level %d" % lvl, not res,
            "" if not res else "%d nonzero: %s" % (len(res), _residual_text([(" ".join(map(str, t)), v[0] if len(v) == 1 else v) for t, v in res])))
    prim = find_primitive(c)
    if prim.feasible:
        status = "found"
        check = not verify_cocycle_diff(c, prim.primitive)
        rep.add("primitive", "primitive found and d(phi) = c", check)
    else:
        status = "infeasible"
        rep.add("primitive", "infeasibility certificate valid", prim.certificate_valid,
                "certificate entries %d" % len(prim.certificate or {}))
    rep.extra["cocycle"] = not res
    rep.extra["primitive"] = status
    if prim.certificate:
        rep.extra["certificate"] = prim.certificate_json()
    rep.checks.append({"tag": "class", "check": "class status", "pass": True,
                       "detail": "coboundary" if prim.feasible else "nontrivial-at-truncation"})
    return rep


def verify_cocycle_diff(c, phi) -> bool:
    d = reduced_differential(phi, c.level) if c.reduced else differential(phi, c.level)
    return not (d - c).is_zero()


def _compare_canonical(dl, gb) -> str:
    sym = from_leibniz(dl)
    bad = [t for t in sorted(set(sym.values) | set(gb.values)) if sym.values.get(t) != gb.values.get(t)]
    return "differs on %s" % ", ".join(" ".join(str(g.n) for g in t) for t in bad[:4]) if bad else "agree"


# -- properties --------------------------------------------------------------------------------

def cmd_properties(args) -> Report:
    rng = random.Random(args.seed)
    module = args.module or Trivial()
    N = module.N if isinstance(module, FreeRankN) else args.N
    alg = GcN(N)
    L = args.level
    count = args.count
    rep = Report("properties", {"N": N, "level": L, "module": module.spec, "seed": args.seed, "count": count})

    def cochains(q, **kw):
        return [random_cochain(rng, q, alg, module, L, **kw) for _ in range(count)]

    d2 = all(differential(differential(c)).is_zero() for q in (0, 1, 2) for c in cochains(q, max_degree=1))
    rep.add("d-squared", "d^2 = 0", d2)
    dl2 = all(leibniz_differential(leibniz_differential(random_leibniz_cochain(rng, q, alg, module, min(L, 2)))).is_zero()
              for q in (0, 1) for _ in range(count))
    rep.add("d-squared", "d_L^2 = 0", dl2)
    dd = all(differential(partial_on_cochain(c)) == partial_on_cochain(differential(c))
             for q in (0, 1, 2) for c in cochains(q, max_degree=1))
    rep.add("d-action", "d commutes with the d-action", dd)
    dl_ok = all(leibniz_differential(as_leibniz(c)) == as_leibniz(differential(c)) for c in cochains(2, max_degree=1))
    rep.add("leibniz", "d_L agrees with d on skew cochains", dl_ok)
    kill = all(delta_reduce(partial_on_cochain(c)).is_zero() for c in cochains(2, max_degree=1))
    rep.add("reduction", "reduction kills the d-action image", kill)
    comm = all(reduced_differential(delta_reduce(c)) == delta_reduce(differential(c))
               for q in (1, 2) for c in cochains(q, max_degree=1))
    rep.add("reduction", "reduction commutes with d", comm)

    if isinstance(module, Trivial):
        ok = True
        for p in (-2, -1, 0, 1, 2):
            for c in cochains(2, degree=p):
                r = homotopy_residual(tau1, c)
                ok = ok and r == c.truncate(r.level).scale(p)
        rep.add("homotopy-tau1", "(d tau1 + tau1 d) c = p c", ok)
        if N >= 2:
            ok = True
            for c in cochains(2, max_degree=0):
                r = homotopy_residual(tau2, c)
                want = c.like({t: tuple(x.scale(weight_of(t)) for x in v) for t, v in c.values.items()})
                ok = ok and r == want.truncate(r.level)
            rep.add("homotopy-tau2", "(d tau2 + tau2 d) c = weight * c", ok)
    if isinstance(module, TwistedScalar):
        ok = True
        for q in (1, 2):
            s = lam_sum(range(1, q + 1)) + Poly.const(module.a)
            for c in cochains(q, max_degree=1):
                r = homotopy_residual(tau_twisted, c)
                for t, v in (r + c.truncate(r.level).scale(module.a)).values.items():
                    ok = ok and v[0].divide_linear(s, q)[1].is_zero()
        rep.add("homotopy-twisted", "(d tau + tau d) c = -a c mod (a + sum lam)", ok)
    if isinstance(module, FreeRankN):
        ok = True
        for q in (1, 2):
            for c in cochains(q, max_degree=1):
                rc = delta_reduce(c)
                r = homotopy_residual(tau0, rc)
                ok = ok and r == rc.truncate(r.level).scale(module.j0_scale)
        rep.add("homotopy-tau0", "(d tau0 + tau0 d) c = c on reduced cochains", ok)
    return rep


# -- export ------------------------------------------------------------------------------------

def cmd_export(args) -> str:
    if args.random_coboundary is not None:
        if args.random_coboundary < 1:
            raise ValueError("a coboundary has degree >= 1")
        rng = random.Random(args.seed)
        module = args.module or Trivial()
        phi = random_cochain(rng, args.random_coboundary - 1, GcN(args.N), module, args.level, max_degree=1)
        c = differential(phi)
        if args.reduced:
            c = delta_reduce(c)
        return format_cochain(c)
    if not args.builtin:
        raise SystemExit("export needs --builtin or --random-coboundary")
    return format_cochain(builtin_cocycle(args.builtin, args.N, args.level, args.margin))


# -- parser ------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gcn-cohomology", description="Lambda-bracket cochain complexes of gc_N.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, level=3):
        p.add_argument("--N", type=int, default=1)
        p.add_argument("--level", type=int, default=level)
        p.add_argument("--margin", type=int, default=1)
        p.add_argument("--module", type=_module, default=None, help="trivial | twisted:a | natural:N:alpha")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("json", "text"), default="text")

    p = sub.add_parser("axioms", help="bracket, central extension and module axioms")
    common(p, level=4)
    p.add_argument("--extended", action="store_true", help="use the central extension")
    p.add_argument("--corrupt", action="store_true", help="perturb one structure constant (negative control)")

    p = sub.add_parser("cohomology", help="truncated cohomology dimensions")
    common(p)
    p.add_argument("--q", type=_q_range, default=[0, 1, 2], help="degree or range a..b")
    p.add_argument("--reduced", action="store_true")
    p.add_argument("--degrees", type=lambda s: [int(x) for x in s.split(",")], default=None,
                   help="comma-separated homogeneous components to add up")
    p.add_argument("--window", type=int, default=None, help="degree window for filtered complexes")

    p = sub.add_parser("verify", help="check a cocycle and search for a primitive")
    common(p)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--builtin", choices=BUILTINS)
    src.add_argument("--file")
    p.add_argument("--reduced", action="store_true", help="accepted for symmetry; reduced files say so in their header")
    p.add_argument("--condition-level", type=int, default=None)

    p = sub.add_parser("properties", help="seeded randomized identity checks")
    common(p, level=2)
    p.add_argument("--count", type=int, default=3, help="random cochains per check")

    p = sub.add_parser("export", help="write a cochain file")
    common(p)
    p.add_argument("--builtin", choices=BUILTINS)
    p.add_argument("--random-coboundary", type=int, default=None, metavar="Q",
                   help="write d of a seeded random (Q-1)-cochain, a Q-coboundary")
    p.add_argument("--reduced", action="store_true")
    p.add_argument("--out", default=None)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "export":
            text = cmd_export(args)
            if args.out:
                with open(args.out, "w", encoding="utf-8") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return 0
        handler = {"axioms": cmd_axioms, "cohomology": cmd_cohomology,
                   "verify": cmd_verify, "properties": cmd_properties}[args.command]
        rep = handler(args)
    except CochainParseError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    print(rep.render(args.format))
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
