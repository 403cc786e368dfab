"""Exact multivariate polynomials over the rationals.

Variables are small integers:

* ``k >= 1``  -- the cochain variable lambda_k, printed ``l<k>``
* ``LAM``     -- the auxiliary bracket variable lambda, printed ``l``
* ``MU``      -- the second auxiliary variable mu, printed ``mu``
* ``D``       -- the translation operator (partial), printed ``d``

The integer encoding doubles as the variable order used for printing, so
``l1 < l2 < ... < l < mu < d``.

A monomial is a tuple of ``(var, exponent)`` pairs sorted by variable.
Coefficients are ``int`` or ``fractions.Fraction``; zero coefficients are
never stored.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, Mapping, Tuple, Union

LAM = 1_000_001
MU = 1_000_002
D = 1_000_003

Monomial = Tuple[Tuple[int, int], ...]
Scalar = Union[int, Fraction]

ONE_MONO: Monomial = ()


def var_name(v: int) -> str:
    if v == LAM:
        return "l"
    if v == MU:
        return "mu"
    if v == D:
        return "d"
    if v >= 1:
        return "l%d" % v
    raise ValueError("invalid variable id %r" % v)


def _norm(c: Scalar) -> Scalar:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    if i < la:
        out.extend(a[i:])
    if j < lb:
        out.extend(b[j:])
    return tuple(out)


def mono_degree(m: Monomial, vars: Iterable[int] | None = None) -> int:
    if vars is None:
        return sum(e for _, e in m)
    vs = set(vars)
    return sum(e for v, e in m if v in vs)


def binomial(m: int, s: int) -> int:
    """Generalized binomial coefficient m(m-1)...(m-s+1)/s!, zero for s < 0."""
    if s < 0:
        return 0
    num = 1
    for i in range(s):
        num *= m - i
    return num // factorial(s)


class Poly:
    """Immutable polynomial with exact rational coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        if terms is None:
            self.terms: Dict[Monomial, Scalar] = {}
        else:
            self.terms = {m: _norm(c) for m, c in terms.items() if c != 0}
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Scalar]) -> "Poly":
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        c = _norm(c)
        return cls._raw({ONE_MONO: c} if c != 0 else {})

    @classmethod
    def var(cls, v: int, exp: int = 1) -> "Poly":
        if exp == 0:
            return cls._raw({ONE_MONO: 1})
        return cls._raw({((v, exp),): 1})

    @classmethod
    def coerce(cls, x) -> "Poly":
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        raise TypeError("cannot coerce %r to Poly" % (x,))

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def degree(self, vars: Iterable[int] | None = None) -> int:
        """Total degree (in ``vars`` if given); -1 for the zero polynomial."""
        if not self.terms:
            return -1
        vs = None if vars is None else list(vars)
        return max(mono_degree(m, vs) for m in self.terms)

    def constant_term(self) -> Scalar:
        return self.terms.get(ONE_MONO, 0)

    def is_constant(self) -> bool:
        return all(m == ONE_MONO for m in self.terms)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other) -> "Poly":
        other = Poly.coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = _norm(s)
            else:
                out.pop(m, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-Poly.coerce(other))

    def __rsub__(self, other) -> "Poly":
        return Poly.coerce(other) + (-self)

    def scale(self, c: Scalar) -> "Poly":
        if c == 0:
            return ZERO
        if c == 1:
            return self
        return Poly._raw({m: _norm(v * c) for m, v in self.terms.items()})

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.terms or not other.terms:
            return ZERO
        out: Dict[Monomial, Scalar] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = mono_mul(ma, mb)
                s = out.get(m, 0) + ca * cb
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Poly._raw({m: _norm(c) for m, c in out.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- substitution and extraction ----------------------------------------

    def subs(self, mapping: Mapping[int, "Poly"]) -> "Poly":
        """Simultaneously replace each variable in ``mapping`` by a polynomial."""
        if not mapping or not self.terms:
            return self
        powers: Dict[Tuple[int, int], Poly] = {}
        out: Dict[Monomial, Scalar] = {}
        for m, c in self.terms.items():
            keep: list = []
            factor = None
            for v, e in m:
                img = mapping.get(v)
                if img is None:
                    keep.append((v, e))
                    continue
                key = (v, e)
                pw = powers.get(key)
                if pw is None:
                    pw = Poly.coerce(img) ** e
                    powers[key] = pw
                factor = pw if factor is None else factor * pw
            kept = tuple(keep)
            if factor is None:
                s = out.get(kept, 0) + c
                if s:
                    out[kept] = s
                else:
                    del out[kept]
                continue
            for fm, fc in factor.terms.items():
                mm = mono_mul(kept, fm)
                s = out.get(mm, 0) + c * fc
                if s:
                    out[mm] = s
                else:
                    del out[mm]
        return Poly._raw({m: _norm(c) for m, c in out.items()})

    def coeff(self, v: int, k: int) -> "Poly":
        """Coefficient polynomial of ``v**k``."""
        out: Dict[Monomial, Scalar] = {}
        for m, c in self.terms.items():
            e = 0
            rest = []
            for w, ew in m:
                if w == v:
                    e = ew
                else:
                    rest.append((w, ew))
            if e == k:
                out[tuple(rest)] = c
        return Poly._raw(out)

    def homogeneous_component(self, degree: int, vars: Iterable[int]) -> "Poly":
        vs = list(vars)
        return Poly._raw({m: c for m, c in self.terms.items() if mono_degree(m, vs) == degree})

    def degrees_in(self, vars: Iterable[int]) -> set:
        vs = list(vars)
        return {mono_degree(m, vs) for m in self.terms}

    def divide_linear(self, divisor: "Poly", v: int) -> Tuple["Poly", "Poly"]:
        """Divide by ``divisor`` which is linear in ``v`` with constant leading coefficient.

        Returns ``(quotient, remainder)`` with remainder free of ``v``.
        """
        lead = divisor.coeff(v, 1)
        if not lead.is_constant() or lead.is_zero() or divisor.degree([v]) != 1:
            raise ValueError("divisor must be linear in the elimination variable")
        lc = lead.constant_term()
        quotient = ZERO
        rem = self
        while True:
            deg = rem.degree([v])
            if deg <= 0:
                return quotient, rem
            top = rem.coeff(v, deg) * Poly.var(v, deg - 1)
            step = top.scale(Fraction(1) / lc)
            quotient = quotient + step
            rem = rem - step * divisor

    # -- printing --------------------------------------------------------------

    def sorted_terms(self):
        """Terms in graded-lexicographic order (highest degree first)."""
        allvars = sorted(self.variables())

        def key(item):
            m, _ = item
            ex = dict(m)
            return (-mono_degree(m), tuple(-ex.get(v, 0) for v in allvars))

        return sorted(self.terms.items(), key=key)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for idx, (m, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            a = -c if neg else c
            factors = [var_name(v) + ("^%d" % e if e != 1 else "") for v, e in m]
            if not factors:
                body = _scalar_str(a)
            elif a == 1:
                body = "*".join(factors)
            else:
                cs = _scalar_str(a)
                if isinstance(a, Fraction):
                    cs = "(%s)" % cs
                body = "*".join([cs] + factors)
            if idx == 0:
                parts.append("-" + body if neg else body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return "Poly(%s)" % self


def _scalar_str(a: Scalar) -> str:
    if isinstance(a, Fraction):
        return "%d/%d" % (a.numerator, a.denominator)
    return str(a)


ZERO = Poly._raw({})
ONE = Poly._raw({ONE_MONO: 1})


def lam(i: int) -> Poly:
    if i < 1:
        raise ValueError("lambda index must be >= 1")
    return Poly.var(i)


def lam_sum(indices: Iterable[int]) -> Poly:
    return Poly._raw({((i, 1),): 1 for i in indices})


def substitute_linear(p: Poly, v: int, form: Poly) -> Poly:
    if form.degree() > 1:
        raise ValueError("substitution form must have degree <= 1")
    return p.subs({v: form})


def d_dlambda_at_zero(p: Poly, v: int) -> Poly:
    return p.coeff(v, 1)


def homogeneous_component(p: Poly, degree: int, vars: Iterable[int]) -> Poly:
    return p.homogeneous_component(degree, vars)


def rational(s: str) -> Fraction:
    return Fraction(s)


# -- parsing -------------------------------------------------------------------

class PolyParseError(ValueError):
    def __init__(self, msg: str, text: str, pos: int, line: int = 1):
        self.pos = pos
        self.line = line
        self.column = pos + 1
        super().__init__("%s at line %d, column %d: %r" % (msg, line, self.column, text))


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|(l\d+|mu|l|d)|([-+*^()]))")


def _tokenize(text: str, line: int):
    pos = 0
    toks = []
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        mt = _TOKEN.match(text, pos)
        if not mt:
            bad = len(text) - len(text[pos:].lstrip())
            raise PolyParseError("unexpected character", text, bad, line)
        start = mt.start(mt.lastindex)
        if mt.group(1):
            toks.append(("num", mt.group(1), start))
        elif mt.group(2):
            toks.append(("var", mt.group(2), start))
        else:
            toks.append(("op", mt.group(3), start))
        pos = mt.end()
    toks.append(("end", "", len(text)))
    return toks


def _var_id(name: str) -> int:
    if name == "l":
        return LAM
    if name == "mu":
        return MU
    if name == "d":
        return D
    idx = int(name[1:])
    if idx < 1:
        raise ValueError("lambda index must be >= 1")
    return idx


def parse_poly(text: str, line: int = 1) -> Poly:
    """Parse the text grammar printed by ``str(Poly)``."""
    toks = _tokenize(text, line)
    pos = 0

    def peek():
        return toks[pos]

    def take():
        nonlocal pos
        t = toks[pos]
        pos += 1
        return t

    def expr() -> Poly:
        sign = 1
        if peek() == ("op", "-", peek()[2]):
            take()
            sign = -1
        elif peek()[:2] == ("op", "+"):
            take()
        acc = term().scale(sign)
        while peek()[0] == "op" and peek()[1] in "+-":
            op = take()[1]
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term() -> Poly:
        acc = power()
        while peek()[:2] == ("op", "*"):
            take()
            acc = acc * power()
        return acc

    def power() -> Poly:
        base = atom()
        if peek()[:2] == ("op", "^"):
            take()
            t = take()
            if t[0] != "num" or "/" in t[1]:
                raise PolyParseError("expected integer exponent", text, t[2], line)
            base = base ** int(t[1])
        return base

    def atom() -> Poly:
        t = take()
        if t[0] == "num":
            try:
                return Poly.const(Fraction(t[1]))
            except ZeroDivisionError:
                raise PolyParseError("zero denominator", text, t[2], line) from None
        if t[0] == "var":
            try:
                return Poly.var(_var_id(t[1]))
            except ValueError as exc:
                raise PolyParseError(str(exc), text, t[2], line) from None
        if t[:2] == ("op", "("):
            inner = expr()
            close = take()
            if close[:2] != ("op", ")"):
                raise PolyParseError("expected ')'", text, close[2], line)
            return inner
        if t[:2] == ("op", "-"):
            return -atom()
        raise PolyParseError("unexpected token %r" % (t[1] or "end of input"), text, t[2], line)

    result = expr()
    if peek()[0] != "end":
        raise PolyParseError("trailing input", text, peek()[2], line)
    return result
