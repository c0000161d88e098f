"""Sparse multivariate polynomials over Q with named variables."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, Mapping, Tuple, Union

_KIND_RANK = {"X": 0, "Y": 1, "Z": 2, "aux": 3}


@dataclass(frozen=True)
class Var:
    """A polynomial variable.

    ``kind`` is one of ``X``, ``Y``, ``Z`` or ``aux``.  ``index`` is a tuple of
    ints that fixes the position of the variable inside its kind; ``label`` is
    the printed name and must be unique.
    """

    kind: str
    index: Tuple[int, ...]
    label: str = field(compare=True)

    @property
    def sort_key(self):
        return (_KIND_RANK.get(self.kind, 9), self.index, self.label)

    def __lt__(self, other: "Var") -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        return self.label

    __repr__ = __str__


def aux_var(name: str, index: int = 0) -> Var:
    return Var("aux", (index,), name)


def y_var(indices: Iterable[int]) -> Var:
    idx = tuple(indices)
    return Var("Y", idx, "Y[" + ",".join(str(i) for i in idx) + "]")


Monomial = Tuple[Tuple[Var, int], ...]
Scalar = Union[int, Fraction]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va.sort_key < vb.sort_key:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


class Poly:
    """Immutable polynomial: a map from monomials to nonzero rationals.

    A monomial is a tuple of ``(Var, exponent)`` pairs sorted by variable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = Fraction(c)
        self._terms = clean
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        return cls({(): c})

    @classmethod
    def var(cls, v: Var) -> "Poly":
        return cls({((v, 1),): 1})

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction]) -> "Poly":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @staticmethod
    def coerce(x) -> "Poly":
        if isinstance(x, Poly):
            return x
        if isinstance(x, Var):
            return Poly.var(x)
        if isinstance(x, (int, Fraction)):
            return Poly.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Poly")

    # basic protocol -----------------------------------------------------
    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(m == () for m in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Var)):
            other = Poly.coerce(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # arithmetic ---------------------------------------------------------
    def __add__(self, other) -> "Poly":
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Poly":
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return Poly.coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly()
            return Poly._raw({m: c * other for m, c in self._terms.items()})
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        out: Dict[Monomial, Fraction] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = _mono_mul(ma, mb)
                s = out.get(m, 0) + ca * cb
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative exponent")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # structure ----------------------------------------------------------
    def variables(self) -> Tuple[Var, ...]:
        vs = {v for m in self._terms for v, _ in m}
        return tuple(sorted(vs, key=lambda v: v.sort_key))

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(_mono_degree(m) for m in self._terms)

    def degree_in(self, v: Var) -> int:
        return max((e for m in self._terms for w, e in m if w == v), default=0)

    def is_homogeneous(self) -> bool:
        degs = {_mono_degree(m) for m in self._terms}
        return len(degs) <= 1

    def linear_coefficient(self, v: Var):
        """Return ``(c, rest)`` when ``self == c*v + rest`` with ``c`` a
        nonzero constant and ``v`` absent from ``rest``; otherwise ``None``."""
        c = None
        rest: Dict[Monomial, Fraction] = {}
        for m, coeff in self._terms.items():
            if any(w == v for w, _ in m):
                if m == ((v, 1),):
                    c = coeff
                else:
                    return None
            else:
                rest[m] = coeff
        if c is None:
            return None
        return c, Poly._raw(rest)

    # substitution / evaluation -----------------------------------------
    def subs(self, mapping: Mapping[Var, "Poly | Scalar | Var"]) -> "Poly":
        if not mapping:
            return self
        images = {v: Poly.coerce(p) for v, p in mapping.items()}
        power_cache: Dict[Tuple[Var, int], Poly] = {}
        result: Dict[Monomial, Fraction] = {}
        acc = Poly._raw(result)
        for m, c in self._terms.items():
            kept = []
            factor = Poly.const(c)
            for v, e in m:
                img = images.get(v)
                if img is None:
                    kept.append((v, e))
                    continue
                key = (v, e)
                if key not in power_cache:
                    power_cache[key] = img ** e
                factor = factor * power_cache[key]
            if kept:
                factor = factor * Poly._raw({tuple(kept): Fraction(1)})
            acc = acc + factor
        return acc

    def evaluate(self, values: Mapping[Var, Scalar]) -> Fraction:
        total = Fraction(0)
        for m, c in self._terms.items():
            t = c
            for v, e in m:
                t *= Fraction(values[v]) ** e
            total += t
        return total

    # homogenization -----------------------------------------------------
    def homogenize(self, z: Var) -> "Poly":
        if any(w == z for m in self._terms for w, _ in m):
            raise ValueError(f"homogenizing variable {z} occurs in the polynomial")
        deg = self.total_degree()
        out: Dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            k = deg - _mono_degree(m)
            mm = _mono_mul(m, ((z, k),)) if k else m
            out[mm] = c
        return Poly._raw(out)

    def dehomogenize(self, z: Var) -> "Poly":
        return self.subs({z: Poly.const(1)})

    # normalization ------------------------------------------------------
    def integer_cleared(self) -> "Poly":
        """Scale to integer coefficients with content 1; sign left to caller."""
        if not self._terms:
            return self
        from math import gcd

        den = 1
        for c in self._terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        num = 0
        for c in self._terms.values():
            num = gcd(num, (c * den).numerator)
        scale = Fraction(den, num)
        return self * scale

    def monic(self, key: Callable | None = None) -> "Poly":
        if not self._terms:
            return self
        lm = self.leading_monomial(key)
        return self * (1 / self._terms[lm])

    def leading_monomial(self, key: Callable | None = None) -> Monomial:
        key = key or graded_key
        return max(self._terms, key=key)

    def sorted_terms(self, key: Callable | None = None):
        key = key or graded_key
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def canonical(self) -> "Poly":
        """Integer-cleared with positive leading coefficient (graded lex)."""
        if not self._terms:
            return self
        p = self.integer_cleared()
        if p._terms[p.leading_monomial()] < 0:
            p = -p
        return p

    # printing -----------------------------------------------------------
    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"


class _Desc:
    """Wrap a variable so that earlier variables compare as larger."""

    __slots__ = ("k",)

    def __init__(self, v: Var):
        self.k = v.sort_key

    def __lt__(self, other):
        return self.k > other.k

    def __eq__(self, other):
        return self.k == other.k


def graded_key(m: Monomial):
    """Graded lex key; the first variable in ``sort_key`` order is largest."""
    return (_mono_degree(m), tuple((_Desc(v), e) for v, e in m))


def _fmt_coeff(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_monomial(m: Monomial) -> str:
    parts = []
    for v, e in m:
        parts.append(v.label if e == 1 else f"{v.label}^{e}")
    return "*".join(parts)


def format_poly(p: Poly, key: Callable | None = None) -> str:
    if p.is_zero():
        return "0"
    out = []
    for i, (m, c) in enumerate(p.sorted_terms(key)):
        neg = c < 0
        a = -c if neg else c
        mono = format_monomial(m)
        if mono and a == 1:
            body = mono
        elif mono:
            body = f"{_fmt_coeff(a)}*{mono}"
        else:
            body = _fmt_coeff(a)
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


# parsing ------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>[A-Za-z_][A-Za-z0-9_]*(?:\[[^\]]*\])?)"
    r"|(?P<op>[-+*^()]))"
)


class PolySyntaxError(ValueError):
    pass


def parse_poly(text: str, resolve: Callable[[str], Var] | Mapping[str, Var]) -> Poly:
    """Parse ``text`` such as ``Y[1,2,3,5]*Z^2 - 3/2*X[b*z1;a*z1]``.

    ``resolve`` maps printed variable names to :class:`Var` objects.
    """
    if isinstance(resolve, Mapping):
        table = resolve

        def resolve(name, _t=table):
            try:
                return _t[name]
            except KeyError:
                raise PolySyntaxError(f"unknown variable {name!r}") from None

    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise PolySyntaxError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        kind = mt.lastgroup
        tokens.append((kind, mt.group(kind), pos))
        pos = mt.end()
    tokens.append(("end", None, pos))
    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        t = tokens[i]
        i += 1
        return t

    def expr() -> Poly:
        sign = 1
        if peek()[1] in ("+", "-"):
            sign = -1 if take()[1] == "-" else 1
        acc = term() * sign
        while peek()[1] in ("+", "-"):
            op = take()[1]
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term() -> Poly:
        acc = power()
        while peek()[1] == "*":
            take()
            acc = acc * power()
        return acc

    def power() -> Poly:
        base = atom()
        if peek()[1] == "^":
            take()
            kind, val, p = take()
            if kind != "num" or "/" in val:
                raise PolySyntaxError(f"bad exponent at {p}")
            base = base ** int(val)
        return base

    def atom() -> Poly:
        kind, val, p = take()
        if kind == "num":
            return Poly.const(Fraction(val))
        if kind == "var":
            return Poly.var(resolve(val))
        if val == "(":
            inner = expr()
            if take()[1] != ")":
                raise PolySyntaxError(f"missing ')' after {p}")
            return inner
        if val == "-":
            return -atom()
        raise PolySyntaxError(f"unexpected token {val!r} at {p}")

    result = expr()
    if peek()[0] != "end":
        raise PolySyntaxError(f"trailing input at {peek()[2]}")
    return result
