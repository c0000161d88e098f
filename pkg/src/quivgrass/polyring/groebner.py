"""Buchberger's algorithm over Q and the ideal operations built on it."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Dict, Iterable, List, Sequence, Tuple

from ._backend import kernels
from .poly import Monomial, Poly, Var, aux_var


class ResourceLimitExceeded(RuntimeError):
    """Raised when a Groebner computation exceeds its step cap."""


DEFAULT_MAX_STEPS = 200_000


# monomial orders ------------------------------------------------------------

def _lex_key(n):
    return lambda e: e


def _grlex_key(n):
    return lambda e: (sum(e),) + tuple(e)


def _grevlex_key(n):
    return lambda e: (sum(e),) + tuple(-x for x in reversed(e))


_SIMPLE = {"lex": _lex_key, "grlex": _grlex_key, "grevlex": _grevlex_key}


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on ``n`` variables.

    ``blocks`` is a sequence of ``(size, kind)`` pairs; a single block gives
    a plain lex/grlex/grevlex order, several blocks an elimination order in
    which the first block dominates.
    """

    blocks: Tuple[Tuple[int, str], ...]

    @classmethod
    def simple(cls, kind: str, n: int) -> "MonomialOrder":
        if kind not in _SIMPLE:
            raise ValueError(f"unknown monomial order {kind!r}")
        return cls(((n, kind),))

    @classmethod
    def block(cls, *blocks: Tuple[int, str]) -> "MonomialOrder":
        for _, kind in blocks:
            if kind not in _SIMPLE:
                raise ValueError(f"unknown monomial order {kind!r}")
        return cls(tuple(blocks))

    @property
    def nvars(self) -> int:
        return sum(n for n, _ in self.blocks)

    def key_function(self) -> Callable[[tuple], tuple]:
        if len(self.blocks) == 1:
            n, kind = self.blocks[0]
            return _SIMPLE[kind](n)
        parts = []
        start = 0
        for n, kind in self.blocks:
            parts.append((start, start + n, _SIMPLE[kind](n)))
            start += n

        def key(e):
            out = ()
            for a, b, f in parts:
                out += f(e[a:b])
            return out

        return key


@dataclass
class Ring:
    """Variable ordering plus monomial order for dense computations."""

    variables: Tuple[Var, ...]
    order: MonomialOrder

    def __post_init__(self):
        self.variables = tuple(self.variables)
        if self.order.nvars != len(self.variables):
            raise ValueError("monomial order size does not match variable count")
        self._pos = {v: i for i, v in enumerate(self.variables)}
        self.key_of = self.order.key_function()

    @classmethod
    def for_polys(cls, polys: Iterable[Poly], order: str = "grevlex",
                  extra: Sequence[Var] = ()) -> "Ring":
        vs = set(extra)
        for p in polys:
            vs.update(p.variables())
        ordered = tuple(sorted(vs, key=lambda v: v.sort_key))
        return cls(ordered, MonomialOrder.simple(order, len(ordered)))

    def to_dense(self, p: Poly) -> list:
        if p.is_zero():
            return []
        n = len(self.variables)
        den = 1
        for _, c in p.items():
            den = den * c.denominator // gcd(den, c.denominator)
        terms = []
        for m, c in p.items():
            e = [0] * n
            for v, k in m:
                try:
                    e[self._pos[v]] = k
                except KeyError:
                    raise ValueError(f"variable {v} not in ring") from None
            e = tuple(e)
            terms.append((self.key_of(e), e, (c * den).numerator))
        terms.sort(key=lambda t: t[0], reverse=True)
        return kernels.primitive(terms)

    def from_dense(self, f: list, monic: bool = True) -> Poly:
        if not f:
            return Poly()
        lc = f[0][2]
        terms: Dict[Monomial, Fraction] = {}
        for _, e, c in f:
            m = tuple((self.variables[i], k) for i, k in enumerate(e) if k)
            terms[m] = Fraction(c, lc) if monic else Fraction(c)
        return Poly(terms)

    def leading_monomial(self, p: Poly) -> Monomial:
        f = self.to_dense(p)
        e = f[0][1]
        return tuple((self.variables[i], k) for i, k in enumerate(e) if k)


# Buchberger ---------------------------------------------------------------

@dataclass
class IdealBasis:
    """Generators of an ideal, optionally certified Groebner for ``ring``."""

    generators: List[Poly]
    ring: Ring | None = None
    is_groebner: bool = False
    stats: dict = field(default_factory=dict)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)


def _buchberger_dense(F: List[list], key_of, max_steps: int) -> List[list]:
    """Return a reduced Groebner basis of dense polynomials ``F``."""
    G: List[list] = []
    pairs: List[Tuple[tuple, int, int, tuple]] = []
    steps = 0

    def lm(i):
        return G[i][0][1]

    def add(h):
        # Gebauer-Moeller style update with the product and chain criteria
        nonlocal pairs
        k = len(G)
        G.append(h)
        eh = h[0][1]
        new = []
        for i in range(k):
            if G[i] is None:
                continue
            l = kernels.lcm_exp(lm(i), eh)
            new.append((l, i))
        kept_new = []
        for l, i in new:
            # chain criterion against other new pairs with strictly smaller lcm
            if any(l2 != l and kernels.divides(l2, l) for l2, _ in new):
                continue
            kept_new.append((l, i))
        seen = set()
        final_new = []
        for l, i in kept_new:
            if l in seen:
                continue
            seen.add(l)
            # product criterion: coprime leading monomials reduce to zero
            if tuple(a + b for a, b in zip(lm(i), eh)) == l:
                continue
            final_new.append((key_of(l), i, k, l))
        old = []
        for kl, i, j, l in pairs:
            if kernels.divides(eh, l):
                li = kernels.lcm_exp(lm(i), eh)
                lj = kernels.lcm_exp(lm(j), eh)
                if li != l and lj != l:
                    continue
            old.append((kl, i, j, l))
        pairs = old + final_new

    for f in F:
        if f:
            add(f)
    while pairs:
        # normal strategy: smallest lcm first, ties by pair index
        idx = min(range(len(pairs)), key=lambda t: (pairs[t][0], pairs[t][1], pairs[t][2]))
        _, i, j, _ = pairs.pop(idx)
        steps += 1
        if steps > max_steps:
            raise ResourceLimitExceeded(f"Buchberger exceeded {max_steps} pair reductions")
        s = kernels.spoly(G[i], G[j], key_of)
        basis = [g for g in G if g is not None]
        h = kernels.reduce(s, basis, key_of)
        if h:
            add(h)
    return _reduce_basis([g for g in G if g is not None], key_of)


def _reduce_basis(G: List[list], key_of) -> List[list]:
    # minimalize
    G = sorted(G, key=lambda g: g[0][0])
    minimal: List[list] = []
    for g in G:
        if not any(kernels.divides(h[0][1], g[0][1]) for h in minimal):
            minimal.append(g)
    # interreduce
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = kernels.reduce(g, others, key_of)
        out.append(r)
    out.sort(key=lambda g: g[0][0])
    return out


def groebner(gens: Iterable[Poly] | IdealBasis, order: str | MonomialOrder = "grevlex",
             ring: Ring | None = None, max_steps: int = DEFAULT_MAX_STEPS) -> IdealBasis:
    """Reduced Groebner basis (monic generators, ascending leading terms)."""
    if isinstance(gens, IdealBasis):
        gens = gens.generators
    gens = [g for g in gens if not g.is_zero()]
    if ring is None:
        if isinstance(order, MonomialOrder):
            raise ValueError("a block order needs an explicit ring")
        ring = Ring.for_polys(gens, order)
    dense = [ring.to_dense(g) for g in gens]
    G = _buchberger_dense(dense, ring.key_of, max_steps)
    return IdealBasis([ring.from_dense(g) for g in G], ring, True)


def normal_form(p: Poly, G: IdealBasis) -> Poly:
    """Remainder of ``p`` modulo the Groebner basis ``G``, up to a unit."""
    if not G.is_groebner:
        raise ValueError("normal_form needs a Groebner basis")
    ring = _ring_covering(G.ring, [p])
    basis = [ring.to_dense(g) for g in G.generators]
    r = kernels.reduce(ring.to_dense(p), basis, ring.key_of)
    return ring.from_dense(r, monic=False)


def _ring_covering(ring: Ring, polys: Iterable[Poly]) -> Ring:
    extra = set()
    for p in polys:
        extra.update(v for v in p.variables() if v not in ring._pos)
    if not extra:
        return ring
    # unknown variables are appended as a trailing lex-smaller block
    new = tuple(sorted(extra, key=lambda v: v.sort_key))
    order = MonomialOrder(ring.order.blocks + ((len(new), "grevlex"),))
    return Ring(ring.variables + new, order)


def ideal_member(p: Poly, G: IdealBasis) -> bool:
    if p.is_zero():
        return True
    if not G.is_groebner:
        G = groebner(G)
    return normal_form(p, G).is_zero()


def _common_ring(polys: Iterable[Poly], order: str) -> Ring:
    return Ring.for_polys(polys, order)


def ideal_equal(I: Iterable[Poly] | IdealBasis, J: Iterable[Poly] | IdealBasis,
                order: str = "grevlex", max_steps: int = DEFAULT_MAX_STEPS) -> bool:
    """Equality of ideals by comparing reduced Groebner bases in one ring."""
    gi = list(I.generators if isinstance(I, IdealBasis) else I)
    gj = list(J.generators if isinstance(J, IdealBasis) else J)
    ring = _common_ring(gi + gj, order)
    Gi = groebner(gi, ring=ring, max_steps=max_steps)
    Gj = groebner(gj, ring=ring, max_steps=max_steps)
    return Gi.generators == Gj.generators


def ideal_contains(I: Iterable[Poly] | IdealBasis, J: Iterable[Poly] | IdealBasis,
                   order: str = "grevlex") -> bool:
    """True when every generator of ``J`` lies in ``I``."""
    gi = list(I.generators if isinstance(I, IdealBasis) else I)
    gj = list(J.generators if isinstance(J, IdealBasis) else J)
    ring = _common_ring(gi + gj, order)
    G = groebner(gi, ring=ring)
    return all(ideal_member(g, G) for g in gj)


# elimination-based operations -------------------------------------------

def eliminate(gens: Iterable[Poly], elim: Sequence[Var], order: str = "grevlex",
              max_steps: int = DEFAULT_MAX_STEPS) -> IdealBasis:
    """Generators of ``<gens>`` intersected with the ring without ``elim``."""
    gens = list(gens)
    elim = tuple(elim)
    rest = set()
    for g in gens:
        rest.update(v for v in g.variables() if v not in elim)
    rest_t = tuple(sorted(rest, key=lambda v: v.sort_key))
    ring = Ring(elim + rest_t, MonomialOrder.block((len(elim), "grevlex"), (len(rest_t), order)))
    G = groebner(gens, ring=ring, max_steps=max_steps)
    kept = [g for g in G.generators if not any(v in elim for v in g.variables())]
    return IdealBasis(kept)


def _fresh_aux(polys: Iterable[Poly], stem: str = "_t") -> Var:
    used = set()
    for p in polys:
        used.update(v.label for v in p.variables())
    k = 0
    while f"{stem}{k}" in used:
        k += 1
    return aux_var(f"{stem}{k}", 10**6 + k)


def intersect(I: Iterable[Poly], J: Iterable[Poly], max_steps: int = DEFAULT_MAX_STEPS) -> IdealBasis:
    """Generators of the intersection of two ideals."""
    I, J = list(I), list(J)
    t = _fresh_aux(I + J)
    T = Poly.var(t)
    gens = [T * f for f in I] + [(1 - T) * g for g in J]
    return eliminate(gens, (t,), max_steps=max_steps)


def _exact_divide(p: Poly, f: Poly, ring: Ring) -> Poly:
    """Divide ``p`` by ``f`` assuming exact divisibility."""
    q = Poly()
    r = p
    fl = ring.leading_monomial(f)
    fc = f.terms[fl]
    while not r.is_zero():
        rl = ring.leading_monomial(r)
        rc = r.terms[rl]
        ex = dict(rl)
        for v, k in fl:
            ex[v] = ex.get(v, 0) - k
            if ex[v] < 0:
                raise ArithmeticError("division is not exact")
        mono = tuple((v, k) for v, k in sorted(ex.items(), key=lambda t: t[0].sort_key) if k)
        term = Poly({mono: rc / fc})
        q = q + term
        r = r - term * f
    return q


def quotient(I: Iterable[Poly], f: Poly, max_steps: int = DEFAULT_MAX_STEPS) -> IdealBasis:
    """Generators of the ideal quotient ``I : f``."""
    I = list(I)
    inter = intersect(I, [f], max_steps=max_steps)
    ring = Ring.for_polys(inter.generators + [f])
    return IdealBasis([_exact_divide(g, f, ring) for g in inter.generators])


def split_linear(gens: Iterable[Poly], protect: Iterable[Var] = ()) -> Tuple[List[Tuple[Var, Poly]], List[Poly]]:
    """Solve generators of the form ``c*v + g`` (``v`` absent from ``g``) for ``v``.

    Returns the substitutions in solving order (values fully reduced) and the
    remaining generators with all substitutions applied.  Variables in
    ``protect`` are never solved for.
    """
    protect = set(protect)
    pending = [g for g in gens if not g.is_zero()]
    solved: List[Tuple[Var, Poly]] = []
    changed = True
    while changed:
        changed = False
        for idx, g in enumerate(pending):
            if g.total_degree() != 1:
                continue
            for v in sorted(g.variables(), key=lambda v: v.sort_key, reverse=True):
                if v in protect:
                    continue
                lc = g.linear_coefficient(v)
                if lc is None:
                    continue
                c, rest = lc
                value = -rest * (1 / c)
                sub = {v: value}
                solved = [(w, val.subs(sub)) for w, val in solved]
                solved.append((v, value))
                pending = [h.subs(sub) for j, h in enumerate(pending) if j != idx]
                pending = [h for h in pending if not h.is_zero()]
                changed = True
                break
            if changed:
                break
    return solved, pending


def _saturate_by_variable(gens: List[Poly], z: Var, max_steps: int) -> IdealBasis:
    # homogeneous input: grevlex with z smallest, then strip powers of z
    vs = set()
    for g in gens:
        vs.update(g.variables())
    vs.discard(z)
    ordered = tuple(sorted(vs, key=lambda v: v.sort_key)) + (z,)
    ring = Ring(ordered, MonomialOrder.simple("grevlex", len(ordered)))
    G = groebner(gens, ring=ring, max_steps=max_steps)
    stripped = []
    for g in G.generators:
        k = min(dict(m).get(z, 0) for m, _ in g.items())
        if k:
            g = Poly({tuple((v, e - k) if v == z else (v, e) for v, e in m if not (v == z and e == k)): c
                      for m, c in g.items()})
        stripped.append(g)
    return IdealBasis(stripped)


def saturate(I: Iterable[Poly] | IdealBasis, f: Poly, order: str = "grevlex",
             max_steps: int = DEFAULT_MAX_STEPS, max_rounds: int = 64,
             eliminate_linear: bool = True, method: str = "auto") -> IdealBasis:
    """Generators (a reduced Groebner basis) of ``I : f^infinity``.

    Linear generators are first used to eliminate variables not occurring in
    ``f``.  ``method="quotient"`` iterates ``I <- I : f`` until the reduced
    basis stabilizes; ``method="variable"`` needs homogeneous generators and
    ``f`` a variable, and strips powers of ``f`` from a grevlex basis in
    which ``f`` is the smallest variable.  ``auto`` picks the latter when it
    applies.
    """
    gens = list(I.generators if isinstance(I, IdealBasis) else I)
    solved: List[Tuple[Var, Poly]] = []
    if eliminate_linear:
        solved, gens = split_linear(gens, protect=f.variables())
        if any(g.is_constant() for g in gens):
            gens = [Poly.const(1)]
    fvars = f.variables()
    by_var = (len(f) == 1 and len(fvars) == 1 and f.total_degree() == 1
              and all(g.is_homogeneous() for g in gens))
    if method == "variable" and not by_var:
        raise ValueError("method 'variable' needs homogeneous generators and a variable")
    if method not in ("auto", "variable", "quotient"):
        raise ValueError(f"unknown saturation method {method!r}")
    if by_var and method != "quotient":
        current = _saturate_by_variable(gens, fvars[0], max_steps)
        linear = [Poly.var(v) - val for v, val in solved]
        out = groebner(linear + current.generators, order, max_steps=max_steps)
        out.stats.update(rounds=1, eliminated=len(solved), method="variable")
        return out
    ring = Ring.for_polys(gens + [f], order)
    current = groebner(gens, ring=ring, max_steps=max_steps)
    rounds = 0
    while True:
        rounds += 1
        if rounds > max_rounds:
            raise ResourceLimitExceeded(f"saturation did not stabilize in {max_rounds} rounds")
        q = quotient(current.generators, f, max_steps=max_steps)
        nxt = groebner(q.generators, ring=ring, max_steps=max_steps)
        if nxt.generators == current.generators:
            break
        current = nxt
    if solved:
        linear = [Poly.var(v) - val for v, val in solved]
        out = groebner(linear + current.generators, order, max_steps=max_steps)
    else:
        out = current
    out.stats.update(rounds=rounds, eliminated=len(solved), method="quotient")
    return out
