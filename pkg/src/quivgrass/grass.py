"""Affine equations for the varieties of modules with a fixed skeleton.

The coordinate ring has one variable ``X[b';b]`` for every critical path
``b'`` and every ``b`` in its companion set.  Relations applied to the tops
are expanded in the skeleton basis; the coefficients are the τ polynomials.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import QuivGrassError
from .linalg import is_zero_matrix, mat_mul
from .paths import ProjPath, QPath, TopFrame, compose, lincomb_add, top_element
from .polyring import Poly, Var
from .presentation import Presentation, all_paths
from .skeleta import CriticalPath, Skeleton, big_frame, critical_paths

Vector = Dict[ProjPath, Poly]


def x_var(pres: Presentation, crit: ProjPath, member: ProjPath) -> Var:
    k1 = pres.proj_key(crit)
    k2 = pres.proj_key(member)
    flat = (k1[0], k1[1]) + k1[2] + (k2[0], k2[1]) + k2[2]
    return Var("X", flat, f"X[{crit};{member}]")


class ExpansionContext:
    """Skeleton, its critical paths and the variable set ``N``."""

    def __init__(self, pres: Presentation, sk: Skeleton, setting: str = "small",
                 dimvec: Mapping[str, int] | None = None):
        self.pres = pres
        self.sk = sk
        self.setting = setting
        self.frame = big_frame(sk, dimvec) if setting == "big" else sk.frame
        self.crits: List[CriticalPath] = critical_paths(sk, pres, setting, dimvec)
        self.crit_of: Dict[ProjPath, CriticalPath] = {c.path: c for c in self.crits}
        self.variables: List[Var] = []
        self._var: Dict[Tuple[ProjPath, ProjPath], Var] = {}
        for c in self.crits:
            for b in c.companions:
                v = x_var(pres, c.path, b)
                self._var[(c.path, b)] = v
                self.variables.append(v)
        self._memo: Dict[ProjPath, Vector] = {}

    def var(self, crit: ProjPath, member: ProjPath) -> Var:
        return self._var[(crit, member)]

    def pairs(self):
        return list(self._var.items())

    def critical_prefix(self, p: ProjPath) -> Optional[ProjPath]:
        """Shortest initial subpath outside the skeleton, or ``None`` if ``p`` is in it."""
        for k in range(p.length + 1):
            q = p.prefix(k)
            if q not in self.sk:
                return q
        return None

    def expand(self, p: ProjPath) -> Vector:
        """Coefficients of ``p`` in the skeleton basis modulo 𝔘."""
        hit = self._memo.get(p)
        if hit is not None:
            return hit
        out: Vector = {}
        if p.length <= self.pres.loewy:
            if p in self.sk:
                out[p] = Poly.const(1)
            else:
                p1 = self.critical_prefix(p)
                crit = self.crit_of[p1]
                k = p1.length
                rest = QPath(p.path.word[: p.length - k], p.path.verts[k:])
                for b in crit.companions:
                    x = Poly.var(self.var(p1, b))
                    target = ProjPath(b.r, compose(rest, b.path))
                    for s, c in self.expand(target).items():
                        _acc(out, s, x * c)
        self._memo[p] = out
        return out

    def expand_comb(self, comb: Mapping[ProjPath, Fraction]) -> Vector:
        out: Vector = {}
        for p, c in comb.items():
            for s, v in self.expand(p).items():
                _acc(out, s, v * c)
        return out


def _acc(vec: Vector, key, val: Poly) -> None:
    cur = vec.get(key)
    new = val if cur is None else cur + val
    if new.is_zero():
        vec.pop(key, None)
    else:
        vec[key] = new


@dataclass(frozen=True)
class TauRecord:
    relation: int     # 0-based index into the presentation's relations
    m: int            # top index
    l: int            # 1-based index of the skeleton member
    poly: Poly
    shortcut: bool    # the relation applied to z_m is itself a critical path


@dataclass
class TauSystem:
    ctx: ExpansionContext
    records: List[TauRecord]
    zero_count: int   # expanded coefficients that vanished identically

    @property
    def polys(self) -> List[Poly]:
        return [r.poly for r in self.records]

    @property
    def variables(self) -> List[Var]:
        return self.ctx.variables

    def provenance(self, rec: TauRecord) -> str:
        rel = self.ctx.pres.relations[rec.relation]
        from .presentation import format_combination

        return f"rho={format_combination(rel)} m={rec.m} l={rec.l}"


def tau_system(pres: Presentation, sk: Skeleton, setting: str = "small",
               dimvec: Mapping[str, int] | None = None) -> TauSystem:
    ctx = ExpansionContext(pres, sk, setting, dimvec)
    records: List[TauRecord] = []
    zeros = 0
    for m in sk.frame.tops():
        em = sk.frame.e(m)
        for i, rel in enumerate(pres.relations):
            if rel[0][0].start != em:
                continue
            comb = {ProjPath(m, q): c for q, c in rel}
            shortcut = len(rel) == 1 and ProjPath(m, rel[0][0]) in ctx.crit_of
            vec = ctx.expand_comb(comb)
            for l, b in enumerate(sk.members, 1):
                # a coefficient can only be nonzero on members ending where ρ ends
                if b.end != rel[0][0].end:
                    continue
                p = vec.get(b)
                if p is None or p.is_zero():
                    zeros += 1
                    continue
                records.append(TauRecord(i, m, l, p, shortcut))
    system = TauSystem(ctx, records, zeros)
    if setting == "big":
        new = {ctx.var(c.path, b) for c in ctx.crits if c.path.r > sk.t for b in c.companions}
        for rec in records:
            if new & set(rec.poly.variables()):
                raise QuivGrassError("a top outside the skeleton entered a τ polynomial")
    return system


# triangular certificate -------------------------------------------------------

@dataclass
class TriangularSolution:
    """``var = value`` substitutions (values in free variables) plus free variables.

    ``empty`` marks an inconsistent system.
    """

    substitutions: List[Tuple[Var, Poly]]
    free: List[Var]
    empty: bool = False

    @property
    def dimension(self) -> int:
        return len(self.free)

    def equations(self) -> List[Poly]:
        """``var - value`` for every determined variable, in solving order."""
        return [Poly.var(v) - val for v, val in self.substitutions]

    def as_dict(self) -> Dict[Var, Poly]:
        return dict(self.substitutions)


def detect_affine_space(polys: Sequence[Poly] | TauSystem,
                        variables: Sequence[Var] | None = None) -> Optional[TriangularSolution]:
    """Certify the zero set as an affine space by triangular elimination.

    Repeatedly take the first equation (after substituting the variables
    solved so far) that is linear with constant coefficient in some variable
    not occurring elsewhere in it, and solve for the earliest such variable.
    Returns ``None`` when stuck (inconclusive).
    """
    if isinstance(polys, TauSystem):
        variables = polys.variables if variables is None else variables
        polys = polys.polys
    if variables is None:
        vs = set()
        for p in polys:
            vs.update(p.variables())
        variables = sorted(vs, key=lambda v: v.sort_key)
    order = {v: i for i, v in enumerate(variables)}
    pending = list(polys)
    subs: Dict[Var, Poly] = {}
    solved: List[Var] = []
    while pending:
        progress = False
        for idx, eq in enumerate(pending):
            e = eq.subs(subs) if subs else eq
            if e.is_zero():
                pending.pop(idx)
                progress = True
                break
            if e.is_constant():
                return TriangularSolution([], [], empty=True)
            pick = None
            for v in sorted(e.variables(), key=lambda v: order.get(v, len(order))):
                lc = e.linear_coefficient(v)
                if lc is not None:
                    pick = (v, lc)
                    break
            if pick is None:
                continue
            v, (c, rest) = pick
            value = -rest * (1 / c)
            for w in solved:
                subs[w] = subs[w].subs({v: value})
            subs[v] = value
            solved.append(v)
            pending.pop(idx)
            progress = True
            break
        if not progress:
            return None
    free = [v for v in variables if v not in subs]
    return TriangularSolution([(v, subs[v]) for v in solved], free)


# points ------------------------------------------------------------------------

@dataclass
class GrassPoint:
    system: TauSystem
    values: Dict[Var, Fraction]

    def __post_init__(self):
        missing = [v for v in self.system.variables if v not in self.values]
        if missing:
            raise QuivGrassError(f"point lacks values for {missing[:3]}")
        for rec in self.system.records:
            if rec.poly.evaluate(self.values) != 0:
                raise QuivGrassError(f"τ polynomial {rec.poly} does not vanish at the point")


def solve_point(system: TauSystem, cert: TriangularSolution,
                free_values: Mapping[Var, Fraction]) -> GrassPoint:
    if cert.empty:
        raise QuivGrassError("the variety is empty")
    missing = [v for v in cert.free if v not in free_values]
    if missing:
        raise QuivGrassError(f"missing values for free variables {missing}")
    values = {v: Fraction(free_values[v]) for v in cert.free}
    for v, val in cert.substitutions:
        values[v] = val.evaluate(values)
    return GrassPoint(system, values)


def small_rational(rng: random.Random, height: int = 10) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def random_point(system: TauSystem, cert: TriangularSolution, rng: random.Random,
                 height: int = 10) -> GrassPoint:
    return solve_point(system, cert, {v: small_rational(rng, height) for v in cert.free})


# representation matrices -----------------------------------------------------------

@dataclass
class RepPoint:
    """Arrow matrices; rows/columns follow the skeleton members ending at each vertex."""

    labels: Dict[str, List[ProjPath]]
    matrices: Dict[str, List[List[Fraction]]]


def to_rep_point(point: GrassPoint) -> RepPoint:
    ctx = point.system.ctx
    pres, sk = ctx.pres, ctx.sk
    labels: Dict[str, List[ProjPath]] = {v: [] for v in pres.vertices}
    for b in sk.members:
        labels[b.end].append(b)
    pos = {v: {b: i for i, b in enumerate(bs)} for v, bs in labels.items()}
    mats = {}
    for a in pres.quiver.arrows:
        rows, cols = labels[a.target], labels[a.source]
        m = [[Fraction(0)] * len(cols) for _ in rows]
        for j, b in enumerate(cols):
            if b.length >= pres.loewy:
                continue
            ab = b.extend(a)
            if ab in sk:
                m[pos[a.target][ab]][j] = Fraction(1)
                continue
            crit = ctx.crit_of[ab]
            for s in crit.companions:
                m[pos[a.target][s]][j] = point.values[ctx.var(ab, s)]
        mats[a.name] = m
    return RepPoint(labels, mats)


def path_matrix(rep: RepPoint, p: QPath) -> List[List[Fraction]]:
    """``x_p``; the written word ``p*q`` maps to the product ``x_p x_q``."""
    if not p.word:
        n = len(rep.labels[p.start])
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    m = rep.matrices[p.word[0]]
    for name in p.word[1:]:
        m = mat_mul(m, rep.matrices[name])
    return m


def _scaled(rep: RepPoint) -> Tuple[Dict[str, List[List[int]]], int]:
    # common denominator D; arrow matrix x_a equals scaled[a] / D
    D = 1
    for m in rep.matrices.values():
        for row in m:
            for x in row:
                D = D * x.denominator // math.gcd(D, x.denominator)
    return {a: [[int(x * D) for x in row] for row in m] for a, m in rep.matrices.items()}, D


def _int_mul(a: List[List[int]], b: List[List[int]]) -> List[List[int]]:
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * cols
        for k, x in enumerate(row):
            if x:
                for j, y in enumerate(b[k]):
                    if y:
                        acc[j] += x * y
        out.append(acc)
    return out


def verify_rep_point(rep: RepPoint, pres: Presentation) -> bool:
    """All relations and all paths of length L+1 act as zero."""
    mats, D = _scaled(rep)

    def scaled_path(p: QPath) -> List[List[int]]:
        if not p.word:
            n = len(rep.labels[p.start])
            return [[int(i == j) for j in range(n)] for i in range(n)]
        m = mats[p.word[0]]
        for name in p.word[1:]:
            m = _int_mul(m, mats[name])
        return m

    for rel in pres.relations:
        top = max((q.length for q, _ in rel), default=0)
        total = None
        for q, c in rel:
            w = c * D ** (top - q.length)
            m = [[w * x for x in row] for row in scaled_path(q)]
            total = m if total is None else [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(total, m)]
        if total is not None and not is_zero_matrix(total):
            return False
    for p in all_paths(pres.quiver, pres.loewy + 1):
        if p.length == pres.loewy + 1 and not is_zero_matrix(scaled_path(p)):
            return False
    return True
