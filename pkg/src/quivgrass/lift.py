"""Projective equations: from the big affine chart to Plücker coordinates.

Pipeline: ``reduce_index_set`` -> ``build_basis_B`` -> ``complement_rows``
-> ``pluecker_expansion`` -> ``schubert_system`` -> ``homogenize_and_saturate``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import EmptyVarietyError, PreconditionError, QuivGrassError
from .grass import TauSystem, tau_system
from .linalg import EchelonSpan
from .paths import ProjPath, normal_form
from .polyring import (
    DEFAULT_MAX_STEPS,
    IdealBasis,
    Poly,
    ResourceLimitExceeded,
    Var,
    groebner,
    ideal_equal,
    saturate,
    y_var,
)
from .presentation import Presentation, boldP_basis
from .skeleta import Skeleton


def _image(pres: Presentation, b: ProjPath) -> Dict[ProjPath, Fraction]:
    return normal_form({b: Fraction(1)}, pres.rewriter)


@dataclass
class ReducedSystem:
    big: TauSystem
    sigma: List[ProjPath]                # b_1..b_d
    sigma_prime: List[ProjPath]          # b'_1..b'_u
    N0: List[Tuple[int, int]]            # 1-based (i, j)
    xvars: Dict[Tuple[int, int], Var]    # X_ij
    k: Dict[ProjPath, Tuple[Dict[int, Fraction], Dict[int, Fraction]]]  # coordinates of dependent critical paths
    substitution: Dict[Var, Poly]        # discarded variable -> expression in X_ij
    polys: List[Poly]                    # equations in the X_ij
    constraints: List[Poly] = field(default_factory=list)  # from members outside σ(b')

    @property
    def variables(self) -> List[Var]:
        return [self.xvars[ij] for ij in self.N0]

    @property
    def d(self) -> int:
        return len(self.sigma)

    @property
    def u(self) -> int:
        return len(self.sigma_prime)


def big_tau_system(pres: Presentation, sk: Skeleton, dimvec: Mapping[str, int] | None = None) -> TauSystem:
    return tau_system(pres, sk, "big", dimvec)


def reduce_index_set(big: TauSystem) -> ReducedSystem:
    """Pick σ′ greedily, write the remaining critical paths in that basis and substitute."""
    ctx = big.ctx
    pres, sk = ctx.pres, ctx.sk
    if ctx.setting != "big":
        raise PreconditionError("reduce_index_set needs a big-setting system")
    span = EchelonSpan()
    for b in sk.members:
        if not span.add(_image(pres, b)):
            raise EmptyVarietyError(f"the skeleton is linearly dependent in the cover (at {b})")
    d = sk.d
    sigma_prime: List[ProjPath] = []
    others: List[ProjPath] = []
    for c in ctx.crits:
        if span.add(_image(pres, c.path)):
            sigma_prime.append(c.path)
        else:
            others.append(c.path)
    members = list(sk.members)
    N0 = []
    xvars = {}
    for i, bp in enumerate(sigma_prime, 1):
        comp = set(ctx.crit_of[bp].companions)
        for j, b in enumerate(members, 1):
            if b in comp:
                N0.append((i, j))
                xvars[(i, j)] = ctx.var(bp, b)
    k_table = {}
    substitution: Dict[Var, Poly] = {}
    constraints: List[Poly] = []
    for bp in others:
        coords = span.coordinates(_image(pres, bp))
        kj = {j: coords.get(j - 1, Fraction(0)) for j in range(1, d + 1)}
        kpi = {i: coords.get(d + i - 1, Fraction(0)) for i in range(1, len(sigma_prime) + 1)}
        k_table[bp] = (kj, kpi)
        comp = set(ctx.crit_of[bp].companions)
        for j, b in enumerate(members, 1):
            expr = Poly.const(kj[j])
            for i in range(1, len(sigma_prime) + 1):
                if kpi[i] and (i, j) in xvars:
                    expr = expr + Poly.var(xvars[(i, j)]) * kpi[i]
            if b in comp:
                substitution[ctx.var(bp, b)] = expr
            elif not expr.is_zero():
                constraints.append(expr)
    polys = []
    seen = set()
    for p in big.polys + constraints:
        q = p.subs(substitution)
        if q.is_zero():
            continue
        if q.is_constant():
            raise EmptyVarietyError("the reduced system contains a nonzero constant")
        key = q.canonical()
        if key in seen:
            continue
        seen.add(key)
        polys.append(q)
    allowed = set(xvars.values())
    for p in polys:
        if not set(p.variables()) <= allowed:
            raise QuivGrassError("reduced system mentions variables outside N0")
    return ReducedSystem(big, members, sigma_prime, N0, xvars, k_table, substitution, polys, constraints)


def restrict_to_component(R: ReducedSystem, extra: Sequence[Poly]) -> ReducedSystem:
    """The same system with externally supplied component generators appended."""
    allowed = set(R.variables)
    for p in extra:
        foreign = set(p.variables()) - allowed
        if foreign:
            raise QuivGrassError(f"component generator uses foreign variables {sorted(map(str, foreign))}")
    polys = list(R.polys)
    have = {p.canonical() for p in polys}
    for p in extra:
        if not p.is_zero() and p.canonical() not in have:
            have.add(p.canonical())
            polys.append(p)
    return ReducedSystem(R.big, R.sigma, R.sigma_prime, R.N0, R.xvars, R.k,
                         R.substitution, polys, R.constraints)


@dataclass
class OrderedBasisB:
    sigma: List[ProjPath]
    sigma_prime: List[ProjPath]
    completion: List[ProjPath]

    @property
    def w(self) -> List[ProjPath]:
        return self.sigma + self.sigma_prime + self.completion

    @property
    def d(self) -> int:
        return len(self.sigma)

    @property
    def u(self) -> int:
        return len(self.sigma_prime)

    @property
    def v(self) -> int:
        return len(self.completion)

    @property
    def a(self) -> int:
        return self.u + self.v

    @property
    def dim(self) -> int:
        return len(self.w)


def build_basis_B(R: ReducedSystem) -> OrderedBasisB:
    ctx = R.big.ctx
    pres = ctx.pres
    span = EchelonSpan()
    for b in R.sigma + R.sigma_prime:
        span.add(_image(pres, b))
    completion = []
    for q in boldP_basis(ctx.frame, pres, big=True):
        if span.add(_image(pres, q)):
            completion.append(q)
    B = OrderedBasisB(list(R.sigma), list(R.sigma_prime), completion)
    if B.a == 0:
        raise PreconditionError("a = 0: the skeleton spans the whole cover, the Grassmannian is a point")
    return B


@dataclass
class PlueckerExpansion:
    B: OrderedBasisB
    left: List[List[Poly]]                   # a x d block; rows are [left | identity]
    q: Dict[Tuple[int, int], Poly]           # q_kl from the completion rows
    rho: Dict[Tuple[int, ...], Poly]         # nonzero minors only
    eps: Dict[Tuple[int, int], int]
    hat_index: Dict[Tuple[int, int], Tuple[int, ...]]

    @property
    def special(self) -> Tuple[int, ...]:
        return tuple(range(self.B.d + 1, self.B.dim + 1))

    def minor(self, T: Tuple[int, ...]) -> Poly:
        return self.rho.get(tuple(T), Poly())

    def all_indices(self):
        return itertools.combinations(range(1, self.B.dim + 1), self.B.a)


def complement_rows(B: OrderedBasisB, R: ReducedSystem) -> Tuple[List[List[Poly]], Dict[Tuple[int, int], Poly]]:
    """Left blocks of the rows C′_i and C″_k, plus the ``q_kl``."""
    ctx = R.big.ctx
    d = B.d
    left: List[List[Poly]] = []
    for i in range(1, B.u + 1):
        left.append([-Poly.var(R.xvars[(i, j)]) if (i, j) in R.xvars else Poly()
                     for j in range(1, d + 1)])
    q: Dict[Tuple[int, int], Poly] = {}
    index = {b: j for j, b in enumerate(B.sigma, 1)}
    for k, bpp in enumerate(B.completion, 1):
        vec = ctx.expand(bpp)
        row = [Poly() for _ in range(d)]
        for s, coeff in vec.items():
            l = index[s]
            val = coeff.subs(R.substitution)
            q[(k, l)] = val
            row[l - 1] = -val
        left.append(row)
    return left, q


def _poly_det(m: List[List[Poly]]) -> Poly:
    """Determinant by Laplace expansion along columns, memoized on row sets."""
    n = len(m)
    if n == 0:
        return Poly.const(1)
    memo: Dict[Tuple[int, frozenset], Poly] = {}

    def rec(col: int, rows: frozenset) -> Poly:
        if col == n:
            return Poly.const(1)
        key = (col, rows)
        hit = memo.get(key)
        if hit is not None:
            return hit
        total = Poly()
        ordered = sorted(rows)
        for pos, r in enumerate(ordered):
            entry = m[r][col]
            if entry.is_zero():
                continue
            sub = rec(col + 1, rows - {r})
            if sub.is_zero():
                continue
            term = entry * sub
            total = total + (term if pos % 2 == 0 else -term)
        memo[key] = total
        return total

    return rec(0, frozenset(range(n)))


def _perm_sign(seq: Sequence[int]) -> int:
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def pluecker_expansion(B: OrderedBasisB, left: List[List[Poly]],
                       q: Dict[Tuple[int, int], Poly] | None = None,
                       R: ReducedSystem | None = None) -> PlueckerExpansion:
    """All maximal minors of ``[left | I_a]`` indexed by ascending column tuples."""
    d, a = B.d, B.a
    rho: Dict[Tuple[int, ...], Poly] = {}
    for k in range(0, min(a, d) + 1):
        for J in itertools.combinations(range(1, d + 1), k):
            for free_rows in itertools.combinations(range(1, a + 1), k):
                sub = [[left[r - 1][c - 1] for c in J] for r in free_rows]
                if any(all(x.is_zero() for x in row) for row in sub):
                    continue
                det = _poly_det(sub)
                if det.is_zero():
                    continue
                id_rows = [r for r in range(1, a + 1) if r not in free_rows]
                S = [d + r for r in id_rows]
                T = tuple(sorted(J + tuple(S)))
                col_sign = _perm_sign(S + list(J))
                row_sign = _perm_sign(id_rows + list(free_rows))
                rho[T] = det if col_sign * row_sign == 1 else -det
    special = tuple(range(d + 1, d + a + 1))
    if rho.get(special) != Poly.const(1):
        raise QuivGrassError("the minor at the distinguished index is not 1")
    eps: Dict[Tuple[int, int], int] = {}
    hat: Dict[Tuple[int, int], Tuple[int, ...]] = {}
    if R is not None:
        for (kk, l), x in R.xvars.items():
            T = tuple(sorted([l] + [c for c in special if c != d + kk]))
            hat[(kk, l)] = T
            val = rho.get(T, Poly())
            X = Poly.var(x)
            if val == X:
                eps[(kk, l)] = 1
            elif val == -X:
                eps[(kk, l)] = -1
            else:
                raise QuivGrassError(f"minor {T} is {val}, expected ±{x}")
    return PlueckerExpansion(B, left, q or {}, rho, eps, hat)


def lift_to_pluecker(R: ReducedSystem) -> PlueckerExpansion:
    B = build_basis_B(R)
    left, q = complement_rows(B, R)
    return pluecker_expansion(B, left, q, R)


@dataclass
class SchubertSystem:
    expansion: PlueckerExpansion
    reduced: ReducedSystem
    chart: Poly                       # Z - 1
    coordinate_eqs: List[Poly]        # Y_T - rho_T(eps*Yhat), T not a hat index
    zero_coordinates: List[Poly]      # Y_T with rho_T = 0
    tau_eqs: List[Poly]               # tau(eps*Yhat)

    @property
    def z(self) -> Var:
        return y_var(self.expansion.special)

    @property
    def generators(self) -> List[Poly]:
        return [self.chart] + self.coordinate_eqs + self.zero_coordinates + self.tau_eqs

    @property
    def yhat(self) -> Dict[Tuple[int, int], Var]:
        return {kl: y_var(T) for kl, T in self.expansion.hat_index.items()}

    def x_to_yhat(self) -> Dict[Var, Poly]:
        E = self.expansion
        return {self.reduced.xvars[kl]: Poly.var(y_var(T)) * E.eps[kl]
                for kl, T in E.hat_index.items()}

    @property
    def variables(self) -> List[Var]:
        return [y_var(T) for T in self.expansion.all_indices()]


def schubert_system(E: PlueckerExpansion, R: ReducedSystem) -> SchubertSystem:
    special = E.special
    z = y_var(special)
    sub = {R.xvars[kl]: Poly.var(y_var(T)) * E.eps[kl] for kl, T in E.hat_index.items()}
    coord, zeros = [], []
    for T in E.all_indices():
        if T == special:
            continue
        rho = E.rho.get(T)
        if rho is None:
            zeros.append(Poly.var(y_var(T)))
            continue
        g = Poly.var(y_var(T)) - rho.subs(sub)
        if not g.is_zero():
            coord.append(g)
    taus = []
    for p in R.polys:
        t = p.subs(sub)
        if not t.is_zero():
            taus.append(t)
    return SchubertSystem(E, R, Poly.var(z) - 1, coord, zeros, taus)


@dataclass
class HomogeneousIdeal:
    generators: List[Poly]
    z: Var
    saturated: bool
    homogenized: List[Poly]
    already_saturated: Optional[bool] = None   # homogenized generators sufficed

    def dehomogenized(self) -> List[Poly]:
        return [g.dehomogenize(self.z) for g in self.generators]


def homogenize_and_saturate(S: SchubertSystem, max_steps: int = DEFAULT_MAX_STEPS) -> HomogeneousIdeal:
    z = S.z
    hom = [g.homogenize(z) for g in S.generators[1:]]
    try:
        sat = saturate(hom, Poly.var(z), max_steps=max_steps)
    except ResourceLimitExceeded:
        return HomogeneousIdeal(list(hom), z, False, hom, None)
    already = ideal_equal(hom, sat.generators, max_steps=max_steps) if hom else True
    return HomogeneousIdeal(list(sat.generators), z, True, hom, already)


# convenience --------------------------------------------------------------------

@dataclass
class LiftResult:
    reduced: ReducedSystem
    expansion: PlueckerExpansion
    schubert: SchubertSystem
    ideal: Optional[HomogeneousIdeal] = None


def projective_pipeline(pres: Presentation, sk: Skeleton, dimvec: Mapping[str, int] | None = None,
                        saturate_ideal: bool = True, extra: Sequence[Poly] = (),
                        max_steps: int = DEFAULT_MAX_STEPS) -> LiftResult:
    R = reduce_index_set(big_tau_system(pres, sk, dimvec))
    if extra:
        R = restrict_to_component(R, extra)
    E = lift_to_pluecker(R)
    S = schubert_system(E, R)
    H = homogenize_and_saturate(S, max_steps) if saturate_ideal else None
    return LiftResult(R, E, S, H)


def parametrization_residues(S: SchubertSystem, polys: Sequence[Poly]) -> List[Poly]:
    """Normal forms of ``polys`` under ``Y_T -> rho_T(eps X)``, ``Z -> 1`` modulo τ(εX)."""
    E, R = S.expansion, S.reduced
    eps_sub = {R.xvars[kl]: Poly.var(R.xvars[kl]) * E.eps[kl] for kl in E.hat_index}
    image = {y_var(T): E.rho.get(T, Poly()).subs(eps_sub) for T in E.all_indices()}
    image[S.z] = Poly.const(1)
    taus = [p.subs(eps_sub) for p in R.polys]
    from .polyring import normal_form as nf

    G = groebner(taus) if taus else None
    out = []
    for p in polys:
        r = p.subs(image)
        if G is not None and not r.is_zero():
            r = nf(r, G)
        out.append(r)
    return out
