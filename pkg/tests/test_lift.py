import itertools

import pytest
import sympy

from quivgrass import fixtures
from quivgrass.errors import EmptyVarietyError, PreconditionError, QuivGrassError
from quivgrass.grass import tau_system
from quivgrass.lift import (
    big_tau_system,
    build_basis_B,
    homogenize_and_saturate,
    lift_to_pluecker,
    parametrization_residues,
    projective_pipeline,
    reduce_index_set,
    restrict_to_component,
    schubert_system,
)
from quivgrass.polyring import Poly, Var, ideal_contains
from quivgrass.presentation import parse_presentation, parse_skeleton

CARLSON = fixtures.carlson()
A0 = fixtures.a0()


def sympy_minors(E):
    """Every maximal minor of [left | I_a], straight from sympy."""
    B = E.B
    names = {}

    def conv(p: Poly):
        if p.is_zero():
            return sympy.Integer(0)
        for v in p.variables():
            names.setdefault(str(v), sympy.Symbol(f"v{len(names)}"))
        text = str(p)
        for label, sym in sorted(names.items(), key=lambda kv: -len(kv[0])):
            text = text.replace(label, str(sym))
        return sympy.sympify(text.replace("^", "**"))

    rows = []
    for r in range(B.a):
        rows.append([conv(x) for x in E.left[r]] + [sympy.Integer(int(r == c)) for c in range(B.a)])
    M = sympy.Matrix(rows)
    out = {}
    for T in itertools.combinations(range(1, B.dim + 1), B.a):
        det = sympy.expand(M.extract(list(range(B.a)), [t - 1 for t in T]).det())
        if det != 0:
            out[T] = det
    return out, conv


@pytest.mark.parametrize("pres,text,dimvec", [
    (A0, "z1 @ 1 : ε, α", {"1": 2}),
    (CARLSON, "z1 @ 1 : ε, α", None),
    (CARLSON, "z1 @ 1 : ε; z2 @ 1 : ε", None),
])
def test_minors_match_sympy(pres, text, dimvec):
    R = reduce_index_set(big_tau_system(pres, parse_skeleton(text, pres), dimvec))
    E = lift_to_pluecker(R)
    ref, conv = sympy_minors(E)
    assert set(ref) == set(E.rho)
    for T, det in ref.items():
        assert sympy.expand(conv(E.rho[T]) - det) == 0, T


def test_a0_reduction_details():
    sk = parse_skeleton("z1 @ 1 : ε, α", A0)
    R = reduce_index_set(big_tau_system(A0, sk, {"1": 2}))
    assert [str(b) for b in R.sigma_prime] == ["b*z1", "z2"]
    assert R.N0 == [(1, 2), (2, 1), (2, 2)]
    assert R.polys == []
    B = build_basis_B(R)
    assert (B.d, B.u, B.v, B.a, B.dim) == (2, 2, 2, 4, 6)
    E = lift_to_pluecker(R)
    x12, x21 = Poly.var(R.xvars[(1, 2)]), Poly.var(R.xvars[(2, 1)])
    assert E.q[(1, 2)] == x21
    assert E.q[(2, 2)] == x12 * x21


def test_carlson_line_lift():
    sk = parse_skeleton("z1@1: ε, α", CARLSON)
    res = projective_pipeline(CARLSON, sk)
    B = res.expansion.B
    assert [str(b) for b in B.sigma_prime] == ["b*z1", "b*a*z1", "z2"]
    assert [str(b) for b in B.completion] == ["a*z2", "b*z2", "b*a*z2"]
    assert (B.dim, B.a) == (8, 6)
    assert res.ideal.saturated
    S = res.schubert
    assert all(r.is_zero() for r in parametrization_residues(S, S.generators))
    assert all(r.is_zero() for r in parametrization_residues(S, res.ideal.generators))
    hom = [g.homogenize(S.z) for g in S.generators[1:]]
    assert ideal_contains(res.ideal.generators, hom)


def test_preconditions():
    sk = parse_skeleton("z1 @ 1 : ε, α", A0)
    with pytest.raises(PreconditionError):
        reduce_index_set(tau_system(A0, sk))
    with pytest.raises(EmptyVarietyError):
        reduce_index_set(big_tau_system(CARLSON, parse_skeleton("z1@1: ε, a, a*a", CARLSON)))


def test_semisimple_cover_has_no_chart():
    pres = parse_presentation("[quiver]\nvertex 1\n[loewy]\nL = 0\n")
    sk = parse_skeleton("z1@1: ε", pres)
    R = reduce_index_set(big_tau_system(pres, sk))
    with pytest.raises(PreconditionError):
        build_basis_B(R)


def test_restrict_to_component():
    sk = parse_skeleton("z1 @ 1 : ε, α", A0)
    R = reduce_index_set(big_tau_system(A0, sk, {"1": 2}))
    x22 = Poly.var(R.xvars[(2, 2)])
    R2 = restrict_to_component(R, [x22])
    assert R2.polys == [x22]
    E = lift_to_pluecker(R2)
    S = schubert_system(E, R2)
    H = homogenize_and_saturate(S)
    assert any(str(g) == "Y[2,3,5,6]" for g in H.generators)
    with pytest.raises(QuivGrassError):
        restrict_to_component(R, [Poly.var(Var("X", (99,), "stranger"))])


def test_step_cap_reports_unsaturated():
    sk = parse_skeleton("z1@1: ε, α", CARLSON)
    res = projective_pipeline(CARLSON, sk, max_steps=1)
    assert res.ideal.saturated is False
    assert res.ideal.generators == res.ideal.homogenized
