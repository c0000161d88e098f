import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quivgrass import fixtures
from quivgrass.errors import QuivGrassError
from quivgrass.grass import (
    GrassPoint,
    detect_affine_space,
    path_matrix,
    random_point,
    solve_point,
    tau_system,
    to_rep_point,
    verify_rep_point,
)
from quivgrass.polyring import Poly, Var
from quivgrass.presentation import parse_presentation, parse_skeleton
from quivgrass.skeleta import all_skeleta

CARLSON = fixtures.carlson()


def test_example_records(example_skeleton):
    T = tau_system(CARLSON, example_skeleton)
    assert len(T.records) == 9
    keys = [(r.m, r.relation, r.l) for r in T.records]
    assert keys == sorted(keys)
    shortcuts = {(r.m, r.relation) for r in T.records if r.shortcut}
    # a*a*z1, b*b*z1 and a*a*z2 are critical; b*b*z2 is not (b*z2 is)
    assert shortcuts == {(1, 0), (1, 1), (2, 0)}
    assert T.provenance(T.records[2]) == "rho=a*b - b*a m=1 l=4"
    # 3 relations x 3 tops x 7 members, all but the 9 records vanish
    assert T.zero_count == 3 * 3 * 7 - 9


def test_example_solution(example_skeleton):
    T = tau_system(CARLSON, example_skeleton)
    cert = detect_affine_space(T)
    assert cert.dimension == 8
    assert len(cert.substitutions) == 9
    free = {str(v) for v in cert.free}
    assert "X[b*a*z2;b*a*z1]" in free and "X[b*z3;b*z1]" in free


def test_detect_empty_and_inconclusive():
    x, y = Var("X", (0,), "x"), Var("X", (1,), "y")
    X, Y = Poly.var(x), Poly.var(y)
    assert detect_affine_space([X - 1, X - 2]).empty
    assert detect_affine_space([X * Y - 1]) is None
    assert detect_affine_space([X * X]) is None
    sol = detect_affine_space([X - Y * Y, Y - 3])
    assert sol.as_dict() == {x: Poly.const(9), y: Poly.const(3)}


def test_empty_skeleton_variety():
    sk = parse_skeleton("z1@1: ε, a, a*a", CARLSON)
    cert = detect_affine_space(tau_system(CARLSON, sk))
    assert cert is not None and cert.empty


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(0, 3), st.randoms(use_true_random=False))
def test_detect_recovers_planted_triangular_systems(n_solved, n_free, rnd):
    free = [Var("X", (100 + i,), f"f{i}") for i in range(n_free)]
    solved = [Var("X", (i,), f"s{i}") for i in range(n_solved)]
    polys = []
    known = list(free)
    for v in solved:
        rhs = Poly.const(rnd.randint(-3, 3))
        for w in known:
            rhs = rhs + Poly.var(w) * rnd.randint(-2, 2) * (Poly.var(w) if rnd.random() < 0.3 else 1)
        polys.append(Poly.var(v) * rnd.choice([1, 2, -3]) - rhs)
        known.append(v)
    rnd.shuffle(polys)
    cert = detect_affine_space(polys, solved + free)
    assert cert is not None and not cert.empty
    assert cert.dimension == n_free
    point = {w: Fraction(rnd.randint(-5, 5)) for w in cert.free}
    for v, val in cert.substitutions:
        point[v] = val.evaluate(point)
    assert all(p.evaluate(point) == 0 for p in polys)


def test_points_and_matrices(example_skeleton):
    T = tau_system(CARLSON, example_skeleton)
    cert = detect_affine_space(T)
    rng = random.Random(5)
    pt = random_point(T, cert, rng)
    rep = to_rep_point(pt)
    assert verify_rep_point(rep, CARLSON)
    a = path_matrix(rep, CARLSON.quiver.path(["a"], "1"))
    assert len(a) == 7 and len(a[0]) == 7
    # the arrow matrices commute in this algebra
    ab = path_matrix(rep, CARLSON.quiver.path(["a", "b"], "1"))
    ba = path_matrix(rep, CARLSON.quiver.path(["b", "a"], "1"))
    assert ab == ba


def test_corrupted_point_is_rejected(example_skeleton):
    T = tau_system(CARLSON, example_skeleton)
    cert = detect_affine_space(T)
    pt = solve_point(T, cert, {v: Fraction(1) for v in cert.free})
    values = dict(pt.values)
    target = next(v for v, _ in cert.substitutions if str(v) == "X[a*b*z1;b*a*z1]")
    values[target] = Fraction(2)
    with pytest.raises(QuivGrassError):
        GrassPoint(T, values)
    rep = to_rep_point(pt)
    bad = {k: [row[:] for row in m] for k, m in rep.matrices.items()}
    bad["a"][1][0] += 1
    rep.matrices = bad
    assert not verify_rep_point(rep, CARLSON)


def test_two_vertex_oracle():
    from test_presentation import TWO_VERTEX

    pres = parse_presentation(TWO_VERTEX)
    rng = random.Random(9)
    for dv in ({"1": 1, "2": 1}, {"1": 2, "2": 1}, {"1": 2, "2": 2}):
        for sk in all_skeleta(pres, dv):
            T = tau_system(pres, sk)
            cert = detect_affine_space(T)
            assert cert is not None
            if cert.empty:
                continue
            for _ in range(10):
                assert verify_rep_point(to_rep_point(random_point(T, cert, rng)), pres)


def test_big_setting_reuses_small_polynomials(example_skeleton):
    small = tau_system(CARLSON, example_skeleton)
    big = tau_system(CARLSON, example_skeleton, "big")
    assert len(big.variables) > len(small.variables)
    assert [r.poly for r in big.records] == [r.poly for r in small.records]


def test_determinism(example_skeleton):
    a = tau_system(CARLSON, example_skeleton)
    b = tau_system(fixtures.carlson(), fixtures.carlson_example_skeleton())
    assert [str(p) for p in a.polys] == [str(p) for p in b.polys]
    assert [str(v) for v in a.variables] == [str(v) for v in b.variables]
