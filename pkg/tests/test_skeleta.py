import itertools

import pytest
from hypothesis import given, settings, strategies as st

from quivgrass import fixtures
from quivgrass.errors import PreconditionError
from quivgrass.paths import ProjPath
from quivgrass.presentation import all_paths, parse_presentation, parse_skeleton
from quivgrass.skeleta import (
    SemisimpleSequence,
    all_skeleta,
    critical_paths,
    dominance_leq,
    enumerate_skeleta,
    is_normalized,
    semisimple_sequences,
)

CARLSON = fixtures.carlson()


def brute_force_N(sk, pres):
    """Count pairs (critical path, companion) straight from the definitions."""
    total = 0
    for r in sk.frame.tops():
        for q in all_paths(pres.quiver, pres.loewy, sk.frame.e(r)):
            b = ProjPath(r, q)
            if b in sk or any(b.prefix(k) not in sk for k in range(b.length)):
                continue
            total += sum(1 for s in sk.members if s.end == b.end and s.length >= b.length)
    return total


def test_example_N_is_17(example_skeleton):
    assert brute_force_N(example_skeleton, CARLSON) == 17
    crits = critical_paths(example_skeleton, CARLSON)
    assert sum(len(c.companions) for c in crits) == 17


def test_N_matches_brute_force_everywhere():
    for d in range(1, 6):
        for sk in all_skeleta(CARLSON, {"1": d}):
            crits = critical_paths(sk, CARLSON)
            assert sum(len(c.companions) for c in crits) == brute_force_N(sk, CARLSON)


def test_sseq_parse_and_invariants():
    s = SemisimpleSequence.parse("1;2;1", ("1",))
    assert s.d == 4 and s.t == 1 and s.dimvec == {"1": 4}
    assert str(SemisimpleSequence.parse(str(s), ("1",))) == str(s)


def test_dominance():
    v = ("1",)
    semisimple = SemisimpleSequence.parse("4", v)
    a = SemisimpleSequence.parse("2;2", v)
    b = SemisimpleSequence.parse("1;2;1", v)
    assert dominance_leq(a, b) and not dominance_leq(b, a)
    assert all(dominance_leq(semisimple, s) for s in semisimple_sequences(v, {"1": 4}, 3))
    with pytest.raises(ValueError):
        dominance_leq(a, SemisimpleSequence.parse("1;1", v))


def test_enumeration_small_cases():
    v = CARLSON.vertices
    got = enumerate_skeleta(SemisimpleSequence.parse("1;1", v), CARLSON)
    assert sorted(str(s) for s in got) == ["{z1, a*z1}", "{z1, b*z1}"]
    got = enumerate_skeleta(SemisimpleSequence.parse("1;2;1", v), CARLSON)
    assert len(got) == 4
    assert "{z1, a*z1, b*z1, b*a*z1}" in {str(s) for s in got}


def _brute_skeleta(pres, sseq):
    # every subset of paths from the top frame, filtered by closure and layering
    from quivgrass.paths import TopFrame

    frame = TopFrame.from_counts(pres.vertices, sseq.top)
    pool = [ProjPath(r, q) for r in frame.tops() for q in all_paths(pres.quiver, pres.loewy, frame.e(r))]
    out = set()
    for subset in itertools.combinations(pool, sseq.d):
        s = set(subset)
        if any(b.prefix(k) not in s for b in s for k in range(b.length)):
            continue
        layers = [0] * (pres.loewy + 1)
        for b in s:
            layers[b.length] += 1
        want = [row[0] for row in sseq.padded(pres.loewy + 1)]
        if layers == want:
            out.add(frozenset(subset))
    return out


@pytest.mark.parametrize("text", ["1", "1;1", "2", "1;2", "2;1", "1;2;1", "2;2", "2;1;1", "2;2;1"])
def test_enumeration_matches_brute_force(text):
    sseq = SemisimpleSequence.parse(text, CARLSON.vertices)
    got = {frozenset(sk.members) for sk in enumerate_skeleta(sseq, CARLSON)}
    assert got == _brute_skeleta(CARLSON, sseq)


def test_dedup_collapses_permutations():
    sseq = SemisimpleSequence.parse("2;2", CARLSON.vertices)
    full = enumerate_skeleta(sseq, CARLSON)
    dedup = enumerate_skeleta(sseq, CARLSON, dedup=True)
    assert len(dedup) < len(full)
    assert {s for s in dedup} <= set(full)


def test_semisimple_sequences_cover_dimvec():
    seqs = semisimple_sequences(("1",), {"1": 3}, 3)
    assert all(s.d == 3 for s in seqs)
    assert {str(s) for s in seqs} >= {"3", "2;1", "1;2", "1;1;1"}


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 5))
def test_skeleton_invariants(d):
    for sk in all_skeleta(CARLSON, {"1": d}):
        assert sk.d == d
        members = set(sk.members)
        for b in sk.members:
            assert all(b.prefix(k) in members for k in range(b.length))
        assert list(sk.members) == sorted(sk.members, key=CARLSON.proj_key)
        assert parse_skeleton(sk.format(), CARLSON) == sk


def test_big_minus_small(example_skeleton):
    small = critical_paths(example_skeleton, CARLSON)
    big = critical_paths(example_skeleton, CARLSON, "big")
    assert len(big) - len(small) == example_skeleton.d - example_skeleton.t
    assert [str(c.path) for c in big[len(small):]] == ["z4", "z5", "z6", "z7"]


def test_normalized(example_skeleton):
    ok, low, full = is_normalized(example_skeleton, CARLSON)
    assert ok and low == (2, 3) and full == (1,)
    bad = parse_skeleton("z1@1: ε, a, a*a", CARLSON)
    assert not is_normalized(bad, CARLSON)[0]
    # the wrong second-layer path: b*a and a*b agree in A, a*a does not
    assert not is_normalized(parse_skeleton("z1@1: ε, a, b, a*a", CARLSON), CARLSON)[0]
    assert is_normalized(parse_skeleton("z1@1: ε, a, b, a*b", CARLSON), CARLSON)[0]


def test_normalized_preconditions(a0):
    with pytest.raises(PreconditionError):
        is_normalized(parse_skeleton("z1@1: ε", a0), a0)


def test_two_vertex_enumeration():
    from test_presentation import TWO_VERTEX

    pres = parse_presentation(TWO_VERTEX)
    sks = all_skeleta(pres, {"1": 1, "2": 1})
    assert sorted(str(s) for s in sks) == ["{z1, a*z1}", "{z1, b*z1}", "{z1, z2}"]
    assert {sk.frame.norms for sk in sks} == {("1", "2"), ("1",), ("2",)}
