from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quivgrass import fixtures
from quivgrass.paths import PathError, ProjPath, QPath, TopFrame, compose, top_element

CARLSON = fixtures.carlson()
A0 = fixtures.a0()

words = st.lists(st.sampled_from(["a", "b"]), max_size=6)


def carlson_oracle(word):
    # Carlson algebra = K[a, b]/(a^2, b^2) (commutative): a word is zero iff a letter repeats
    if len(word) != len(set(word)):
        return {}
    if len(word) == 2:
        return {("b", "a"): Fraction(1)}
    return {tuple(word): Fraction(1)}


def as_words(nf):
    return {p.word: c for p, c in nf.items()}


@given(words)
def test_carlson_normal_form_matches_oracle(word):
    p = CARLSON.quiver.path(word, "1")
    assert as_words(CARLSON.normal_form(p)) == carlson_oracle(word)


@given(words)
def test_a0_kills_length_two(word):
    nf = A0.normal_form(A0.quiver.path(word, "1"))
    assert (nf == {}) == (len(word) >= 2)


@given(words)
def test_normal_forms_are_irreducible_and_stable(word):
    pres = CARLSON
    nf = pres.normal_form(pres.quiver.path(word, "1"))
    for q, c in nf.items():
        assert c != 0
        assert q.length <= pres.loewy
        assert pres.rewriter.is_irreducible(q.word)
        assert pres.normal_form(q) == {q: Fraction(1)}


@given(words, words)
def test_normal_form_respects_composition(w1, w2):
    pres = CARLSON
    p, q = pres.quiver.path(w1, "1"), pres.quiver.path(w2, "1")
    direct = pres.normal_form(compose(p, q))
    staged = {}
    for r, c in pres.normal_form(q).items():
        for s, d in pres.normal_form(compose(p, r)).items():
            staged[s] = staged.get(s, 0) + c * d
    assert direct == {k: v for k, v in staged.items() if v}


def test_written_order_is_composition():
    p = CARLSON.quiver.path(["b", "a"], "1")
    assert p.traversal() == ("a", "b")
    assert str(p) == "b*a"
    assert p.prefix(1).word == ("a",)


def test_bad_composition():
    from quivgrass.presentation import parse_presentation
    from test_presentation import TWO_VERTEX

    pres = parse_presentation(TWO_VERTEX)
    with pytest.raises(PathError):
        pres.quiver.path(["a", "a"], "1")
    a = pres.quiver.path(["a"], "1")
    with pytest.raises(PathError):
        compose(a, a)
    assert compose(pres.quiver.path(["b"], "2"), a).word == ("b", "a")


def test_proj_paths():
    frame = TopFrame(("1", "1"), 2)
    z2 = top_element(frame, 2)
    assert str(z2) == "z2" and z2.length == 0
    arrow_a = CARLSON.quiver.arrow("a")
    az2 = z2.extend(arrow_a)
    assert str(az2) == "a*z2" and az2.prefix(0) == z2
    assert az2.after(CARLSON.quiver.path(["b"], "1")) == ProjPath(2, CARLSON.quiver.path(["b", "a"], "1"))


def test_frame_extension():
    frame = TopFrame(("1",), 1)
    big = frame.extended({"1": 3}, ("1",))
    assert big.d == 3 and big.t == 1
    assert list(big.tops(big=True)) == [1, 2, 3]
    assert list(big.tops()) == [1]
