from __future__ import annotations

from hypothesis import given

from axiomcat import corpus
from axiomcat.fincat import (FiniteCategory, is_isomorphism, is_pullback, make_category, mediate,
                             pullback, pullback_comparison, terminal_object, validate_category)

from conftest import lattices, preorders


def corrupt(c: FiniteCategory, key, value) -> FiniteCategory:
    comp = dict(c.composition)
    comp[key] = value
    return FiniteCategory(c.objects, c.morphisms, c.identities, comp, c.name)


def test_validate_corpus():
    for build in (corpus.point, corpus.arrow, corpus.chain3, corpus.diamond, corpus.interval,
                  corpus.z2, corpus.cospan, corpus.discrete_two):
        assert validate_category(build()) == []


def test_validate_reports_broken_composite():
    c = corrupt(corpus.chain3(), ("b<c", "a<b"), "a<b")
    out = validate_category(c)
    assert out
    assert any("b<c" in v.items and "a<b" in v.items for v in out)


def test_validate_reports_nonassociative_table():
    # two endomorphisms with a table that is closed but not associative
    c = make_category(["*"], {"e": ("*", "*"), "f": ("*", "*")},
                      {("e", "e"): "f", ("e", "f"): "e", ("f", "e"): "f", ("f", "f"): "f"})
    assert any(v.rule == "associativity" for v in validate_category(c))


def test_validate_missing_composite():
    c = corpus.chain3()
    comp = dict(c.composition)
    del comp[("b<c", "a<b")]
    bad = FiniteCategory(c.objects, c.morphisms, c.identities, comp)
    assert [v.rule for v in validate_category(bad)] == ["composition-total"]


def test_terminal_examples():
    assert terminal_object(corpus.point()) == "*"
    assert terminal_object(corpus.arrow()) == "B"
    assert terminal_object(corpus.discrete_two()) is None
    assert terminal_object(corpus.interval()) == "0"
    assert terminal_object(corpus.z2()) is None


@given(preorders())
def test_terminal_has_singleton_homs(c):
    t = terminal_object(c)
    if t is not None:
        assert all(len(c.hom(x, t)) == 1 for x in c.objects)
        assert all(t <= u for u in c.objects if all(len(c.hom(x, u)) == 1 for x in c.objects))
    else:
        assert not any(all(len(c.hom(x, u)) == 1 for x in c.objects) for u in c.objects)


def test_pullback_of_identities():
    c = corpus.arrow()
    pb = pullback(c, "id_B", "id_B")
    assert (pb.apex, pb.proj_left, pb.proj_right) == ("B", "id_B", "id_B")


def test_cospan_has_no_pullback():
    assert pullback(corpus.cospan(), "f", "g") is None


@given(lattices())
def test_pullback_is_meet(data):
    c, value = data
    by_value = {v: k for k, v in value.items()}
    for x in c.objects:
        for y in c.objects:
            top = by_value[max(value.values())]
            f = c.hom(x, top)[0]
            g = c.hom(y, top)[0]
            pb = pullback(c, f, g)
            assert pb is not None
            assert value[pb.apex] == value[x] & value[y]


@given(preorders())
def test_pullback_universal_and_symmetric(c):
    for z in c.objects:
        for f in c.into(z):
            for g in c.into(z):
                pb = pullback(c, f, g)
                swapped = pullback(c, g, f)
                assert (pb is None) == (swapped is None)
                if pb is None:
                    continue
                assert c.compose(f, pb.proj_left) == c.compose(g, pb.proj_right)
                assert is_pullback(c, f, g, pb.proj_left, pb.proj_right)
                # the swapped square is a pullback of (f, g) too; the comparison is an iso
                flip = type(pb)(swapped.apex, swapped.proj_right, swapped.proj_left, (f, g))
                assert pullback_comparison(c, flip, pb) is not None


def test_mediate_unique():
    c = corpus.diamond()
    pb = pullback(c, "x<top", "y<top")
    assert pb.apex == "bot"
    assert mediate(c, pb, "id_bot" if False else "bot<x", "bot<y") == "id_bot"


def test_is_isomorphism_examples():
    assert is_isomorphism(corpus.arrow(), "id_A") == (True, "id_A")
    assert is_isomorphism(corpus.arrow(), "A<B") == (False, None)
    c = corpus.interval()
    assert is_isomorphism(c, "i") == (True, "j")
    assert is_isomorphism(c, "j") == (True, "i")
    assert is_isomorphism(corpus.z2(), "n") == (True, "n")
