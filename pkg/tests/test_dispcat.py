from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from axiomcat import corpus
from axiomcat.dispcat import (DispCat, Reindexing, all_maps, canonical_structure,
                              check_display_axioms, check_root, check_split, fibration_closure,
                              identities, reindex, reindex_term, repletion, telescope, telescopes)
from axiomcat.errors import NotStructuredError
from axiomcat.fincat import is_pullback, pullback_comparison, PullbackWitness, sections

from conftest import preorders


def iso_square_oracle(c, s):
    """Independent repletion: close under f' = j f i⁻¹ for all isos until stable."""
    out = set(s)
    while True:
        new = {c.compose(j, f, i) for f in out for i in c.isomorphisms for j in c.isomorphisms
               if c.cod(i) == c.dom(f) and c.dom(j) == c.cod(f)}
        if new <= out:
            return frozenset(out)
        out |= new


def test_repletion_examples():
    assert repletion(corpus.point(), {"id_*"}) == {"id_*"}
    assert repletion(corpus.interval(), {"i"}) == {"i", "j", "id_0", "id_1"}
    assert repletion(corpus.interval(), set()) == frozenset()


@given(preorders(), st.data())
def test_repletion_idempotent_monotone(c, data):
    s = set(data.draw(st.lists(st.sampled_from(sorted(c.morphisms)), unique=True)))
    t = s | set(data.draw(st.lists(st.sampled_from(sorted(c.morphisms)), unique=True)))
    r = repletion(c, s)
    assert repletion(c, r) == r
    assert r <= repletion(c, t)
    assert r == iso_square_oracle(c, s)


def test_repletion_oracle_interval():
    c = corpus.interval()
    for f in c.morphisms:
        assert repletion(c, {f}) == iso_square_oracle(c, {f})


def test_display_axioms_examples():
    for name in corpus.FINITE_LIMIT:
        c = corpus.BUILDERS[name]()
        assert check_display_axioms(DispCat(c, all_maps(c))).ok
        assert check_display_axioms(DispCat(c, frozenset(c.isomorphisms))).ok
    c = corpus.arrow()
    rep = check_display_axioms(DispCat(c, frozenset({"A<B"})))
    assert not rep.ok
    assert any(v.rule == "pullback-stable" for v in rep.counterexamples())


def test_display_axioms_unknown_member():
    rep = check_display_axioms(DispCat(corpus.point(), frozenset({"nope"})))
    assert [v.rule for v in rep.counterexamples()] == ["membership"]


def test_reindex_along_identity_and_terms():
    c = corpus.diamond()
    d = DispCat(c, all_maps(c))
    re = reindex(d, "x<top", "id_top")
    assert c.morphisms[re.display] == ("x", "top")
    for p in sorted(d.display):
        for sigma in c.into(c.cod(p)):
            re = reindex(d, p, sigma)
            assert re.display in d.display
            assert c.compose(p, re.top) == c.compose(sigma, re.display)
            for a in sections(c, p):
                t = reindex_term(d, p, a, sigma)
                assert c.compose(re.display, t) == c.identity(c.dom(sigma))
                assert c.compose(re.top, t) == c.compose(a, sigma)


def test_reindex_pasting_iso():
    c = corpus.diamond()
    d = DispCat(c, all_maps(c))
    for p in sorted(d.display):
        for sigma in c.into(c.cod(p)):
            for tau in c.into(c.dom(sigma)):
                whole = reindex(d, p, c.compose(sigma, tau))
                first = reindex(d, p, sigma)
                second = reindex(d, first.display, tau)
                a = PullbackWitness(c.dom(second.display), second.display,
                                    c.compose(first.top, second.top), (c.compose(sigma, tau), p))
                b = PullbackWitness(c.dom(whole.display), whole.display, whole.top,
                                    (c.compose(sigma, tau), p))
                assert is_pullback(c, c.compose(sigma, tau), p, a.proj_left, a.proj_right)
                assert pullback_comparison(c, a, b) is not None


def closure_oracle(c, s):
    rel = set(s) | set(c.identities.values())
    while True:
        new = {c.compose(g, f) for f in rel for g in rel if c.cod(f) == c.dom(g)} - rel
        if not new:
            return frozenset(rel)
        rel |= new


def test_fibration_closure_examples():
    c = corpus.chain3()
    assert fibration_closure(DispCat(c, all_maps(c))) == all_maps(c)
    assert fibration_closure(DispCat(c, frozenset())) == identities(c)
    assert fibration_closure(DispCat(c, frozenset({"a<b", "b<c"}))) == all_maps(c)


@given(preorders(), st.data())
def test_fibration_closure_matches_oracle(c, data):
    s = frozenset(data.draw(st.lists(st.sampled_from(sorted(c.morphisms)), unique=True)))
    d = DispCat(c, s)
    fc = fibration_closure(d)
    assert fc == closure_oracle(c, s)
    assert fibration_closure(DispCat(c, fc)) == fc


def test_root_examples():
    c = corpus.diamond()
    assert check_root(DispCat(c, all_maps(c))).ok
    c = corpus.discrete_two()
    assert not check_root(DispCat(c, identities(c))).ok
    c = corpus.arrow()
    assert check_root(DispCat(c, frozenset({"A<B"}))).ok


def test_telescope_decomposition():
    c = corpus.chain3()
    d = DispCat(c, identities(c) | {"a<b", "b<c"})
    assert telescope(d, "a<c") == ["b<c", "a<b"]
    assert telescope(d, "id_c") == []
    chains = telescopes(d, "c", 2)
    for ch in chains:
        assert c.cod(ch[0]) == "c"


def test_split_requires_structure():
    c = corpus.point()
    with pytest.raises(NotStructuredError):
        check_split(DispCat(c, all_maps(c)))


def test_split_one_object():
    c = corpus.point()
    d = DispCat(c, all_maps(c), {"id_*": "id_*"},
                {("id_*", "id_*"): Reindexing("id_*", "id_*", "id_*")})
    assert check_display_axioms(d).ok
    assert check_split(d).ok


def test_canonical_structure_on_poset_is_split():
    for name in ("arrow", "chain3", "diamond"):
        c = corpus.BUILDERS[name]()
        d = canonical_structure(DispCat(c, all_maps(c)))
        assert check_display_axioms(d).ok
        assert check_split(d).ok


def test_non_split_choice_is_named():
    # canonical pullbacks over the interval pick apex 0 even along id_1, so id_1[id] ≠ id_1
    c = corpus.interval()
    d = canonical_structure(DispCat(c, all_maps(c)))
    assert check_display_axioms(d).ok
    rep = check_split(d)
    assert not rep.ok
    bad = {v.items[0] for v in rep.counterexamples() if v.rule == "split-identity"}
    assert "id_1" in bad
