from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from axiomcat import corpus
from axiomcat.dispcat import DispCat, all_maps, identities
from axiomcat.errors import NoPathObjectError
from axiomcat.fincat import composable_triples
from axiomcat.pathcat import (PathCat, PathObjectWitness, check_dmpc_axioms, check_path_axioms,
                              check_saturation, check_two_out_of_six, find_path_object,
                              homotopic, homotopy_equivalences, homotopy_relation,
                              object_path_object, path_object_violations, path_objects)

from conftest import preorders


def two_of_six_oracle(c, eq):
    bad = set()
    for f, g, h in composable_triples(c):
        if c.compose(g, f) in eq and c.compose(h, g) in eq:
            if not {f, g, h, c.compose(h, g, f)} <= eq:
                bad.add((f, g, h))
    return bad


def test_two_of_six_examples():
    for build in (corpus.chain3, corpus.diamond, corpus.interval, corpus.z2):
        c = build()
        assert check_two_out_of_six(c, c.isomorphisms).ok
        assert check_two_out_of_six(c, all_maps(c)).ok
    c = corpus.interval()
    rep = check_two_out_of_six(c, identities(c))
    assert not rep.ok
    assert {v.items for v in rep.counterexamples()} == two_of_six_oracle(c, identities(c))


@given(preorders(), st.data())
def test_two_of_six_matches_oracle(c, data):
    eq = frozenset(data.draw(st.lists(st.sampled_from(sorted(c.morphisms)), unique=True)))
    rep = check_two_out_of_six(c, eq)
    assert {v.items for v in rep.counterexamples()} == two_of_six_oracle(c, eq)


def test_path_axioms_corpus(paths):
    for name, p in paths.items():
        rep = check_path_axioms(p)
        assert rep.ok, (name, rep.summary_lines())
        assert check_saturation(p).ok


def test_path_axioms_corrupted():
    fixtures = corpus.corrupted_path_fixtures()
    rep = check_path_axioms(fixtures["arrow-eq-all"])
    assert [v.items for v in rep.counterexamples() if v.rule == "section"] == [("A<B",)]
    rep = check_path_axioms(fixtures["interval-eq-ids"])
    rules = {v.rule for v in rep.counterexamples()}
    assert {"iso", "2-out-of-6"} <= rules


def test_missing_terminal_is_named():
    c = corpus.discrete_two()
    p = PathCat(DispCat(c, all_maps(c)), c.isomorphisms)
    rep = check_path_axioms(p)
    assert any(v.rule == "terminal" for v in rep.counterexamples())


def test_find_path_object_trivial():
    p = corpus.path_corpus()["arrow"]
    w = find_path_object(p, "A<B")
    assert w == PathObjectWitness("A<B", "A", "id_A", "id_A", "id_A")
    assert path_object_violations(p, w) == []


def test_path_object_violations_detected():
    p = corpus.path_corpus()["arrow"]
    assert path_object_violations(p, PathObjectWitness("id_B", "B", "id_B", "A<B", "id_B"))
    p2 = corpus.path_corpus()["chain3"]
    assert path_object_violations(p2, PathObjectWitness("a<c", "b", "a<b", "a<b", "a<b")) == [
        "s or t has the wrong type"]


def test_tabled_path_object_wins():
    c = corpus.interval()
    table = {"i": PathObjectWitness("i", "1", "i", "j", "j")}
    p = PathCat(DispCat(c, all_maps(c)), c.isomorphisms, table)
    assert find_path_object(p, "i").P == "1"
    assert path_object_violations(p, table["i"]) == []


def test_homotopy_reflexive(paths):
    for p in paths.values():
        c = p.cat
        for f in c.sorted_morphisms:
            pa = object_path_object(p, c.cod(f))
            h = homotopic(p, f, f, path=pa)
            assert h is not None
            assert h.h == c.compose(pa.r, f) or c.compose(pa.s, h.h) == f


def test_homotopic_needs_terminal():
    c = corpus.discrete_two()
    p = PathCat(DispCat(c, all_maps(c)), c.isomorphisms)
    with pytest.raises(NoPathObjectError):
        homotopic(p, "id_P", "id_P")


def test_homotopy_relation_independent_of_path_object(paths):
    checked = 0
    for p in paths.values():
        c = p.cat
        for x in c.sorted_objects:
            ws = list(path_objects(p, p.to_terminal(x)))
            rels = {homotopy_relation(p, w) for w in ws}
            assert len(rels) == 1
            checked += len(ws) >= 2
    assert checked >= 2


def test_source_target_are_trivial_fibrations(paths):
    for p in paths.values():
        c = p.cat
        for x in c.sorted_objects:
            w = object_path_object(p, x)
            assert w.s in p.trivial_fibrations and w.t in p.trivial_fibrations


def test_saturation_violation():
    c = corpus.arrow()
    p = PathCat(DispCat(c, all_maps(c)), all_maps(c))
    rep = check_saturation(p)
    assert [v.items for v in rep.counterexamples()] == [("A<B",)]
    assert homotopy_equivalences(corpus.path_corpus()["arrow"]) == identities(c)


def test_dmpc_corpus(dmpcs):
    for name, p in dmpcs.items():
        assert check_dmpc_axioms(p.clan, p.equivalences).ok, name


def test_dmpc_violation_without_path_display_maps():
    # {A<B} alone is not pullback stable and its fibre diagonal id_A is not a display map
    c = corpus.arrow()
    rep = check_dmpc_axioms(DispCat(c, frozenset({"A<B"})), c.isomorphisms)
    ax5 = rep.find("path-display-maps")
    assert [v.items for v in ax5.violations] == [("A<B",)]
    assert rep.find("path-fibrations").ok
