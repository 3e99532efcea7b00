from __future__ import annotations

import pytest

from axiomcat import corpus
from axiomcat.constructions import (LiftProblem, check_equivalent_axioms, factorize, lift,
                                    lifting_problems, slice_fib, synthesize_along_telescope,
                                    synthesize_path_fibration, transport, unit_path_object)
from axiomcat.correspondence import path_to_dispcat
from axiomcat.dispcat import telescopes
from axiomcat.errors import PreconditionError
from axiomcat.fincat import functor_violations, is_isomorphism_of_categories
from axiomcat.pathcat import (PathCat, check_path_axioms, homotopic, homotopy_equivalences,
                              path_object_violations)


def test_factorize_identity():
    p = corpus.path_corpus()["arrow"]
    fac = factorize(p, "id_A")
    assert fac.Lf == "A" and fac.w == "id_A" and fac.p == "id_A"


def test_factorize_interval():
    p = corpus.path_corpus()["interval"]
    fac = factorize(p, "i")
    c = p.cat
    assert c.compose(fac.p, fac.w) == "i"
    assert fac.w in c.isomorphisms


def test_factorize_exhaustive(paths):
    for p in paths.values():
        c = p.cat
        heq = homotopy_equivalences(p)
        for f in c.sorted_morphisms:
            fac = factorize(p, f)
            assert c.compose(fac.p, fac.w) == f
            assert fac.w in heq
            assert fac.p in p.fibrations
            # w_f is a section of the trivial fibration π0
            assert c.compose(fac.square.proj_left, fac.w) == c.identity(c.dom(f))
            assert fac.square.proj_left in p.trivial_fibrations


def test_lift_along_identity_is_f(paths):
    for p in paths.values():
        c = p.cat
        for q in sorted(p.fibrations):
            for f in c.into(c.dom(q)):
                x = c.dom(f)
                sol = lift(p, LiftProblem(c.identity(x), f, q, c.compose(q, f)))
                assert sol.lift == f


def test_lift_rejects_noncommuting_square():
    p = corpus.path_corpus()["chain3"]
    with pytest.raises(PreconditionError):
        lift(p, LiftProblem("id_a", "a<b", "b<c", "a<b"))


def test_lift_uniqueness_exhaustive(paths):
    solved = 0
    for p in paths.values():
        for prob in lifting_problems(p):
            sol = lift(p, prob)
            assert sol.unique_up_to_homotopy
            for l in sol.candidates:
                assert homotopic(p, l, sol.lift, over=prob.p) is not None
            solved += 1
    assert solved == 47


def test_transport_over_terminal_is_identity():
    p = corpus.path_corpus()["chain3"]
    tw = transport(p, "a<c")
    assert tw.Lp == "a"
    assert tw.tau == "id_a"


def test_transport_interval():
    p = corpus.path_corpus()["interval"]
    c = p.cat
    for q in ("i", "j", "id_0", "id_1"):
        tw = transport(p, q)
        a = c.dom(q)
        assert c.compose(q, tw.tau) == c.compose(tw.path.t, tw.square.proj_right)
        assert c.compose(tw.tau, tw.w) == c.identity(a)


def test_synthesize_identity_tower():
    p = corpus.path_corpus()["diamond"]
    step = synthesize_path_fibration(p, "id_top", base_path=unit_path_object(p))
    assert step.result.P == "top"
    assert step.comparison is not None


def test_synthesize_trivial_is_degenerate(paths):
    for p in paths.values():
        c = p.cat
        for x in c.sorted_objects:
            step = synthesize_path_fibration(p, p.to_terminal(x), base_path=unit_path_object(p))
            assert step.result.r in c.isomorphisms
            assert path_object_violations(p, step.result) == []


def test_synthesize_interval_tower():
    p = corpus.path_corpus()["interval"]
    steps = synthesize_along_telescope(p, ["id_0", "j"])
    assert len(steps) == 2
    for st in steps:
        assert path_object_violations(p, st.result) == []
        assert st.comparison is not None


def test_synthesize_every_root_telescope(dmpcs):
    for name, p in dmpcs.items():
        for chain in telescopes(p.clan, p.terminal, 3):
            for st in synthesize_along_telescope(p, list(chain)):
                assert path_object_violations(p, st.result) == [], (name, chain)
                assert st.comparison is not None


def test_slice_over_terminal_is_iso(paths):
    for p in paths.values():
        sl, forget = slice_fib(p, p.terminal)
        assert functor_violations(forget) == []
        assert is_isomorphism_of_categories(forget)


def test_slices_are_path_categories(paths):
    for p in paths.values():
        for gamma in p.cat.sorted_objects:
            sl, forget = slice_fib(p, gamma)
            assert check_path_axioms(sl).ok


def test_matrix_constant_true(paths, dmpcs):
    for p in list(paths.values()) + list(dmpcs.values()):
        rep = check_equivalent_axioms(p)
        assert rep.ok
        [w] = rep.witnesses
        assert set(w["vector"].values()) == {True}


def test_matrix_on_cofree_display(paths):
    for p in paths.values():
        m = path_to_dispcat(p)
        assert check_equivalent_axioms(PathCat(m.disp, p.equivalences)).ok


def test_matrix_guard_on_failed_axiom():
    p = corpus.corrupted_path_fixtures()["arrow-eq-all"]
    rep = check_equivalent_axioms(p)
    assert not rep.ok
    assert rep.witnesses == []
    assert any("not computed" in n for n in rep.notes)
