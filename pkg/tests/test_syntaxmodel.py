from __future__ import annotations

import time

import pytest
from hypothesis import given, strategies as st

from axiomcat.syntaxmodel import (Eq, Gen, Inv, NoAdmissibleCase, R, Refl, S, TypingError, Var,
                                  admissible_ind, check_induction, check_transport_underivable, check_type,
                                  chi, enumerate_closed_terms, infer, inv, r, r2, rho, rho_inv,
                                  s, saturation_bound, subst, x, x2)


def test_generator_typing():
    assert infer((), r) == R() and infer((), r2) == R()
    assert infer((), rho) == Eq(R(), r, r2)
    assert infer((), rho_inv) == Eq(R(), r2, r)
    assert infer((), s) == S(r)
    assert infer((), Refl(s)) == Eq(S(r), s, s)


def test_ill_formed_types():
    with pytest.raises(TypingError):
        check_type((), S(rho))
    with pytest.raises(TypingError):
        check_type((), Eq(R(), r, s))
    with pytest.raises(TypingError):
        infer((), Var("x"))
    with pytest.raises(ValueError):
        Gen("t")


def test_inv_table():
    assert inv(Refl(r)) == Refl(r)
    assert inv(rho) == rho_inv and inv(rho_inv) == rho
    ctx = (("x", R()), ("x'", R()), ("chi", Eq(R(), x, x2)))
    assert inv(chi) == Inv(chi)
    assert infer(ctx, Inv(chi)) == Eq(R(), x2, x)


def closed_terms():
    base = st.sampled_from([r, r2, rho, rho_inv, s])
    return st.recursive(base, lambda t: st.one_of(t.map(Refl), t.map(inv)),
                        max_leaves=4).filter(_typeable)


def _typeable(t):
    try:
        infer((), t)
        return True
    except TypingError:
        return False


@given(closed_terms())
def test_inv_involution(t):
    if isinstance(infer((), t), Eq):
        assert inv(inv(t)) == t
        ty = infer((), t)
        assert infer((), inv(t)) == Eq(ty.type, ty.right, ty.left)


def classify(ty):
    """Closed inhabitants from the hand classification of the model."""
    if ty == R():
        return {r, r2}
    if isinstance(ty, S):
        return {s} if ty.arg == r else set()
    out = {Refl(t) for t in classify(ty.type) if t == ty.left == ty.right}
    if (ty.type, ty.left, ty.right) == (R(), r, r2):
        out.add(rho)
    if (ty.type, ty.left, ty.right) == (R(), r2, r):
        out.add(rho_inv)
    return out


def closed_types():
    base = st.one_of(st.just(R()), st.sampled_from([r, r2]).map(S))

    def extend(inner):
        @st.composite
        def eq(draw):
            T = draw(inner)
            pool = sorted(classify(T), key=str) or [r]
            a = draw(st.sampled_from(pool))
            b = draw(st.sampled_from(pool))
            return Eq(T, a, b)
        return eq()

    return st.recursive(base, extend, max_leaves=3).filter(_well_formed)


def _well_formed(ty):
    try:
        check_type((), ty)
        return True
    except TypingError:
        return False


@given(closed_types())
def test_enumeration_matches_classification_and_saturates(ty):
    e = enumerate_closed_terms(ty)
    assert e.saturated
    assert set(e.terms) == classify(ty)
    assert enumerate_closed_terms(ty, e.depth + 2).terms == e.terms


def test_enumeration_examples():
    assert set(enumerate_closed_terms(R(), 3).terms) == {r, r2}
    assert enumerate_closed_terms(Eq(R(), r, r), 3).terms == [Refl(r)]
    assert enumerate_closed_terms(S(r2), 4).terms == []
    assert enumerate_closed_terms(S(r)).terms == [s]
    assert saturation_bound(Eq(Eq(R(), r, r), Refl(r), Refl(r))) == 4


@given(closed_types())
def test_inhabitants_are_shallow(ty):
    from axiomcat.syntaxmodel import eq_nesting, term_depth
    assert all(term_depth(t) <= eq_nesting(ty) + 1 for t in enumerate_closed_terms(ty).terms)


def test_ind_examples():
    assert admissible_ind(Eq(R(), x, x2), Refl(x), rho) == rho
    assert admissible_ind(Eq(R(), x2, x), Refl(x), rho) == rho_inv
    for C, d in [(R(), r2), (Eq(R(), x, x2), Refl(x)), (Eq(R(), x2, x), Refl(x)),
                 (Eq(R(), x, x), Refl(x))]:
        for a in (r, r2):
            assert admissible_ind(C, d, Refl(a)) == subst(d, {"x": a})


def test_ind_rejects_non_equality_and_unknown_motive():
    with pytest.raises(TypingError):
        admissible_ind(R(), r, r)
    with pytest.raises(NoAdmissibleCase):
        admissible_ind(S(x2), s, rho)


def test_induction_coverage():
    cov = check_induction(3)
    assert cov.failures == []
    assert cov.beta_checked > 0
    assert set(cov.by_case) == {"independent", "reflexive", "forward", "backward"}
    # S(x′) and friends have no d in context x : R and are reported as vacuous
    assert "S(x')" in cov.vacuous


def test_transport_underivable():
    t0 = time.perf_counter()
    rep = check_transport_underivable()
    assert time.perf_counter() - t0 < 1.0
    assert rep.ok
    main = rep.witnesses[0]
    assert main["terms"] == [] and main["saturated"]
    assert rep.witnesses[1]["type"] == "S(r′)"
