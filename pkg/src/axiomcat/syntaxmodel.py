"""A tiny type theory with only =-formation/introduction and a few generators.

Primitive types ``R`` and ``x:R ⊢ S(x)``; primitive terms ``r, r′ : R``,
``ρ : r = r′``, ``ρ⁻¹ : r′ = r`` and ``s : S(r)``.  Unbased path induction is
admissible by a case analysis on the motive, yet no closed term inhabits
``S(r′)``, so transport is not definable from it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Union

from .report import Report


# ---------------------------------------------------------------------------
# syntax
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


GENERATORS = ("r", "r'", "rho", "rho_inv", "s")


@dataclass(frozen=True)
class Gen:
    name: str

    def __post_init__(self):
        if self.name not in GENERATORS:
            raise ValueError(f"unknown generator {self.name}")

    def __str__(self) -> str:
        return {"rho": "ρ", "rho_inv": "ρ⁻¹", "r'": "r′"}.get(self.name, self.name)


@dataclass(frozen=True)
class Refl:
    term: "Term"

    def __str__(self) -> str:
        return f"refl({self.term})"


@dataclass(frozen=True)
class Inv:
    """Formal inverse of an equality proof that is not a generator or ``refl``."""

    term: "Term"

    def __str__(self) -> str:
        return f"inv({self.term})"


Term = Union[Var, Gen, Refl, Inv]


@dataclass(frozen=True)
class R:
    def __str__(self) -> str:
        return "R"


@dataclass(frozen=True)
class S:
    arg: Term

    def __str__(self) -> str:
        return f"S({self.arg})"


@dataclass(frozen=True)
class Eq:
    type: "Type"
    left: Term
    right: Term

    def __str__(self) -> str:
        return f"Eq({self.type}, {self.left}, {self.right})"


Type = Union[R, S, Eq]

r, r2, rho, rho_inv, s = (Gen(n) for n in GENERATORS)
x, x2, chi = Var("x"), Var("x'"), Var("chi")


class TypingError(Exception):
    pass


class NoAdmissibleCase(Exception):
    """The motive matches none of the admissible cases."""


def inv(t: Term) -> Term:
    """Symmetry: ``refl(b)⁻¹ = refl(b)``, ``ρ ↔ ρ⁻¹``, formal otherwise."""
    if isinstance(t, Refl):
        return t
    if t == rho:
        return rho_inv
    if t == rho_inv:
        return rho
    if isinstance(t, Inv):
        return t.term
    return Inv(t)


Context = tuple[tuple[str, Type], ...]


def infer(ctx: Context, t: Term) -> Type:
    if isinstance(t, Var):
        for name, ty in reversed(ctx):
            if name == t.name:
                return ty
        raise TypingError(f"unbound variable {t}")
    if isinstance(t, Gen):
        return {"r": R(), "r'": R(), "rho": Eq(R(), r, r2), "rho_inv": Eq(R(), r2, r),
                "s": S(r)}[t.name]
    if isinstance(t, Refl):
        return Eq(infer(ctx, t.term), t.term, t.term)
    if isinstance(t, Inv):
        ty = infer(ctx, t.term)
        if not isinstance(ty, Eq):
            raise TypingError(f"{t.term} is not an equality proof")
        return Eq(ty.type, ty.right, ty.left)
    raise TypingError(f"not a term: {t!r}")


def check_type(ctx: Context, ty: Type) -> None:
    """Raise ``TypingError`` unless ``ty`` is well formed in ``ctx``."""
    if isinstance(ty, R):
        return
    if isinstance(ty, S):
        if infer(ctx, ty.arg) != R():
            raise TypingError(f"argument of {ty} is not of type R")
        return
    if isinstance(ty, Eq):
        check_type(ctx, ty.type)
        for end in (ty.left, ty.right):
            if infer(ctx, end) != ty.type:
                raise TypingError(f"endpoint {end} of {ty} is not of type {ty.type}")
        return
    raise TypingError(f"not a type: {ty!r}")


def subst(e, sub: dict[str, Term]):
    """Simultaneous substitution in a term or type, renormalizing inverses."""
    if isinstance(e, Var):
        return sub.get(e.name, e)
    if isinstance(e, Gen) or isinstance(e, R):
        return e
    if isinstance(e, Refl):
        return Refl(subst(e.term, sub))
    if isinstance(e, Inv):
        return inv(subst(e.term, sub))
    if isinstance(e, S):
        return S(subst(e.arg, sub))
    if isinstance(e, Eq):
        return Eq(subst(e.type, sub), subst(e.left, sub), subst(e.right, sub))
    raise TypeError(f"cannot substitute in {e!r}")


def free_vars(e) -> frozenset[str]:
    if isinstance(e, Var):
        return frozenset({e.name})
    if isinstance(e, (Gen, R)):
        return frozenset()
    if isinstance(e, (Refl, Inv)):
        return free_vars(e.term)
    if isinstance(e, S):
        return free_vars(e.arg)
    if isinstance(e, Eq):
        return free_vars(e.type) | free_vars(e.left) | free_vars(e.right)
    raise TypeError(f"not syntax: {e!r}")


def term_depth(t: Term) -> int:
    if isinstance(t, (Refl, Inv)):
        return 1 + term_depth(t.term)
    return 1


def eq_nesting(ty: Type) -> int:
    return 1 + eq_nesting(ty.type) if isinstance(ty, Eq) else 0


def saturation_bound(ty: Type) -> int:
    """Depth at which enumerating ``ty`` is exhaustive.

    Only ``refl`` deepens a term and each ``refl`` adds one Eq level, so
    inhabitants have depth at most nesting + 1; one extra level confirms it.
    """
    return eq_nesting(ty) + 2


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def all_terms(depth: int, ctx: Context = ()) -> list[Term]:
    """Every well-typed term of depth at most ``depth`` in ``ctx``, in canonical form."""
    layer: list[Term] = [Var(n) for n, _ in ctx] + [Gen(g) for g in GENERATORS]
    seen = {t: None for t in layer}
    current = list(layer)
    for _ in range(depth - 1):
        nxt = []
        for t in current:
            for u in (Refl(t), inv(t)):
                try:
                    infer(ctx, u)
                except TypingError:
                    continue
                if u not in seen:
                    seen[u] = None
                    nxt.append(u)
        current = nxt
    return list(seen)


def enumerate_terms(ty: Type, depth: int, ctx: Context = ()) -> list[Term]:
    return [t for t in all_terms(depth, ctx) if infer(ctx, t) == ty]


@dataclass
class Enumeration:
    type: Type
    depth: int
    terms: list[Term]
    bound: int

    @property
    def saturated(self) -> bool:
        return self.depth >= self.bound


def enumerate_closed_terms(ty: Type, depth: int | None = None) -> Enumeration:
    check_type((), ty)
    bound = saturation_bound(ty)
    depth = bound if depth is None else depth
    return Enumeration(ty, depth, enumerate_terms(ty, depth), bound)


# ---------------------------------------------------------------------------
# path induction
# ---------------------------------------------------------------------------

def motive_context(A: Type) -> Context:
    return (("x", A), ("x'", A), ("chi", Eq(A, x, x2)))


def admissible_ind(C: Type, d: Term, alpha: Term, ctx: Context = ()) -> Term:
    """``ind_d(α) : C[a, a′, α]`` for ``α : a = a′`` by the admissible case analysis.

    ``C`` lives in context ``x, x′ : A, χ : x = x′`` and ``d : C[x, x, refl(x)]``
    in context ``x : A``.
    """
    ty = infer(ctx, alpha)
    if not isinstance(ty, Eq):
        raise TypingError(f"{alpha} is not an equality proof")
    a, a2 = ty.left, ty.right
    sub = {"x": a, "x'": a2, "chi": alpha}
    fv = free_vars(C)
    if not fv & {"x'", "chi"}:
        return subst(d, {"x": a})
    if isinstance(C, Eq):
        if C.left == C.right:
            return Refl(subst(C.left, sub))
        if (C.left, C.right) == (x, x2):
            return alpha
        if (C.left, C.right) == (x2, x):
            return inv(alpha)
    raise NoAdmissibleCase(f"no admissible case for motive {C}")


def based_transport(d: Term, alpha: Term) -> tuple[Term, Type]:
    """The based eliminator at motive ``S(x′)`` as a formal term and its type.

    Only used as a contrast: based induction would inhabit ``S(r′)`` from ``s``
    and ``ρ``.
    """
    ty = infer((), alpha)
    return ("ind_based", d, alpha), S(ty.right)


def motive_family(depth: int = 2) -> list[Type]:
    """Motives over ``x, x′ : R, χ : x = x′`` built from the variables and generators."""
    ends = [x, x2, r, r2]
    out: list[Type] = [R()]
    out += [S(u) for u in ends]
    out += [Eq(R(), u, v) for u, v in product(ends, ends)]
    out += [Eq(Eq(R(), x, x2), chi, chi), Eq(Eq(R(), x2, x), inv(chi), inv(chi))]
    if depth > 2:
        out += [Eq(Eq(R(), u, u), Refl(u), Refl(u)) for u in ends]
    return out


@dataclass
class InductionCoverage:
    instances: int = 0
    beta_checked: int = 0
    by_case: dict[str, int] = field(default_factory=dict)
    vacuous: list[str] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)


def _case_name(C: Type) -> str:
    if not free_vars(C) & {"x'", "chi"}:
        return "independent"
    if isinstance(C, Eq) and C.left == C.right:
        return "reflexive"
    if isinstance(C, Eq) and (C.left, C.right) == (x, x2):
        return "forward"
    return "backward"


def check_induction(depth: int = 3) -> InductionCoverage:
    """Run the case analysis on every enumerable ``(C, d, α)`` and check typing and β."""
    cov = InductionCoverage()
    A = R()
    mctx = motive_context(A)
    dctx: Context = (("x", A),)
    alphas = [t for t in all_terms(depth) if isinstance(infer((), t), Eq)
              and infer((), t).type == A]
    for C in motive_family(depth):
        check_type(mctx, C)
        dty = subst(C, {"x'": x, "chi": Refl(x)})
        ds = enumerate_terms(dty, depth, dctx)
        case = None
        for dd in ds:
            for alpha in alphas:
                cov.instances += 1
                try:
                    out = admissible_ind(C, dd, alpha)
                except NoAdmissibleCase as exc:
                    cov.failures.append(str(exc))
                    continue
                case = _case_name(C)
                ty = infer((), alpha)
                want = subst(C, {"x": ty.left, "x'": ty.right, "chi": alpha})
                try:
                    got = infer((), out)
                except TypingError as exc:
                    cov.failures.append(f"{C}: {exc}")
                    continue
                if got != want:
                    cov.failures.append(f"ind for {C} at {alpha} has type {got}, not {want}")
                if isinstance(alpha, Refl):
                    cov.beta_checked += 1
                    if out != subst(dd, {"x": alpha.term}):
                        cov.failures.append(f"β fails for {C}, d = {dd}, α = {alpha}")
        if not ds:
            cov.vacuous.append(str(C))
        elif case is not None:
            cov.by_case[case] = cov.by_case.get(case, 0) + 1
    return cov


def check_transport_underivable(depth: int | None = None) -> Report:
    rep = Report("transport-underivable")
    target = enumerate_closed_terms(S(r2), depth)
    rep.witness(type=str(target.type), depth=target.depth, bound=target.bound,
                saturated=target.saturated, terms=[str(t) for t in target.terms])
    if not target.saturated:
        rep.fail("saturation", f"depth {target.depth} is below the bound {target.bound}")
    if target.terms:
        rep.fail("inhabited", "S(r′) is inhabited", *[str(t) for t in target.terms])
    # the fixpoint: one more level adds nothing
    more = enumerate_closed_terms(S(r2), target.depth + 1)
    if more.terms != target.terms:
        rep.fail("fixpoint", "enumeration grows past the saturation bound")
    sr = enumerate_closed_terms(S(r), depth)
    if sr.terms != [s]:
        rep.fail("sanity", "S(r) is not inhabited by exactly s", *[str(t) for t in sr.terms])
    if infer((), rho) != Eq(R(), r, r2):
        rep.fail("sanity", "ρ does not have type r = r′")
    cov = check_induction(max(3, depth or 3))
    ind = rep.add(Report("admissible-induction"))
    ind.witness(instances=cov.instances, beta_checked=cov.beta_checked,
                by_case=dict(sorted(cov.by_case.items())), vacuous=cov.vacuous)
    for f in cov.failures:
        ind.fail("case-analysis", f)
    term, ty = based_transport(s, rho)
    rep.witness(contrast="based induction", term="ind_s(ρ)", type=str(ty))
    rep.note("S(r′) has no closed inhabitant while s : S(r) and ρ : r = r′; "
             "hence no term realizes transport with unbased path induction")
    return rep
