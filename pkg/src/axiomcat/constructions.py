"""Factorization, lifting, transport, path-fibration synthesis and slices."""
from __future__ import annotations

from dataclasses import dataclass, field

from .dispcat import DispCat, check_display_axioms, check_root
from .errors import ConstructionError, LiftError, NoPathObjectError, PreconditionError
from .fincat import (FiniteCategory, Functor, PullbackWitness, mediate, product,
                     pullback, to_terminal)
from .pathcat import (HomotopyWitness, PathCat, PathObjectWitness, check_isos_are_equivalences,
                      check_trivial_fibration_pullbacks, check_trivial_fibration_sections,
                      check_two_out_of_six, find_path_object, homotopic, object_path_object,
                      pairing, path_object_violations, path_objects)
from .report import Report


@dataclass(frozen=True)
class Factorization:
    f: str
    Lf: str
    w: str
    p: str
    square: PullbackWitness
    path: PathObjectWitness

    def to_dict(self) -> dict:
        return {"f": self.f, "Lf": self.Lf, "w_f": self.w, "p_f": self.p,
                "pi0": self.square.proj_left, "pi1": self.square.proj_right,
                "path": self.path.to_dict()}


@dataclass(frozen=True)
class LiftProblem:
    """Square ``p ∘ f = sigma ∘ w`` with ``w: B -> Δ`` an equivalence and ``p`` a fibration."""

    w: str
    f: str
    p: str
    sigma: str

    def to_dict(self) -> dict:
        return {"w": self.w, "f": self.f, "p": self.p, "sigma": self.sigma}


@dataclass(frozen=True)
class LiftSolution:
    problem: LiftProblem
    lift: str
    homotopy: HomotopyWitness
    candidates: tuple[str, ...]
    unique_up_to_homotopy: bool

    def to_dict(self) -> dict:
        return {"problem": self.problem.to_dict(), "lift": self.lift,
                "homotopy": self.homotopy.to_dict(), "candidates": list(self.candidates),
                "unique_up_to_homotopy": self.unique_up_to_homotopy}


@dataclass(frozen=True)
class TransportWitness:
    p: str
    path: PathObjectWitness
    square: PullbackWitness
    w: str
    tau: str
    homotopy: HomotopyWitness

    @property
    def Lp(self) -> str:
        return self.square.apex

    def to_dict(self) -> dict:
        return {"p": self.p, "Lp": self.Lp, "pi0": self.square.proj_left,
                "pi1": self.square.proj_right, "w_p": self.w, "tau": self.tau,
                "homotopy": self.homotopy.to_dict(), "path": self.path.to_dict()}


@dataclass(frozen=True)
class SynthesisWitness:
    """One step of the tower: path objects of ``A`` and of ``q: B -> A`` give one of ``B``."""

    q: str
    base_path: PathObjectWitness
    fibre_path: PathObjectWitness
    transport: TransportWitness
    Q: PullbackWitness
    PB: PullbackWitness
    result: PathObjectWitness
    comparison: str | None
    strict_unit: bool
    notes: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        return {"q": self.q, "PB": self.PB.apex, "Q": self.Q.apex,
                "result": self.result.to_dict(), "comparison": self.comparison,
                "tau": self.transport.tau, "strict_unit": self.strict_unit,
                "notes": list(self.notes)}


# ---------------------------------------------------------------------------

def factorize(p: PathCat, f: str) -> Factorization:
    """``f = p_f ∘ w_f`` through the mapping path space ``Lf = B ×_{f,s} PA``."""
    c = p.cat
    b, a = c.morphisms[f]
    pa = object_path_object(p, a)
    if pa is None:
        raise NoPathObjectError(f"object {a} has no path object")
    sq = pullback(c, f, pa.s)
    if sq is None:
        raise ConstructionError(f"no pullback of {f} against s = {pa.s}")
    w = mediate(c, sq, c.identity(b), c.compose(pa.r, f))
    if w is None:
        raise ConstructionError("(1, r f) does not factor through Lf")
    pf = c.compose(pa.t, sq.proj_right)
    if c.compose(pf, w) != f:
        raise ConstructionError(f"p_f ∘ w_f ≠ {f}")
    if w not in p.equivalences:
        raise ConstructionError(f"w_f = {w} is not an equivalence")
    if pf not in p.fibrations:
        raise ConstructionError(f"p_f = {pf} is not a fibration")
    return Factorization(f, sq.apex, w, pf, sq, pa)


def _check_problem(p: PathCat, prob: LiftProblem) -> None:
    c = p.cat
    if c.cod(prob.w) != c.dom(prob.sigma) or c.dom(prob.w) != c.dom(prob.f):
        raise PreconditionError("lifting square is ill-typed")
    if c.cod(prob.f) != c.dom(prob.p) or c.cod(prob.p) != c.cod(prob.sigma):
        raise PreconditionError("lifting square is ill-typed")
    if c.compose(prob.p, prob.f) != c.compose(prob.sigma, prob.w):
        raise PreconditionError("lifting square does not commute")
    if prob.w not in p.equivalences:
        raise PreconditionError(f"{prob.w} is not an equivalence")
    if prob.p not in p.fibrations:
        raise PreconditionError(f"{prob.p} is not a fibration")


def lift_candidates(p: PathCat, prob: LiftProblem, path: PathObjectWitness | None = None
                    ) -> list[tuple[str, HomotopyWitness]]:
    c = p.cat
    path = path or find_path_object(p, prob.p)
    if path is None:
        raise NoPathObjectError(f"fibration {prob.p} has no path object")
    out = []
    for l in c.hom(c.cod(prob.w), c.dom(prob.p)):
        if c.compose(prob.p, l) != prob.sigma:
            continue
        h = homotopic(p, c.compose(l, prob.w), prob.f, over=prob.p, path=path)
        if h is not None:
            out.append((l, h))
    return out


def lift(p: PathCat, prob: LiftProblem) -> LiftSolution:
    """Smallest ``l`` with ``p l = σ`` and ``l w ≃_Γ f``; all lifts are compared pairwise."""
    _check_problem(p, prob)
    path = find_path_object(p, prob.p)
    found = lift_candidates(p, prob, path)
    if not found:
        raise LiftError(f"no lift found for {prob}", problem=prob)
    lifts = [l for l, _ in found]
    unique = all(homotopic(p, l1, l2, over=prob.p, path=path) is not None
                 for i, l1 in enumerate(lifts) for l2 in lifts[i + 1:])
    return LiftSolution(prob, found[0][0], found[0][1], tuple(lifts), unique)


def transport(p: PathCat, q: str, path: PathObjectWitness | None = None) -> TransportWitness:
    """``τ: Lq -> A`` with ``q τ = t π1`` and ``τ (1, r q) ≃_Γ 1`` for ``q: A -> Γ``."""
    tw = transport_candidates(p, q, path)
    if not tw:
        raise LiftError(f"no transport map for {q}")
    return tw[0]


def transport_candidates(p: PathCat, q: str, path: PathObjectWitness | None = None
                         ) -> list[TransportWitness]:
    """Every transport map for ``q``, strictly unital ones first."""
    c = p.cat
    a, gamma = c.morphisms[q]
    path = path or object_path_object(p, gamma)
    if path is None:
        raise NoPathObjectError(f"object {gamma} has no path object")
    sq = pullback(c, q, path.s)
    if sq is None:
        raise ConstructionError(f"no pullback of {q} against s")
    w = mediate(c, sq, c.identity(a), c.compose(path.r, q))
    prob = LiftProblem(w, c.identity(a), q, c.compose(path.t, sq.proj_right))
    _check_problem(p, prob)
    found = lift_candidates(p, prob)
    out = [TransportWitness(q, path, sq, w, l, h) for l, h in found]
    out.sort(key=lambda tw: (c.compose(tw.tau, w) != c.identity(a), tw.tau))
    return out


def synthesize_path_fibration(p: PathCat, q: str, base_path: PathObjectWitness | None = None,
                              fibre_path: PathObjectWitness | None = None) -> SynthesisWitness:
    """Combine ``PA`` and ``P_A B`` into a path object of ``B`` over the terminal object."""
    c = p.cat
    b, a = c.morphisms[q]
    base_path = base_path or object_path_object(p, a)
    fibre_path = fibre_path or find_path_object(p, q, pair_class=p.display)
    if base_path is None or fibre_path is None:
        raise NoPathObjectError(f"missing path data for {q}")
    notes = []
    aa = product(c, a, a)
    bb = product(c, b, b)
    if aa is None or bb is None:
        raise ConstructionError("binary products missing")
    qq = mediate(c, aa, c.compose(q, bb.proj_left), c.compose(q, bb.proj_right))
    st_a = mediate(c, aa, base_path.s, base_path.t)
    Q = pullback(c, qq, st_a)
    if Q is None:
        raise ConstructionError("no pullback (B×B) ×_{A×A} PA")
    u, v = Q.proj_left, Q.proj_right
    bab = pullback(c, q, q)
    st_ab = pairing(c, q, fibre_path.s, fibre_path.t)
    if bab is None or st_ab is None:
        raise ConstructionError("no fibre product B ×_A B")
    tws = transport_candidates(p, q, base_path)
    if not tws:
        raise LiftError(f"no transport map for {q}")
    tw = tws[0]
    strict = c.compose(tw.tau, tw.w) == c.identity(b)
    if not strict:
        notes.append("no strictly unital transport; r_B found by search")
    ell = mediate(c, tw.square, c.compose(bb.proj_left, u), v)
    m = mediate(c, bab, c.compose(tw.tau, ell), c.compose(bb.proj_right, u))
    PB = pullback(c, m, st_ab)
    if PB is None:
        raise ConstructionError("no pullback defining PB")
    s_b = c.compose(bb.proj_left, u, PB.proj_left)
    t_b = c.compose(bb.proj_right, u, PB.proj_left)
    diag_b = mediate(c, bb, c.identity(b), c.identity(b))
    r_q = mediate(c, Q, diag_b, c.compose(base_path.r, q))
    r_b = None
    if strict:
        r_b = mediate(c, PB, r_q, fibre_path.r)
    if r_b is None:
        ident = c.identity(b)
        for cand in c.hom(b, PB.apex):
            if (cand in p.equivalences and c.compose(s_b, cand) == ident
                    and c.compose(t_b, cand) == ident):
                r_b = cand
                break
    if r_b is None:
        raise ConstructionError(f"no reflexivity map r_B for {q}")
    result = PathObjectWitness(to_terminal(c, b), PB.apex, r_b, s_b, t_b)
    # comparison with the mapping path space L_A τ = Lq ×_{τ,s} P_A B
    comparison = None
    la = pullback(c, tw.tau, fibre_path.s)
    if la is not None:
        to_lq = mediate(c, tw.square, s_b, c.compose(v, PB.proj_left))
        if to_lq is not None:
            comparison = mediate(c, la, to_lq, PB.proj_right)
    if comparison is None or comparison not in c.isomorphisms:
        notes.append("PB is not isomorphic to L_A τ")
        comparison = None
    elif c.compose(la.proj_left, comparison, r_b) != tw.w:
        notes.append("comparison square with w does not commute")
    problems = path_object_violations(p, result)
    if problems:
        raise ConstructionError(f"synthesized path object for {b} is invalid: {'; '.join(problems)}")
    return SynthesisWitness(q, base_path, fibre_path, tw, Q, PB, result, comparison, strict,
                            tuple(notes))


def unit_path_object(p: PathCat) -> PathObjectWitness:
    t = p.terminal
    i = p.cat.identity(t)
    return PathObjectWitness(i, t, i, i, i)


def synthesize_along_telescope(p: PathCat, chain: list[str]) -> list[SynthesisWitness]:
    """Iterate the one-step synthesis down ``[p1, ..., pk]`` with ``p1`` into the terminal object."""
    current = unit_path_object(p)
    steps = []
    for q in chain:
        step = synthesize_path_fibration(p, q, base_path=current)
        steps.append(step)
        current = step.result
    return steps


# ---------------------------------------------------------------------------
# slices
# ---------------------------------------------------------------------------

def slice_fib(p: PathCat, gamma: str) -> tuple[PathCat, Functor]:
    """The slice over ``gamma`` restricted to fibrations, with its forgetful functor."""
    c = p.cat
    objs = [x for x in c.into(gamma) if x in p.fibrations]
    arrows: dict[str, tuple[str, str]] = {}
    under: dict[str, str] = {}
    identities: dict[str, str] = {}
    for x in objs:
        for y in objs:
            for g in c.hom(c.dom(x), c.dom(y)):
                if c.compose(y, g) == x:
                    name = f"{x}|{g}|{y}"
                    arrows[name] = (x, y)
                    under[name] = g
                    if x == y and c.is_identity(g):
                        identities[x] = name
    composition = {}
    for f, (x, y) in arrows.items():
        for g, (y2, z) in arrows.items():
            if y2 == y:
                composition[(g, f)] = f"{x}|{c.compose(under[g], under[f])}|{z}"
    sl = FiniteCategory(tuple(objs), arrows, identities, composition,
                        name=f"{c.name}/{gamma}")
    fib = frozenset(f for f in arrows if under[f] in p.fibrations)
    eq = frozenset(f for f in arrows if under[f] in p.equivalences)
    forget = Functor(sl, c, {x: c.dom(x) for x in objs}, under)
    return PathCat(DispCat(sl, fib), eq), forget


# ---------------------------------------------------------------------------
# the equivalent axioms
# ---------------------------------------------------------------------------

AXIOMS = ("PO", "PF", "F", "T", "L")


def _has_factorization(p: PathCat, f: str) -> bool:
    c = p.cat
    b, a = c.morphisms[f]
    for w in c.out_of(b):
        if w not in p.equivalences:
            continue
        for q in c.hom(c.cod(w), a):
            if q in p.fibrations and c.compose(q, w) == f:
                return True
    return False


def _transport_exists(p: PathCat, q: str, path: PathObjectWitness) -> bool:
    c = p.cat
    a = c.dom(q)
    sq = pullback(c, q, path.s)
    if sq is None:
        return False
    w = mediate(c, sq, c.identity(a), c.compose(path.r, q))
    own = find_path_object(p, q, pair_class=p.fibrations)
    if own is None:
        return False
    for tau in c.hom(sq.apex, a):
        if c.compose(q, tau) != c.compose(path.t, sq.proj_right):
            continue
        if homotopic(p, c.compose(tau, w), c.identity(a), over=q, path=own) is not None:
            return True
    return False


def lifting_problems(p: PathCat):
    c = p.cat
    for w in sorted(p.equivalences):
        b, delta = c.morphisms[w]
        for q in sorted(p.fibrations):
            a, gamma = c.morphisms[q]
            for f in c.hom(b, a):
                for sigma in c.hom(delta, gamma):
                    if c.compose(q, f) == c.compose(sigma, w):
                        yield LiftProblem(w, f, q, sigma)


def _lifting_holds(p: PathCat) -> bool:
    for prob in lifting_problems(p):
        try:
            sol = lift(p, prob)
        except (LiftError, NoPathObjectError):
            return False
        if not sol.unique_up_to_homotopy:
            return False
    return True


def equivalent_axioms_preconditions(p: PathCat) -> Report:
    rep = Report("preconditions")
    c = p.cat
    rep.add(check_display_axioms(p.clan))
    rep.add(check_isos_are_equivalences(c, p.equivalences))
    rep.add(check_two_out_of_six(c, p.equivalences))
    rep.add(check_trivial_fibration_pullbacks(p))
    rep.add(check_trivial_fibration_sections(p))
    ax5 = rep.add(Report("path-display-maps"))
    for q in sorted(p.display):
        if find_path_object(p, q, pair_class=p.display) is None:
            ax5.fail("axiom-5", f"display map {q} has no path display map", q)
    rep.add(check_root(p.clan))
    return rep


def check_equivalent_axioms(p: PathCat) -> Report:
    """Decide PO, PF, F, T and L independently and flag a non-constant vector."""
    c = p.cat
    rep = Report("equivalent-axioms")
    pre = rep.add(equivalent_axioms_preconditions(p))
    if not pre.ok:
        rep.note("preconditions fail; matrix not computed")
        return rep
    fib = p.fibrations
    vector = {}
    vector["PO"] = all(next(path_objects(p, p.to_terminal(x), fib), None) is not None
                       for x in c.sorted_objects)
    vector["PF"] = all(next(path_objects(p, q, fib), None) is not None for q in sorted(fib))
    vector["F"] = all(_has_factorization(p, f) for f in c.sorted_morphisms)
    t_ok = True
    for q in sorted(p.display):
        for path in path_objects(p, p.to_terminal(c.cod(q)), fib):
            if not _transport_exists(p, q, path):
                t_ok = False
                break
        if not t_ok:
            break
    vector["T"] = t_ok
    vector["L"] = _lifting_holds(p)
    rep.witness(vector={k: vector[k] for k in AXIOMS})
    if len(set(vector.values())) != 1:
        rep.fail("constant", "the axiom vector is not constant",
                 *[f"{k}={vector[k]}" for k in AXIOMS])
    return rep
