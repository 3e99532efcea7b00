"""Translations between path categories and display map categories, and splitting."""
from __future__ import annotations

from dataclasses import dataclass, field

from .dispcat import (DispCat, Reindexing, check_display_axioms, check_root, check_split,
                      reindex, repletion)
from .errors import AxiomcatError, NotStructuredError, PreconditionError
from .fincat import (Functor, PullbackWitness, functor_violations, is_pullback, mediate,
                     pullback, sections, terminal_object)
from .pathcat import (PathCat, PathObjectWitness, check_path_axioms, check_saturation,
                      homotopy_equivalences, path_object_violations)
from .report import Report
from .typeformers import (IdFormation, IdStructure, check_ext_unit_sigma,
                          check_weak_stability_id, diagonal_of, fibre_context, formation_from_path,
                          id_from_formation, path_of_formation, path_provider)


@dataclass
class DispModel:
    """A display map category with chosen =-types on every display map."""

    disp: DispCat
    ids: dict[str, IdStructure] = field(default_factory=dict)

    def provider(self, pA: str) -> IdStructure:
        return self.ids[pA]


def path_to_dispcat(p: PathCat) -> DispModel:
    """Every fibration becomes a display map, with =-types from path objects."""
    d = DispCat(p.cat, p.fibrations)
    q = PathCat(d, p.equivalences, p.path_table)
    provide = path_provider(q)
    return DispModel(d, {pA: provide(pA) for pA in sorted(d.display)})


def check_dispmodel(m: DispModel) -> Report:
    d = m.disp
    rep = Report("display-model")
    rep.add(check_display_axioms(d))
    rep.add(check_root(d))
    rep.add(check_ext_unit_sigma(d))
    p = _homotopy_path_category(m)
    rep.add(check_weak_stability_id(p, m.provider))
    return rep


def _path_table(m: DispModel) -> dict[str, PathObjectWitness]:
    c = m.disp.cat
    return {pA: path_of_formation(c, s.formation) for pA, s in sorted(m.ids.items())}


def _homotopy_path_category(m: DispModel) -> PathCat:
    table = _path_table(m)
    bare = PathCat(m.disp, frozenset(), table)
    return PathCat(m.disp, homotopy_equivalences(bare), table)


def search_id_formations(d: DispCat) -> DispModel:
    """Find an =-type on every display map by exhaustive search.

    Homotopies needed for β are taken in the candidate formations themselves,
    so the search needs no equivalence class.
    """
    c = d.cat
    candidates: dict[str, list[IdFormation]] = {}
    for pA in sorted(d.display):
        fibre = fibre_context(c, pA)
        delta = diagonal_of(c, pA)
        found = []
        for J in d.types_over(fibre.apex):
            sq = pullback(c, delta, J)
            if sq is not None:
                found.extend(IdFormation(pA, fibre, J, delta, sq.proj_left, sq.proj_right, refl)
                             for refl in sections(c, sq.proj_left))
        candidates[pA] = found
    m = DispModel(d, {pA: IdStructure(forms[0]) for pA, forms in candidates.items() if forms})
    for pA in sorted(m.ids):
        for form in candidates[pA]:
            m.ids[pA] = IdStructure(form)
            bare = PathCat(d, frozenset(), _path_table(m))
            s = id_from_formation(bare, form)
            if s is not None:
                m.ids[pA] = s
                break
        else:
            del m.ids[pA]
    return m


def dispcat_to_path(m: DispModel) -> PathCat:
    """Fibrations are the display maps, equivalences the homotopy equivalences."""
    d = m.disp
    pre = Report("preconditions")
    pre.add(check_root(d))
    pre.add(check_ext_unit_sigma(d))
    missing = sorted(set(d.display) - set(m.ids))
    if missing:
        pre.fail("id-types", "display maps without =-types", *missing)
    if not pre.ok:
        raise PreconditionError("; ".join(v.message for v in pre.counterexamples()))
    return _homotopy_path_category(m)


def _compare(rep: Report, label: str, left, right) -> None:
    if set(left) != set(right):
        extra = sorted(set(left) ^ set(right))
        rep.fail(label, f"{label} differ", *extra)


def roundtrip_check(p: PathCat) -> Report:
    rep = Report("roundtrip")
    try:
        q = dispcat_to_path(path_to_dispcat(p))
    except AxiomcatError as exc:
        rep.fail("translate", str(exc))
        return rep
    _compare(rep, "objects", p.cat.objects, q.cat.objects)
    _compare(rep, "morphisms", p.cat.morphisms, q.cat.morphisms)
    _compare(rep, "fibrations", p.fibrations, q.fibrations)
    _compare(rep, "equivalences", p.equivalences, q.equivalences)
    rep.add(check_path_axioms(q))
    rep.add(check_saturation(q))
    rep.witness(fibrations=sorted(q.fibrations), equivalences=sorted(q.equivalences))
    return rep


def reverse_roundtrip(d: DispCat) -> Report:
    rep = Report("reverse-roundtrip")
    m = search_id_formations(d)
    try:
        p = dispcat_to_path(m)
    except AxiomcatError as exc:
        rep.fail("translate", str(exc))
        return rep
    back = path_to_dispcat(p)
    _compare(rep, "display", d.display, back.disp.display)
    rep.add(check_path_axioms(p))
    rep.witness(display=sorted(back.disp.display), equivalences=sorted(p.equivalences))
    return rep


# ---------------------------------------------------------------------------
# 1-cells
# ---------------------------------------------------------------------------

def check_1cell(kind: str, F: Functor, source, target) -> Report:
    """Structure preservation for a functor between path or display map categories."""
    if kind not in ("pathcat", "dispcat"):
        raise ValueError(f"unknown kind {kind!r}")
    rep = Report(f"1-cell[{kind}]")
    law = rep.add(Report("functor"))
    law.extend(functor_violations(F))
    if not law.ok:
        return rep
    c = F.source
    if kind == "pathcat":
        src_fib, tgt_fib = source.fibrations, target.fibrations
    else:
        src_fib, tgt_fib = source.display, target.display
    fib = rep.add(Report("fibrations"))
    for f in sorted(src_fib):
        if F(f) not in tgt_fib:
            fib.fail("preserve", f"{f} ↦ {F(f)} leaves the class", f, F(f))
    pb = rep.add(Report("pullbacks"))
    for q in sorted(src_fib):
        for sigma in c.into(c.cod(q)):
            sq = pullback(c, sigma, q)
            if sq is not None and not is_pullback(F.target, F(sigma), F(q), F(sq.proj_left),
                                                  F(sq.proj_right)):
                pb.fail("preserve", f"pullback of {q} along {sigma} is not preserved", q, sigma)
    term = rep.add(Report("terminal"))
    t = terminal_object(c)
    if t is not None:
        t2 = F.obj(t)
        if not all(len(F.target.hom(x, t2)) == 1 for x in F.target.objects):
            term.fail("preserve", f"terminal {t} ↦ {t2} is not terminal", t, t2)
    if kind == "dispcat":
        rep.add(_weak_type_formers(F, source, target))
    if kind == "pathcat":
        triv = rep.add(Report("trivial-fibrations"))
        for f in sorted(source.trivial_fibrations):
            if F(f) not in target.trivial_fibrations:
                triv.fail("preserve", f"trivial fibration {f} ↦ {F(f)} is not one", f)
        eq = rep.add(Report("equivalences"))
        for f in sorted(source.equivalences):
            if F(f) not in target.equivalences:
                eq.fail("preserve", f"equivalence {f} ↦ {F(f)} is not one", f)
    return rep


def _weak_type_formers(F: Functor, source: DispCat, target: DispCat) -> Report:
    """Images of 1, Σ and =-types complete to structures of the same kind in the target."""
    c = F.source
    rep = Report("type-formers")
    for x in c.sorted_objects:
        if c.identity(x) in source.display and F(c.identity(x)) not in target.display:
            rep.fail("unit", f"1_{x} ↦ {F(c.identity(x))} is not a display map", x)
    for pA in sorted(source.display):
        for pB in source.types_over(c.dom(pA)):
            comp = c.compose(pA, pB)
            if comp in source.display and F(comp) not in target.display:
                rep.fail("sigma", f"Σ({pA},{pB}) ↦ {F(comp)} is not a display map", pA, pB)
    ms, mt = search_id_formations(source), search_id_formations(target)
    pt = _homotopy_path_category(mt)
    for pA, st in sorted(ms.ids.items()):
        w = path_of_formation(c, st.formation)
        img = PathObjectWitness(F(w.base), F.obj(w.P), F(w.r), F(w.s), F(w.t))
        problems = path_object_violations(pt, img, pair_class=target.display)
        if problems:
            rep.fail("id", f"image of Id on {pA} is not a path display map: {'; '.join(problems)}", pA)
            continue
        completed = id_from_formation(pt, formation_from_path(target, img))
        if completed is None:
            rep.fail("id", f"image of Id on {pA} admits no eliminator", pA)
        else:
            rep.witness(type=pA, image=img.base, entries=len(completed.elim))
    return rep


# ---------------------------------------------------------------------------
# left adjoint splitting
# ---------------------------------------------------------------------------

def split_name(sigma: str, a: str) -> str:
    return f"({sigma},{a})"


@dataclass
class Splitting:
    split: DispCat
    unit: Functor
    pairs: dict[str, tuple[str, str]]
    unit_types: dict[str, str]


def left_adjoint_split(d: DispCat) -> Splitting:
    """Types over ``Γ`` are pairs ``(σ: Γ -> Δ, A over Δ)``, reindexed by precomposition."""
    if not d.structured:
        raise NotStructuredError("left_adjoint_split needs strict types and a reindexing table")
    c = d.cat
    strict: dict[str, str] = {}
    pairs: dict[str, tuple[str, str]] = {}
    for a, pA in sorted(d.strict_types.items()):
        for sigma in c.into(c.cod(pA)):
            name = split_name(sigma, a)
            strict[name] = reindex(d, a, sigma).display
            pairs[name] = (sigma, a)
    table: dict[tuple[str, str], Reindexing] = {}
    for name, (sigma, a) in pairs.items():
        first = reindex(d, a, sigma)
        square = (c.dom(first.display), first.display, first.top)
        for tau in c.into(c.dom(sigma)):
            st = c.compose(sigma, tau)
            whole = reindex(d, a, st)
            top = mediate(c, PullbackWitness(square[0], first.display, first.top,
                                             (sigma, d.strict_types[a])),
                          c.compose(tau, whole.display), whole.top)
            table[(name, tau)] = Reindexing(whole.display, top, split_name(st, a))
    split = DispCat(c, d.display, strict, table)
    ident = Functor(c, c, {x: x for x in c.objects}, {f: f for f in c.morphisms})
    unit_types = {a: split_name(c.identity(c.cod(pA)), a) for a, pA in d.strict_types.items()}
    return Splitting(split, ident, pairs, unit_types)


def check_splitting(d: DispCat, s: Splitting) -> Report:
    rep = Report("splitting")
    rep.add(check_display_axioms(s.split))
    rep.add(check_split(s.split))
    rep.add(check_1cell("dispcat", s.unit, d, s.split))
    ess = rep.add(Report("essentially-surjective"))
    c = d.cat
    for name, (sigma, a) in sorted(s.pairs.items()):
        chosen = reindex(d, a, sigma)
        old = chosen.type
        if old is None or old not in s.unit_types:
            ess.fail("types", f"{name} is not isomorphic to the image of a type", name)
            continue
        iso = c.identity(c.dom(chosen.display))
        ess.witness(type=name, image=s.unit_types[old], iso=iso)
    return rep


def verify_coherence_closure(s: DispCat) -> Report:
    """The repletion of the strict display maps is a clan: cases 1, 2(i)-(iv), 3 and 4."""
    c = s.cat
    rep = Report("coherence-closure")
    pre = check_ext_unit_sigma(s)
    if not pre.ok:
        rep.fail("precondition", "extensional 1/Σ verdict is negative")
        rep.add(pre)
        return rep
    strict = s.strict_display or frozenset()
    closure = repletion(c, strict)

    def factor(f: str) -> tuple[str, str] | None:
        # f = S ∘ i with S strict over cod f and i an isomorphism
        for S in c.into(c.cod(f)):
            if S in strict:
                for i in c.isos_between(c.dom(f), c.dom(S)):
                    if c.compose(S, i) == f:
                        return S, i
        return None

    t = terminal_object(c)
    case1 = rep.add(Report("case-1-root"))
    if t is None:
        case1.fail("root", "no terminal object")
    else:
        for x in c.sorted_objects:
            bang = c.hom(x, t)[0]
            w = factor(bang)
            if w is None:
                case1.fail("root", f"{x} -> 1 is not an iso-twisted strict type", bang)
            else:
                case1.witness(object=x, strict=w[0], iso=w[1])
    case2 = rep.add(Report("case-2-composition"))
    for f in sorted(closure):
        for g in c.out_of(c.cod(f)):
            if g not in closure:
                continue
            label = {(True, True): "i", (True, False): "ii", (False, True): "iii",
                     (False, False): "iv"}[(f in strict, g in strict)]
            w = factor(c.compose(g, f))
            if w is None:
                case2.fail(f"case-{label}", f"{g}∘{f} leaves the class", g, f)
            else:
                case2.witness(case=label, f=f, g=g, strict=w[0], iso=w[1])
    case3 = rep.add(Report("case-3-pullback"))
    for f in sorted(closure):
        for sigma in c.into(c.cod(f)):
            sq = pullback(c, sigma, f)
            if sq is None or sq.proj_left not in closure:
                case3.fail("pullback", f"{f} along {sigma} has no pullback in the class", f, sigma)
            else:
                case3.witness(map=f, sigma=sigma, pullback=sq.proj_left)
    case4 = rep.add(Report("case-4-identity"))
    for x in c.sorted_objects:
        w = factor(c.identity(x))
        if w is None:
            case4.fail("identity", f"1_{x} is not in the class", c.identity(x))
        else:
            case4.witness(object=x, strict=w[0], iso=w[1])
    return rep
