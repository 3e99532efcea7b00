"""Path categories, display map path categories and their homotopy calculus."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from .dispcat import DispCat, check_display_axioms, check_root, fibration_closure
from .errors import NoPathObjectError
from .fincat import (FiniteCategory, PullbackWitness, composable_triples, mediate,
                     pullback, sections, terminal_object, to_terminal)
from .report import Report


@dataclass(frozen=True)
class PathObjectWitness:
    """``A --r--> P --(s,t)--> A ×_Γ A`` for the fibration ``base: A -> Γ``."""

    base: str
    P: str
    r: str
    s: str
    t: str

    def to_dict(self) -> dict:
        return {"base": self.base, "P": self.P, "r": self.r, "s": self.s, "t": self.t}


@dataclass(frozen=True)
class HomotopyWitness:
    f: str
    g: str
    h: str
    path: PathObjectWitness

    def to_dict(self) -> dict:
        return {"f": self.f, "g": self.g, "h": self.h, "path": self.path.to_dict()}


@dataclass(frozen=True, eq=False)
class PathCat:
    """A display map category with weak equivalences.

    When the display class is closed under identities and composition this is
    a path category in the clan sense; otherwise it is the data of a display
    map path category, whose fibrations are the composites of display maps.
    """

    clan: DispCat
    equivalences: frozenset[str]
    path_table: Mapping[str, PathObjectWitness] | None = None

    @property
    def cat(self) -> FiniteCategory:
        return self.clan.cat

    @property
    def display(self) -> frozenset[str]:
        return self.clan.display

    @cached_property
    def fibrations(self) -> frozenset[str]:
        return fibration_closure(self.clan)

    @cached_property
    def trivial_fibrations(self) -> frozenset[str]:
        return self.fibrations & self.equivalences

    @cached_property
    def terminal(self) -> str | None:
        return terminal_object(self.cat)

    @cached_property
    def _path_cache(self) -> dict:
        return {}

    def to_terminal(self, x: str) -> str:
        return to_terminal(self.cat, x, self.terminal)


def path_category(c: FiniteCategory, fibrations: Iterable[str], equivalences: Iterable[str],
                  path_table: Mapping[str, PathObjectWitness] | None = None) -> PathCat:
    return PathCat(DispCat(c, frozenset(fibrations)), frozenset(equivalences), path_table)


# ---------------------------------------------------------------------------
# fibre products and pairings
# ---------------------------------------------------------------------------

def fibre_square(c: FiniteCategory, q: str) -> PullbackWitness | None:
    """Canonical ``A ×_Γ A`` for ``q: A -> Γ``; ``proj_left`` is the source side."""
    return pullback(c, q, q)


def pairing(c: FiniteCategory, q: str, s: str, t: str) -> str | None:
    """``(s, t): P -> A ×_Γ A`` for ``q: A -> Γ`` if ``q s = q t``."""
    sq = fibre_square(c, q)
    if sq is None or c.compose(q, s) != c.compose(q, t):
        return None
    return mediate(c, sq, s, t)


def diagonal(c: FiniteCategory, q: str) -> str | None:
    a = c.dom(q)
    return pairing(c, q, c.identity(a), c.identity(a))


def path_object_violations(p: PathCat, w: PathObjectWitness,
                           pair_class: frozenset[str] | None = None) -> list[str]:
    """Reasons ``w`` is not a path object for ``w.base``; empty when it is."""
    c = p.cat
    pair_class = p.fibrations if pair_class is None else pair_class
    problems = []
    a = c.dom(w.base)
    if c.morphisms.get(w.r) != (a, w.P):
        problems.append("r has the wrong type")
    if c.morphisms.get(w.s) != (w.P, a) or c.morphisms.get(w.t) != (w.P, a):
        problems.append("s or t has the wrong type")
    if problems:
        return problems
    if w.r not in p.equivalences:
        problems.append("r is not an equivalence")
    if c.compose(w.s, w.r) != c.identity(a) or c.compose(w.t, w.r) != c.identity(a):
        problems.append("s∘r or t∘r is not the identity")
    pair = pairing(c, w.base, w.s, w.t)
    if pair is None:
        problems.append("(s, t) does not factor through A ×_Γ A")
    elif pair not in pair_class:
        problems.append(f"(s, t) = {pair} is not in the required class")
    return problems


def path_objects(p: PathCat, q: str, pair_class: frozenset[str] | None = None
                 ) -> Iterator[PathObjectWitness]:
    """Every path object for ``q: A -> Γ`` in increasing ``(P, r, s, t)`` order."""
    c = p.cat
    pair_class = p.fibrations if pair_class is None else pair_class
    a = c.dom(q)
    sq = fibre_square(c, q)
    if sq is None:
        return
    ident = c.identity(a)
    for P in c.sorted_objects:
        rs = [r for r in c.hom(a, P) if r in p.equivalences]
        if not rs:
            continue
        maps_back = c.hom(P, a)
        for r in rs:
            retractions = [s for s in maps_back if c.compose(s, r) == ident]
            for s in retractions:
                for t in retractions:
                    pair = pairing(c, q, s, t)
                    if pair is not None and pair in pair_class:
                        yield PathObjectWitness(q, P, r, s, t)


def find_path_object(p: PathCat, q: str, pair_class: frozenset[str] | None = None
                     ) -> PathObjectWitness | None:
    """Path object for ``q``: the tabled one if present, else the smallest found."""
    if p.path_table and q in p.path_table and pair_class is None:
        return p.path_table[q]
    key = (q, pair_class)
    cache = p._path_cache
    if key not in cache:
        cache[key] = next(path_objects(p, q, pair_class), None)
    return cache[key]


def object_path_object(p: PathCat, x: str) -> PathObjectWitness | None:
    if p.terminal is None:
        return None
    return find_path_object(p, p.to_terminal(x))


# ---------------------------------------------------------------------------
# homotopies
# ---------------------------------------------------------------------------

def homotopic(p: PathCat, f: str, g: str, over: str | None = None,
              path: PathObjectWitness | None = None) -> HomotopyWitness | None:
    """Fibrewise homotopy ``f ≃_Γ g`` for maps into ``B`` where ``over: B -> Γ``.

    ``over`` defaults to the map to the terminal object (plain homotopy).
    """
    c = p.cat
    if c.morphisms[f] != c.morphisms[g]:
        raise ValueError(f"{f} and {g} are not parallel")
    b = c.cod(f)
    if over is None:
        if p.terminal is None:
            raise NoPathObjectError("no terminal object to take homotopies over")
        over = p.to_terminal(b)
    if path is None:
        path = find_path_object(p, over)
    if path is None:
        raise NoPathObjectError(f"no path object for {over}")
    for h in c.hom(c.dom(f), path.P):
        if c.compose(path.s, h) == f and c.compose(path.t, h) == g:
            return HomotopyWitness(f, g, h, path)
    return None


def homotopy_relation(p: PathCat, path: PathObjectWitness) -> frozenset[tuple[str, str]]:
    """All pairs of maps into ``dom(path.base)``, over its base, related by ``path``."""
    c = p.cat
    rel = set()
    for x in c.sorted_objects:
        for h in c.hom(x, path.P):
            rel.add((c.compose(path.s, h), c.compose(path.t, h)))
    return frozenset(rel)


def is_homotopy_equivalence(p: PathCat, f: str) -> tuple[str, HomotopyWitness, HomotopyWitness] | None:
    c = p.cat
    x, y = c.morphisms[f]
    px, py = object_path_object(p, x), object_path_object(p, y)
    if px is None or py is None:
        return None
    for g in c.hom(y, x):
        left = homotopic(p, c.compose(g, f), c.identity(x), path=px)
        if left is None:
            continue
        right = homotopic(p, c.compose(f, g), c.identity(y), path=py)
        if right is not None:
            return g, left, right
    return None


def homotopy_equivalences(p: PathCat) -> frozenset[str]:
    return frozenset(f for f in p.cat.sorted_morphisms if is_homotopy_equivalence(p, f))


# ---------------------------------------------------------------------------
# axiom checks
# ---------------------------------------------------------------------------

def check_two_out_of_six(c: FiniteCategory, eq: Iterable[str]) -> Report:
    eq = frozenset(eq)
    rep = Report("two-out-of-six")
    for f, g, h in composable_triples(c):
        if c.compose(g, f) in eq and c.compose(h, g) in eq:
            for name, m in (("f", f), ("g", g), ("h", h), ("hgf", c.compose(h, g, f))):
                if m not in eq:
                    rep.fail("2-out-of-6", f"{g}∘{f} and {h}∘{g} are equivalences but {name} = {m} is not",
                             f, g, h)
                    break
    return rep


def check_isos_are_equivalences(c: FiniteCategory, eq: frozenset[str]) -> Report:
    rep = Report("isos-are-equivalences")
    for f in sorted(c.isomorphisms - eq):
        rep.fail("iso", f"isomorphism {f} is not an equivalence", f)
    return rep


def check_trivial_fibration_pullbacks(p: PathCat) -> Report:
    c = p.cat
    rep = Report("trivial-fibration-pullbacks")
    for q in sorted(p.trivial_fibrations):
        for sigma in c.into(c.cod(q)):
            pb = pullback(c, sigma, q)
            if pb is None:
                rep.fail("pullback-exists", f"trivial fibration {q} has no pullback along {sigma}", q, sigma)
            elif pb.proj_left not in p.trivial_fibrations:
                rep.fail("pullback-trivial", f"pullback {pb.proj_left} of {q} along {sigma} "
                         "is not a trivial fibration", q, sigma)
    return rep


def check_trivial_fibration_sections(p: PathCat) -> Report:
    c = p.cat
    rep = Report("trivial-fibration-sections")
    for q in sorted(p.trivial_fibrations):
        found = sections(c, q)
        if not found:
            rep.fail("section", f"trivial fibration {q} has no section", q)
        else:
            rep.witness(map=q, section=found[0])
    return rep


def check_clan(p: PathCat) -> Report:
    rep = Report("clan")
    rep.add(check_display_axioms(p.clan))
    c = p.cat
    fib = p.display
    for x in c.sorted_objects:
        if c.identity(x) not in fib:
            rep.fail("identity", f"id_{x} is not a fibration", c.identity(x))
    for f in sorted(fib):
        for g in c.out_of(c.cod(f)):
            if g in fib and c.compose(g, f) not in fib:
                rep.fail("composition", f"{g}∘{f} is not a fibration", g, f)
    rep.add(check_root(p.clan))
    return rep


def check_path_axioms(p: PathCat) -> Report:
    """Clan structure plus the five path category axioms."""
    c = p.cat
    rep = Report("path-axioms")
    rep.add(check_clan(p))
    rep.add(check_isos_are_equivalences(c, p.equivalences))
    rep.add(check_two_out_of_six(c, p.equivalences))
    rep.add(check_trivial_fibration_pullbacks(p))
    rep.add(check_trivial_fibration_sections(p))
    paths = rep.add(Report("path-objects"))
    if p.terminal is None:
        paths.fail("terminal", "no terminal object, so A × A is undefined")
        return rep
    for x in c.sorted_objects:
        q = p.to_terminal(x)
        w = find_path_object(p, q)
        if w is None:
            paths.fail("path-object", f"object {x} has no path object", x)
            continue
        problems = path_object_violations(p, w)
        if problems:
            paths.fail("path-object", f"tabled path object for {x}: {'; '.join(problems)}", x)
        else:
            paths.witness(object=x, **w.to_dict())
    return rep


def check_saturation(p: PathCat) -> Report:
    rep = Report("saturation")
    if p.terminal is None:
        rep.note("no root: saturation is not constrained for unrooted inputs")
        return rep
    heq = homotopy_equivalences(p)
    for f in sorted(p.equivalences - heq):
        rep.fail("saturation", f"equivalence {f} is not a homotopy equivalence", f)
    for f in sorted(heq - p.equivalences):
        rep.fail("saturation", f"homotopy equivalence {f} is not an equivalence", f)
    return rep


def check_dmpc_axioms(d: DispCat, eq: Iterable[str],
                      path_table: Mapping[str, PathObjectWitness] | None = None) -> Report:
    """Display map path category axioms 1-5 and PF."""
    p = PathCat(d, frozenset(eq), path_table)
    c = p.cat
    rep = Report("dmpc-axioms")
    rep.add(check_display_axioms(d))
    rep.add(check_isos_are_equivalences(c, p.equivalences))
    rep.add(check_two_out_of_six(c, p.equivalences))
    rep.add(check_trivial_fibration_pullbacks(p))
    rep.add(check_trivial_fibration_sections(p))
    ax5 = rep.add(Report("path-display-maps"))
    for q in sorted(d.display):
        w = find_path_object(p, q, pair_class=d.display)
        if w is None:
            ax5.fail("axiom-5", f"display map {q} has no path display map", q)
        else:
            ax5.witness(**w.to_dict())
    pf = rep.add(Report("path-fibrations"))
    for q in sorted(p.fibrations):
        if find_path_object(p, q, pair_class=p.fibrations) is None:
            pf.fail("PF", f"fibration {q} has no path fibration", q)
    return rep


def as_dmpc(d: DispCat, eq: Iterable[str]) -> PathCat:
    return PathCat(d, frozenset(eq))


def bootstrap_equivalences(d: DispCat, max_rounds: int = 64) -> frozenset[str]:
    """Equivalences determined from the display structure alone.

    Start from the isomorphisms and repeatedly replace the class by the
    homotopy equivalences computed with path objects whose ``r`` lies in the
    current class, until the class is stable.
    """
    c = d.cat
    eq = frozenset(c.isomorphisms)
    for _ in range(max_rounds):
        p = PathCat(d, eq)
        nxt = homotopy_equivalences(p) | c.isomorphisms
        if nxt == eq:
            return eq
        eq = frozenset(nxt)
    return eq
