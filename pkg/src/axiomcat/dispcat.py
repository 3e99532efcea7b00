"""Display map categories: marked classes, reindexing, roots and splitness.

A type in context ``Γ`` is identified with its display map ``p: Γ.A -> Γ``,
so types are morphism identifiers.  A structured display map category names
its strict types separately (``strict_types`` maps a type name to its display
map); for categories read from files the name is the display map itself.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .errors import NoPullbackError, NotStructuredError
from .fincat import (FiniteCategory, PullbackWitness, is_pullback, mediate, pullback,
                     terminal_object)
from .report import Report

MapClass = frozenset


@dataclass(frozen=True)
class Reindexing:
    """Chosen reindexing ``A[σ]``: its display map and the weakening ``σ^▵``.

    ``type`` is the name of the reindexed strict type when the choice comes
    from a reindexing table.
    """

    display: str
    top: str
    type: str | None = None

    def to_dict(self) -> dict:
        return {"display": self.display, "top": self.top, "type": self.type}


@dataclass(frozen=True, eq=False)
class DispCat:
    cat: FiniteCategory
    display: frozenset[str]
    strict_types: Mapping[str, str] | None = None
    reindex_table: Mapping[tuple[str, str], Reindexing] | None = None

    @property
    def structured(self) -> bool:
        return self.strict_types is not None and self.reindex_table is not None

    @property
    def strict_display(self) -> frozenset[str] | None:
        if self.strict_types is None:
            return None
        return frozenset(self.strict_types.values())

    def types_over(self, gamma: str) -> tuple[str, ...]:
        return tuple(f for f in self.cat.into(gamma) if f in self.display)

    @cached_property
    def fibrations(self) -> frozenset[str]:
        return fibration_closure(self)

    @cached_property
    def _reindex_cache(self) -> dict:
        return {}


def replace_display(d: DispCat, display: Iterable[str]) -> DispCat:
    return DispCat(d.cat, frozenset(display), d.strict_types, d.reindex_table)


def all_maps(c: FiniteCategory) -> frozenset[str]:
    return frozenset(c.morphisms)


def identities(c: FiniteCategory) -> frozenset[str]:
    return frozenset(c.identities.values())


# ---------------------------------------------------------------------------

def repletion(c: FiniteCategory, s: Iterable[str]) -> frozenset[str]:
    """Closure of ``s`` under isomorphism in the arrow category (fixpoint)."""
    current = set(s)
    frontier = set(current)
    while frontier:
        new = set()
        for f in frontier:
            x, y = c.morphisms[f]
            for x2 in c.sorted_objects:
                for i in c.isos_between(x2, x):
                    for y2 in c.sorted_objects:
                        for j in c.isos_between(y, y2):
                            g = c.compose(j, f, i)
                            if g not in current:
                                new.add(g)
        current |= new
        frontier = new
    return frozenset(current)


def check_display_axioms(d: DispCat) -> Report:
    c = d.cat
    rep = Report("display-axioms")
    unknown = sorted(f for f in d.display if f not in c.morphisms)
    for f in unknown:
        rep.fail("membership", f"{f} is not a morphism of the host category", f)
    if unknown:
        return rep
    for f in sorted(repletion(c, d.display) - d.display):
        rep.fail("replete", f"{f} is isomorphic in the arrow category to a display map", f)
    for p in sorted(d.display):
        for sigma in c.into(c.cod(p)):
            pb = pullback(c, sigma, p)
            if pb is None:
                rep.fail("pullback-exists", f"{p} has no pullback along {sigma}", p, sigma)
            elif pb.proj_left not in d.display:
                rep.fail("pullback-stable",
                         f"pullback {pb.proj_left} of {p} along {sigma} is not a display map",
                         p, sigma, pb.proj_left)
    if d.strict_types is not None:
        for name, p in sorted(d.strict_types.items()):
            if p not in d.display:
                rep.fail("strict", f"strict type {name} has non-display map {p}", name, p)
        if repletion(c, d.strict_display) != d.display:
            missing = sorted(d.display - repletion(c, d.strict_display))
            rep.fail("strict-repletion", "strict display maps do not generate the display class",
                     *missing)
    if d.reindex_table is not None:
        if d.strict_types is None:
            rep.fail("structured", "reindexing table given without strict types")
        else:
            for name, p in sorted(d.strict_types.items()):
                for sigma in c.into(c.cod(p)):
                    entry = d.reindex_table.get((name, sigma))
                    if entry is None:
                        rep.fail("reindex-table", f"no chosen reindexing of {name} along {sigma}",
                                 name, sigma)
                        continue
                    if entry.type not in d.strict_types or d.strict_types[entry.type] != entry.display:
                        rep.fail("reindex-table", f"{name}[{sigma}] is not a strict type", name, sigma)
                    if not is_pullback(c, sigma, p, entry.display, entry.top):
                        rep.fail("reindex-table", f"{name}[{sigma}] is not a pullback square",
                                 name, sigma)
    return rep


def reindex(d: DispCat, a: str, sigma: str) -> Reindexing:
    """Chosen reindexing of type ``a`` (a strict type name or display map) along ``sigma``."""
    if d.reindex_table is not None and (a, sigma) in d.reindex_table:
        return d.reindex_table[(a, sigma)]
    cache = d._reindex_cache
    if (a, sigma) in cache:
        return cache[(a, sigma)]
    p = d.strict_types[a] if d.strict_types and a in d.strict_types else a
    pb = pullback(d.cat, sigma, p)
    if pb is None:
        raise NoPullbackError(f"{p} has no pullback along {sigma}")
    result = Reindexing(pb.proj_left, pb.proj_right)
    cache[(a, sigma)] = result
    return result


def reindex_square(d: DispCat, a: str, sigma: str) -> PullbackWitness:
    p = d.strict_types[a] if d.strict_types and a in d.strict_types else a
    r = reindex(d, a, sigma)
    return PullbackWitness(d.cat.dom(r.display), r.display, r.top, (sigma, p))


def reindex_term(d: DispCat, a: str, term: str, sigma: str,
                 chosen: Reindexing | None = None) -> str:
    """``term[σ]``: the unique section of ``A[σ]`` with ``σ^▵ ∘ term[σ] = term ∘ σ``."""
    c = d.cat
    chosen = chosen or reindex(d, a, sigma)
    sq = PullbackWitness(c.dom(chosen.display), chosen.display, chosen.top,
                         (sigma, c.cod(chosen.top)))
    m = mediate(c, sq, c.identity(c.dom(sigma)), c.compose(term, sigma))
    if m is None:
        raise NoPullbackError(f"no term {term}[{sigma}]")
    return m


def fibration_closure(d: DispCat) -> frozenset[str]:
    """Identities and display maps, closed under composition."""
    c = d.cat
    closure = set(c.identities.values()) | set(d.display)
    frontier = set(closure)
    while frontier:
        new = set()
        for f in frontier:
            for g in c.out_of(c.cod(f)):
                if g in closure and (gf := c.compose(g, f)) not in closure:
                    new.add(gf)
            for e in c.into(c.dom(f)):
                if e in closure and (fe := c.compose(f, e)) not in closure:
                    new.add(fe)
        closure |= new
        frontier = new
    return frozenset(closure)


def telescope(d: DispCat, f: str, max_length: int | None = None) -> list[str] | None:
    """Display maps ``[p1, ..., pk]`` with ``f = p1 ∘ ... ∘ pk``, or ``None``.

    ``p1`` lands in ``cod f``.  An identity is the empty telescope; the
    shortest decomposition (then the smallest identifiers) is returned.
    """
    c = d.cat
    if c.is_identity(f):
        return []
    limit = max_length if max_length is not None else len(c.morphisms)
    layer: dict[str, list[str]] = {p: [p] for p in d.types_over(c.cod(f))}
    seen: set[str] = set()
    for _ in range(limit):
        if f in layer:
            return layer[f]
        nxt: dict[str, list[str]] = {}
        for g, chain in sorted(layer.items()):
            seen.add(g)
            for p in d.types_over(c.dom(g)):
                h = c.compose(g, p)
                if h not in nxt and h not in seen and h not in layer:
                    nxt[h] = chain + [p]
        if not nxt:
            break
        layer = nxt
    return None


def telescopes(d: DispCat, base: str, max_length: int) -> list[list[str]]:
    """All chains ``[p1, ..., pk]`` of display maps with ``p1`` into ``base``, ``1 <= k <= max_length``."""
    c = d.cat
    out: list[list[str]] = []
    layer = [[p] for p in d.types_over(base)]
    for _ in range(max_length):
        out.extend(layer)
        layer = [chain + [p] for chain in layer for p in d.types_over(c.dom(chain[-1]))]
    return out


def check_root(d: DispCat) -> Report:
    c = d.cat
    rep = Report("root")
    t = terminal_object(c)
    if t is None:
        rep.fail("terminal", "no terminal object")
        return rep
    rep.witness(terminal=t)
    fib = d.fibrations
    for f in c.into(t):
        if f not in fib:
            rep.fail("root", f"{f}: {c.dom(f)} -> {t} is not a fibration", f)
    return rep


def check_split(d: DispCat) -> Report:
    """Reindexing choices respect identities and composition on the nose."""
    if not d.structured:
        raise NotStructuredError("check_split needs strict types and a reindexing table")
    c = d.cat
    rep = Report("split")
    table = d.reindex_table
    for name, p in sorted(d.strict_types.items()):
        gamma = c.cod(p)
        ident = table.get((name, c.identity(gamma)))
        if ident is None or ident.type != name or ident.top != c.identity(c.dom(p)):
            rep.fail("split-identity", f"{name}[id] ≠ {name}", name)
        for sigma in c.into(gamma):
            first = table.get((name, sigma))
            if first is None:
                rep.fail("split-total", f"{name}[{sigma}] not chosen", name, sigma)
                continue
            for tau in c.into(c.dom(sigma)):
                whole = table.get((name, c.compose(sigma, tau)))
                second = table.get((first.type, tau))
                if whole is None or second is None:
                    rep.fail("split-total", f"{name}[{sigma}∘{tau}] not chosen", name, sigma, tau)
                    continue
                if whole.type != second.type or whole.display != second.display:
                    rep.fail("split-composition",
                             f"{name}[{sigma}∘{tau}] = {whole.type} but {name}[{sigma}][{tau}] = {second.type}",
                             name, sigma, tau)
                elif whole.top != c.compose(first.top, second.top):
                    rep.fail("split-weakening",
                             f"({sigma}∘{tau})^▵ ≠ {sigma}^▵ ∘ {tau}^▵ for {name}", name, sigma, tau)
    return rep


def canonical_structure(d: DispCat, strict: Iterable[str] | None = None) -> DispCat:
    """Structure ``d`` using canonical pullbacks as reindexing choices.

    Strict types default to all display maps; every reindexing lands on the
    canonical pullback projection, which is added as a strict type.
    """
    c = d.cat
    strict_maps = set(strict if strict is not None else d.display)
    table: dict[tuple[str, str], Reindexing] = {}
    pending = sorted(strict_maps)
    while pending:
        p = pending.pop()
        for sigma in c.into(c.cod(p)):
            pb = pullback(c, sigma, p)
            if pb is None:
                raise NoPullbackError(f"{p} has no pullback along {sigma}")
            table[(p, sigma)] = Reindexing(pb.proj_left, pb.proj_right, pb.proj_left)
            if pb.proj_left not in strict_maps:
                strict_maps.add(pb.proj_left)
                pending.append(pb.proj_left)
    return DispCat(c, d.display, {p: p for p in sorted(strict_maps)}, table)
