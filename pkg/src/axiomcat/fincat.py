"""Finite categories given by explicit composition tables.

Objects and morphisms are opaque string identifiers.  Every choice the
library makes (terminal object, pullback, path object, ...) is the
lexicographically smallest candidate, so results are reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product as _pairs
from typing import Iterable, Iterator, Mapping

from .report import Violation


@dataclass(frozen=True, eq=False)
class FiniteCategory:
    objects: tuple[str, ...]
    morphisms: Mapping[str, tuple[str, str]]
    identities: Mapping[str, str]
    composition: Mapping[tuple[str, str], str]
    name: str = ""

    # -- basic structure -------------------------------------------------
    def dom(self, f: str) -> str:
        return self.morphisms[f][0]

    def cod(self, f: str) -> str:
        return self.morphisms[f][1]

    def identity(self, x: str) -> str:
        return self.identities[x]

    def is_identity(self, f: str) -> bool:
        return self.identities.get(self.dom(f)) == f

    def compose(self, *fs: str) -> str:
        """Composite ``fs[0] ∘ fs[1] ∘ ... ∘ fs[-1]`` (rightmost applied first)."""
        if not fs:
            raise ValueError("compose needs at least one morphism")
        result = fs[-1]
        for g in reversed(fs[:-1]):
            try:
                result = self.composition[(g, result)]
            except KeyError:
                raise KeyError(f"{g} ∘ {result} is undefined") from None
        return result

    def composable(self, g: str, f: str) -> bool:
        return self.cod(f) == self.dom(g)

    @cached_property
    def sorted_objects(self) -> tuple[str, ...]:
        return tuple(sorted(self.objects))

    @cached_property
    def sorted_morphisms(self) -> tuple[str, ...]:
        return tuple(sorted(self.morphisms))

    @cached_property
    def _homs(self) -> dict[tuple[str, str], tuple[str, ...]]:
        table: dict[tuple[str, str], list[str]] = {}
        for f in self.sorted_morphisms:
            table.setdefault(self.morphisms[f], []).append(f)
        return {k: tuple(v) for k, v in table.items()}

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        return self._homs.get((x, y), ())

    @cached_property
    def _adjacency(self) -> tuple[dict[str, tuple[str, ...]], dict[str, tuple[str, ...]]]:
        into: dict[str, list[str]] = {}
        out: dict[str, list[str]] = {}
        for f in self.sorted_morphisms:
            x, y = self.morphisms[f]
            out.setdefault(x, []).append(f)
            into.setdefault(y, []).append(f)
        return ({k: tuple(v) for k, v in into.items()}, {k: tuple(v) for k, v in out.items()})

    def into(self, y: str) -> tuple[str, ...]:
        return self._adjacency[0].get(y, ())

    def out_of(self, x: str) -> tuple[str, ...]:
        return self._adjacency[1].get(x, ())

    @cached_property
    def _inverses(self) -> dict[str, str]:
        inv = {}
        for f in self.sorted_morphisms:
            x, y = self.morphisms[f]
            for g in self.hom(y, x):
                if (self.composition.get((g, f)) == self.identities.get(x)
                        and self.composition.get((f, g)) == self.identities.get(y)):
                    inv[f] = g
                    break
        return inv

    @cached_property
    def isomorphisms(self) -> frozenset[str]:
        return frozenset(self._inverses)

    def inverse(self, f: str) -> str | None:
        return self._inverses.get(f)

    def isos_between(self, x: str, y: str) -> tuple[str, ...]:
        return tuple(f for f in self.hom(x, y) if f in self._inverses)

    def is_thin(self) -> bool:
        return all(len(v) <= 1 for v in self._homs.values())

    # -- caches for the universal constructions ----------------------------
    @cached_property
    def _pullback_cache(self) -> dict:
        return {}

    @cached_property
    def _terminal(self) -> tuple[str | None]:
        return (_find_terminal(self),)


@dataclass(frozen=True)
class PullbackWitness:
    """A pullback square ``f ∘ proj_left = g ∘ proj_right`` over the cospan ``(f, g)``."""

    apex: str
    proj_left: str
    proj_right: str
    against: tuple[str, str]

    def to_dict(self) -> dict:
        return {"apex": self.apex, "proj_left": self.proj_left,
                "proj_right": self.proj_right, "against": list(self.against)}


@dataclass(frozen=True)
class Functor:
    """A functor between finite categories given by its object and morphism maps."""

    source: FiniteCategory
    target: FiniteCategory
    on_objects: Mapping[str, str]
    on_morphisms: Mapping[str, str]

    def __call__(self, f: str) -> str:
        return self.on_morphisms[f]

    def obj(self, x: str) -> str:
        return self.on_objects[x]


def identity_functor(c: FiniteCategory) -> Functor:
    return Functor(c, c, {x: x for x in c.objects}, {f: f for f in c.morphisms})


def functor_violations(F: Functor) -> list[Violation]:
    """Functor laws: typing, identities and composition preserved exactly."""
    out: list[Violation] = []
    s, t = F.source, F.target
    for x in s.sorted_objects:
        if x not in F.on_objects or F.on_objects[x] not in t.identities:
            out.append(Violation("functor-objects", f"object {x} has no image", (x,)))
    for f in s.sorted_morphisms:
        if f not in F.on_morphisms or F.on_morphisms[f] not in t.morphisms:
            out.append(Violation("functor-morphisms", f"morphism {f} has no image", (f,)))
    if out:
        return out
    for f in s.sorted_morphisms:
        x, y = s.morphisms[f]
        if t.morphisms[F(f)] != (F.obj(x), F.obj(y)):
            out.append(Violation("functor-typing", f"F({f}) has the wrong domain or codomain", (f,)))
    for x in s.sorted_objects:
        if F(s.identity(x)) != t.identity(F.obj(x)):
            out.append(Violation("functor-identity", f"F(id_{x}) is not an identity", (x,)))
    for (g, f), h in sorted(s.composition.items()):
        if t.composition.get((F(g), F(f))) != F(h):
            out.append(Violation("functor-composition", f"F({g}∘{f}) ≠ F({g})∘F({f})", (g, f)))
    return out


def is_isomorphism_of_categories(F: Functor) -> bool:
    if functor_violations(F):
        return False
    return (len(set(F.on_objects.values())) == len(F.target.objects) == len(F.source.objects)
            and len(set(F.on_morphisms.values())) == len(F.target.morphisms) == len(F.source.morphisms))


# ---------------------------------------------------------------------------
# construction helpers
# ---------------------------------------------------------------------------

def make_category(objects: Iterable[str], arrows: Mapping[str, tuple[str, str]],
                  composites: Mapping[tuple[str, str], str] | None = None,
                  name: str = "", identity_prefix: str = "id_") -> FiniteCategory:
    """Build a category, adding identity morphisms ``id_X`` and identity composites.

    ``composites`` maps ``(g, f)`` to ``g ∘ f`` for composable non-identity pairs.
    """
    objects = tuple(objects)
    morphisms: dict[str, tuple[str, str]] = {}
    identities: dict[str, str] = {}
    for x in objects:
        i = f"{identity_prefix}{x}"
        identities[x] = i
        morphisms[i] = (x, x)
    for f, (x, y) in arrows.items():
        if f in morphisms and morphisms[f] != (x, y):
            raise ValueError(f"morphism {f} declared twice")
        morphisms[f] = (x, y)
    composition: dict[tuple[str, str], str] = dict(composites or {})
    for f, (x, y) in morphisms.items():
        composition[(identities[y], f)] = f
        composition[(f, identities[x])] = f
    return FiniteCategory(objects, morphisms, identities, composition, name)


def preorder_category(objects: Iterable[str], leq: Iterable[tuple[str, str]],
                      name: str = "", arrow_name=None) -> FiniteCategory:
    """The thin category of the reflexive-transitive closure of ``leq``."""
    objects = tuple(objects)
    rel = {(x, x) for x in objects} | set(leq)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in list(_pairs(rel, rel)):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    arrow_name = arrow_name or (lambda a, b: f"{a}<{b}")
    arrows = {arrow_name(a, b): (a, b) for (a, b) in rel if a != b}
    names = {(a, b): arrow_name(a, b) for (a, b) in rel if a != b}
    for x in objects:
        names[(x, x)] = f"id_{x}"
    composites = {}
    for (a, b), (c, d) in _pairs(rel, rel):
        if b == c and a != b and c != d:
            composites[(names[(c, d)], names[(a, b)])] = names[(a, d)]
    return make_category(objects, arrows, composites, name=name)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def validate_category(c: FiniteCategory) -> list[Violation]:
    """All violated category axioms; empty iff ``c`` is a category."""
    out: list[Violation] = []
    objs = set(c.objects)
    if len(objs) != len(c.objects):
        out.append(Violation("objects", "duplicate object identifiers"))
    for f, (x, y) in sorted(c.morphisms.items()):
        if x not in objs or y not in objs:
            out.append(Violation("typing", f"{f}: {x} -> {y} mentions an unknown object", (f,)))
    for x in c.sorted_objects:
        i = c.identities.get(x)
        if i is None or c.morphisms.get(i) != (x, x):
            out.append(Violation("identity", f"object {x} lacks an identity endomorphism", (x,)))
    if out:
        return out
    for (g, f), h in sorted(c.composition.items()):
        if g not in c.morphisms or f not in c.morphisms or h not in c.morphisms:
            out.append(Violation("composition-table", f"{g}∘{f}={h} mentions an unknown morphism", (g, f, h)))
        elif c.cod(f) != c.dom(g):
            out.append(Violation("composition-table", f"{g}∘{f} is defined but not composable", (g, f)))
        elif c.morphisms[h] != (c.dom(f), c.cod(g)):
            out.append(Violation("composition-table", f"{g}∘{f}={h} has the wrong type", (g, f, h)))
    if out:
        return out
    for f in c.sorted_morphisms:
        for g in c.out_of(c.cod(f)):
            if (g, f) not in c.composition:
                out.append(Violation("composition-total", f"{g}∘{f} is undefined", (g, f)))
    if out:
        return out
    for f in c.sorted_morphisms:
        x, y = c.morphisms[f]
        if c.composition[(f, c.identity(x))] != f:
            out.append(Violation("unit-right", f"{f}∘id_{x} ≠ {f}", (f,)))
        if c.composition[(c.identity(y), f)] != f:
            out.append(Violation("unit-left", f"id_{y}∘{f} ≠ {f}", (f,)))
    for f in c.sorted_morphisms:
        for g in c.out_of(c.cod(f)):
            gf = c.composition[(g, f)]
            for h in c.out_of(c.cod(g)):
                if c.composition[(h, gf)] != c.composition[(c.composition[(h, g)], f)]:
                    out.append(Violation("associativity",
                                         f"{h}∘({g}∘{f}) ≠ ({h}∘{g})∘{f}", (h, g, f)))
    return out


# ---------------------------------------------------------------------------
# universal constructions
# ---------------------------------------------------------------------------

def is_isomorphism(c: FiniteCategory, f: str) -> tuple[bool, str | None]:
    inv = c.inverse(f)
    return inv is not None, inv


def _find_terminal(c: FiniteCategory) -> str | None:
    for t in c.sorted_objects:
        if all(len(c.hom(x, t)) == 1 for x in c.objects):
            return t
    return None


def terminal_object(c: FiniteCategory) -> str | None:
    """The smallest object receiving exactly one morphism from every object."""
    return c._terminal[0]


def to_terminal(c: FiniteCategory, x: str, terminal: str | None = None) -> str:
    t = terminal if terminal is not None else terminal_object(c)
    if t is None:
        raise ValueError("category has no terminal object")
    return c.hom(x, t)[0]


def cones(c: FiniteCategory, f: str, g: str, apex: str) -> list[tuple[str, str]]:
    return [(p, q) for p in c.hom(apex, c.dom(f)) for q in c.hom(apex, c.dom(g))
            if c.composition[(f, p)] == c.composition[(g, q)]]


def is_pullback(c: FiniteCategory, f: str, g: str, p: str, q: str) -> bool:
    """Whether ``(p, q)`` is a pullback of the cospan ``(f, g)`` (checked exhaustively)."""
    apex = c.dom(p)
    if c.dom(q) != apex or c.cod(p) != c.dom(f) or c.cod(q) != c.dom(g):
        return False
    if c.composition[(f, p)] != c.composition[(g, q)]:
        return False
    for z in c.sorted_objects:
        seen = set()
        for m in c.hom(z, apex):
            seen.add((c.composition[(p, m)], c.composition[(q, m)]))
        if len(seen) != len(c.hom(z, apex)):
            return False
        if seen != set(cones(c, f, g, z)):
            return False
    return True


def pullback(c: FiniteCategory, f: str, g: str) -> PullbackWitness | None:
    """Canonical pullback of ``f: X -> Z`` and ``g: Y -> Z``, or ``None``."""
    key = (f, g)
    cache = c._pullback_cache
    if key in cache:
        return cache[key]
    if c.cod(f) != c.cod(g):
        raise ValueError(f"{f} and {g} do not form a cospan")
    found = None
    for apex in c.sorted_objects:
        for p, q in cones(c, f, g, apex):
            if is_pullback(c, f, g, p, q):
                found = PullbackWitness(apex, p, q, (f, g))
                break
        if found:
            break
    cache[key] = found
    return found


def mediate(c: FiniteCategory, pb: PullbackWitness, left: str, right: str) -> str | None:
    """The unique ``m`` with ``proj_left ∘ m = left`` and ``proj_right ∘ m = right``."""
    if c.dom(left) != c.dom(right):
        return None
    for m in c.hom(c.dom(left), pb.apex):
        if c.composition[(pb.proj_left, m)] == left and c.composition[(pb.proj_right, m)] == right:
            return m
    return None


def product(c: FiniteCategory, x: str, y: str) -> PullbackWitness | None:
    t = terminal_object(c)
    if t is None:
        return None
    return pullback(c, to_terminal(c, x, t), to_terminal(c, y, t))


def pullback_comparison(c: FiniteCategory, a: PullbackWitness, b: PullbackWitness) -> str | None:
    """The canonical isomorphism ``apex(a) -> apex(b)`` between two pullbacks of one cospan."""
    m = mediate(c, b, a.proj_left, a.proj_right)
    if m is None or m not in c.isomorphisms:
        return None
    return m


def sections(c: FiniteCategory, p: str, base: str | None = None) -> list[str]:
    """All ``s`` with ``p ∘ s = base`` (``base`` defaults to the identity of ``cod p``)."""
    base = base if base is not None else c.identity(c.cod(p))
    return [s for s in c.hom(c.dom(base), c.dom(p)) if c.composition[(p, s)] == base]


def composable_triples(c: FiniteCategory) -> Iterator[tuple[str, str, str]]:
    for f in c.sorted_morphisms:
        for g in c.out_of(c.cod(f)):
            for h in c.out_of(c.cod(g)):
                yield f, g, h
