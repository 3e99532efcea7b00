"""Bundled example categories and the structures used throughout the tests."""
from __future__ import annotations


from .dispcat import DispCat, all_maps, identities
from .fincat import FiniteCategory, make_category, preorder_category
from .pathcat import PathCat


def point() -> FiniteCategory:
    return make_category(["*"], {}, name="point")


def arrow() -> FiniteCategory:
    return preorder_category(["A", "B"], [("A", "B")], name="arrow")


def chain3() -> FiniteCategory:
    return preorder_category(["a", "b", "c"], [("a", "b"), ("b", "c")], name="chain3")


def diamond() -> FiniteCategory:
    """The four-element lattice ``bot < x, y < top``; ``x ∧ y = bot``."""
    return preorder_category(["bot", "x", "y", "top"],
                             [("bot", "x"), ("bot", "y"), ("x", "top"), ("y", "top")],
                             name="diamond")


def interval() -> FiniteCategory:
    """Two objects with mutually inverse arrows ``i: 0 -> 1`` and ``j: 1 -> 0``."""
    return make_category(["0", "1"], {"i": ("0", "1"), "j": ("1", "0")},
                         {("j", "i"): "id_0", ("i", "j"): "id_1"}, name="interval")


def discrete_two() -> FiniteCategory:
    return make_category(["P", "Q"], {}, name="discrete-two")


def cospan() -> FiniteCategory:
    """``A -> C <- B`` with nothing else: the pair has no pullback."""
    return make_category(["A", "B", "C"], {"f": ("A", "C"), "g": ("B", "C")}, name="cospan")


def z2() -> FiniteCategory:
    """The group of order two as a one-object category."""
    return make_category(["*"], {"n": ("*", "*")}, {("n", "n"): "id_*"}, name="z2")


FINITE_LIMIT = ("point", "arrow", "chain3", "diamond", "interval")
BUILDERS = {"point": point, "arrow": arrow, "chain3": chain3, "diamond": diamond,
            "interval": interval}


def trivial_path_category(c: FiniteCategory) -> PathCat:
    """Every map a fibration, equivalences the isomorphisms."""
    return PathCat(DispCat(c, all_maps(c)), frozenset(c.isomorphisms))


def path_corpus() -> dict[str, PathCat]:
    out = {name: trivial_path_category(BUILDERS[name]()) for name in FINITE_LIMIT}
    return out


def dispcat_corpus() -> dict[str, DispCat]:
    """Rooted display map categories used for the reverse round trip and the matrix."""
    out = {f"{name}-all": DispCat(BUILDERS[name](), all_maps(BUILDERS[name]()))
           for name in FINITE_LIMIT}
    c = chain3()
    out["chain3-telescope"] = DispCat(c, identities(c) | {"a<b", "b<c"})
    c = interval()
    out["interval-isos"] = DispCat(c, frozenset(c.isomorphisms))
    c = point()
    out["point-isos"] = DispCat(c, frozenset(c.isomorphisms))
    return out


def dmpc_corpus() -> dict[str, PathCat]:
    """Display map path categories: display data plus isomorphisms as equivalences."""
    return {name: PathCat(d, frozenset(d.cat.isomorphisms)) for name, d in dispcat_corpus().items()}


def corrupted_path_fixtures() -> dict[str, PathCat]:
    a = arrow()
    i = interval()
    return {
        # the trivial fibration A -> B has no section
        "arrow-eq-all": PathCat(DispCat(a, all_maps(a)), all_maps(a)),
        # isomorphisms i and j are not equivalences
        "interval-eq-ids": PathCat(DispCat(i, all_maps(i)), identities(i)),
    }
