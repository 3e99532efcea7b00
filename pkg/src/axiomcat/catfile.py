"""The line-oriented category file format.

See README for the grammar.  Identities ``id_X`` and their composites are
implicit and never written.  ``emit`` produces the canonical text, so
``parse(emit(f))`` reproduces ``f`` and emitting twice is byte-stable.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .dispcat import DispCat, Reindexing, all_maps
from .fincat import FiniteCategory, make_category
from .pathcat import PathCat, PathObjectWitness

SECTIONS = ("meta", "objects", "morphisms", "composition", "classes", "choices")
CLASSES = ("display", "strict_display", "fibration", "equivalence")
IDENT = re.compile(r"[^\s=:.#\[\]]+")


class CatFileError(Exception):
    pass


class ParseError(CatFileError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class SemanticError(CatFileError):
    def __init__(self, message: str, ident: str):
        super().__init__(f"{message}: {ident}")
        self.ident = ident


@dataclass
class CategoryFile:
    category: FiniteCategory
    meta: dict[str, str] = field(default_factory=dict)
    classes: dict[str, frozenset[str]] = field(default_factory=dict)
    reindex: dict[tuple[str, str], tuple[str, str]] = field(default_factory=dict)
    paths: dict[str, PathObjectWitness] = field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.meta.get("name", self.category.name)

    @property
    def expectations(self) -> dict[str, str]:
        return {k[len("expect."):]: v for k, v in self.meta.items() if k.startswith("expect.")}

    def display(self) -> frozenset[str]:
        for key in ("display", "fibration"):
            if key in self.classes:
                return self.classes[key]
        return all_maps(self.category)

    def equivalences(self) -> frozenset[str]:
        return self.classes.get("equivalence", frozenset(self.category.isomorphisms))

    def to_dispcat(self) -> DispCat:
        strict = self.classes.get("strict_display")
        table = None
        if strict is not None and self.reindex:
            table = {(a, s): Reindexing(b, top, b) for (a, s), (b, top) in self.reindex.items()}
        return DispCat(self.category, self.display(),
                       {p: p for p in sorted(strict)} if strict is not None else None, table)

    def to_pathcat(self) -> PathCat:
        return PathCat(self.to_dispcat(), self.equivalences(), dict(self.paths) or None)


# ---------------------------------------------------------------------------

def _tokens(text: str, lineno: int, offset: int = 0) -> list[tuple[str, int]]:
    out = []
    for m in re.finditer(r"\S+", text):
        tok = m.group()
        if not IDENT.fullmatch(tok):
            raise ParseError(f"bad identifier {tok!r}", lineno, offset + m.start() + 1)
        out.append((tok, offset + m.start() + 1))
    return out


def parse(data: str | bytes) -> CategoryFile:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    section = None
    seen: set[str] = set()
    meta: dict[str, str] = {}
    objects: list[str] = []
    arrows: dict[str, tuple[str, str]] = {}
    comps: list[tuple[str, str, str, int]] = []
    classes: dict[str, list[str]] = {}
    reindex_rows: list[tuple[str, str, str, str, int]] = []
    path_rows: list[tuple[str, str, str, str, str, int]] = []
    for lineno, raw in enumerate(data.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        col = len(line) - len(line.lstrip()) + 1
        if stripped.startswith("["):
            m = re.fullmatch(r"\[([a-z_]+)\]", stripped)
            if not m:
                raise ParseError("malformed section header", lineno, col)
            section = m.group(1)
            if section not in SECTIONS:
                raise ParseError(f"unknown section {section!r}", lineno, col + 1)
            if section in seen:
                raise ParseError(f"duplicate section {section!r}", lineno, col + 1)
            seen.add(section)
            continue
        if section is None:
            raise ParseError("content before the first section", lineno, col)
        if section == "meta":
            m = re.fullmatch(r"\s*([\w.\-]+)\s*=\s*(.*?)\s*", line)
            if not m:
                raise ParseError("expected 'key = value'", lineno, col)
            meta[m.group(1)] = m.group(2)
        elif section == "objects":
            objects.extend(t for t, _ in _tokens(line, lineno))
        elif section == "morphisms":
            m = re.fullmatch(r"\s*(\S+)\s*:\s*(\S+)\s*->\s*(\S+)\s*", line)
            if not m:
                raise ParseError("expected 'f : X -> Y'", lineno, col)
            for g in (1, 2, 3):
                _tokens(m.group(g), lineno, m.start(g))
            f = m.group(1)
            if f in arrows:
                raise ParseError(f"morphism {f} declared twice", lineno, m.start(1) + 1)
            arrows[f] = (m.group(2), m.group(3))
        elif section == "composition":
            m = re.fullmatch(r"\s*(\S+)\s+\.\s+(\S+)\s*=\s*(\S+)\s*", line)
            if not m:
                raise ParseError("expected 'g . f = h'", lineno, col)
            comps.append((m.group(1), m.group(2), m.group(3), lineno))
        elif section == "classes":
            m = re.fullmatch(r"\s*(\w+)\s*=(.*)", line)
            if not m:
                raise ParseError("expected 'class = f g ...'", lineno, col)
            if m.group(1) not in CLASSES:
                raise ParseError(f"unknown class {m.group(1)!r}", lineno, m.start(1) + 1)
            classes.setdefault(m.group(1), []).extend(
                t for t, _ in _tokens(m.group(2), lineno, m.start(2)))
        elif section == "choices":
            toks = stripped.split()
            if len(toks) == 6 and toks[0] == "reindex" and toks[3] == "=":
                reindex_rows.append((toks[1], toks[2], toks[4], toks[5], lineno))
            elif len(toks) == 7 and toks[0] == "path" and toks[2] == "=":
                path_rows.append((toks[1], toks[3], toks[4], toks[5], toks[6], lineno))
            else:
                raise ParseError("expected 'reindex A sigma = B top' or 'path q = P r s t'",
                                 lineno, col)
    if "objects" not in seen or not objects:
        raise ParseError("missing objects section", 1, 1)
    objset = set(objects)
    if len(objset) != len(objects):
        dup = next(o for o in objects if objects.count(o) > 1)
        raise SemanticError("duplicate object", dup)
    for f, (x, y) in arrows.items():
        for o in (x, y):
            if o not in objset:
                raise SemanticError(f"morphism {f} mentions an unknown object", o)
        if f.startswith("id_") and f[3:] in objset:
            raise SemanticError("identities are implicit", f)
    c0 = make_category(objects, arrows, {})
    composites = {}
    for g, f, h, _ in comps:
        for ident in (g, f, h):
            if ident not in c0.morphisms:
                raise SemanticError("unknown morphism in composition", ident)
        composites[(g, f)] = h
    cat = make_category(objects, arrows, composites, name=meta.get("name", ""))
    known = cat.morphisms
    out_classes = {}
    for k, members in classes.items():
        for f in members:
            if f not in known:
                raise SemanticError(f"unknown morphism in class {k}", f)
        out_classes[k] = frozenset(members)
    reindex = {}
    for a, s, b, top, _ in reindex_rows:
        for ident in (a, s, b, top):
            if ident not in known:
                raise SemanticError("unknown morphism in reindex choice", ident)
        reindex[(a, s)] = (b, top)
    paths = {}
    for q, P, r, s, t, _ in path_rows:
        if P not in objset:
            raise SemanticError("unknown object in path choice", P)
        for ident in (q, r, s, t):
            if ident not in known:
                raise SemanticError("unknown morphism in path choice", ident)
        paths[q] = PathObjectWitness(q, P, r, s, t)
    return CategoryFile(cat, meta, out_classes, reindex, paths)


def load(path: str | Path) -> CategoryFile:
    return parse(Path(path).read_bytes())


def emit(cf: CategoryFile) -> str:
    c = cf.category
    ids = set(c.identities.values())
    lines = ["[meta]"]
    meta = dict(cf.meta)
    if c.name and "name" not in meta:
        meta["name"] = c.name
    lines += [f"{k} = {v}" for k, v in sorted(meta.items())]
    lines += ["", "[objects]"] + list(c.objects)
    lines += ["", "[morphisms]"]
    lines += [f"{f} : {x} -> {y}" for f, (x, y) in sorted(c.morphisms.items()) if f not in ids]
    lines += ["", "[composition]"]
    lines += [f"{g} . {f} = {h}" for (g, f), h in sorted(c.composition.items())
              if g not in ids and f not in ids]
    if cf.classes:
        lines += ["", "[classes]"]
        lines += [f"{k} = {' '.join(sorted(v))}".rstrip() for k, v in sorted(cf.classes.items())]
    if cf.reindex or cf.paths:
        lines += ["", "[choices]"]
        lines += [f"reindex {a} {s} = {b} {top}" for (a, s), (b, top) in sorted(cf.reindex.items())]
        lines += [f"path {q} = {w.P} {w.r} {w.s} {w.t}" for q, w in sorted(cf.paths.items())]
    return "\n".join(lines) + "\n"


def from_pathcat(p: PathCat, meta: dict[str, str] | None = None) -> CategoryFile:
    classes = {"display": p.display, "equivalence": p.equivalences}
    return CategoryFile(p.cat, dict(meta or {}), classes)


def from_dispcat(d: DispCat, meta: dict[str, str] | None = None) -> CategoryFile:
    classes = {"display": d.display}
    reindex = {}
    if d.strict_types is not None:
        classes["strict_display"] = frozenset(d.strict_types.values())
    if d.reindex_table is not None:
        reindex = {(a, s): (r.display, r.top) for (a, s), r in d.reindex_table.items()}
    return CategoryFile(d.cat, dict(meta or {}), classes, reindex)
