from __future__ import annotations

import pytest
from hypothesis import given

from axiomcat import DATA_DIR, catfile, corpus
from axiomcat.catfile import ParseError, SemanticError, emit, from_dispcat, from_pathcat, load, parse
from axiomcat.dispcat import DispCat, all_maps, canonical_structure
from axiomcat.fincat import validate_category

from conftest import preorders

SMALL = """\
[meta]
name = small   # trailing comment

[objects]
A B

[morphisms]
f : A -> B

[classes]
display = f id_A id_B
"""


def test_parse_small():
    cf = parse(SMALL)
    assert cf.name == "small"
    assert cf.category.objects == ("A", "B")
    assert set(cf.category.morphisms) == {"f", "id_A", "id_B"}
    assert cf.classes["display"] == frozenset({"f", "id_A", "id_B"})
    assert validate_category(cf.category) == []
    assert cf.equivalences() == frozenset({"id_A", "id_B"})


def test_bytes_input():
    a, b = parse(SMALL.encode()).category, parse(SMALL).category
    assert (a.objects, a.morphisms, a.composition) == (b.objects, b.morphisms, b.composition)


@pytest.mark.parametrize("path", sorted(DATA_DIR.glob("*.cat")), ids=lambda p: p.stem)
def test_bundled_roundtrip(path):
    text = path.read_text()
    cf = load(path)
    assert emit(cf) == text
    assert emit(parse(emit(cf))) == text


@given(preorders())
def test_emit_parse_roundtrip(c):
    cf = catfile.CategoryFile(c, {"name": "random"}, {"display": all_maps(c)})
    back = parse(emit(cf))
    assert back.category.morphisms == c.morphisms
    assert back.category.composition == c.composition
    assert back.classes == cf.classes


def test_roundtrip_with_choices():
    c = corpus.interval()
    d = canonical_structure(DispCat(c, all_maps(c)))
    cf = from_dispcat(d, {"name": "x"})
    back = parse(emit(cf))
    assert back.to_dispcat().reindex_table == d.reindex_table
    p = corpus.trivial_path_category(c)
    assert parse(emit(from_pathcat(p))).to_pathcat().equivalences == p.equivalences


@pytest.mark.parametrize("text, line, column", [
    ("[objects]\nA\n[morphisms]\nf A -> B\n", 4, 1),
    ("[objects]\nA\n[bogus]\n", 3, 2),
    ("A\n[objects]\n", 1, 1),
    ("[objects]\nA\n[objects]\nB\n", 3, 2),
    ("[objects]\nA B\n[classes]\n  wobbly = id_A\n", 4, 3),
    ("[objects]\nA\n[composition]\nf . g h\n", 4, 1),
    ("[objects]\nA\n[choices]\nreindex a b c\n", 4, 1),
    ("[objects]\nA\n[objects\n", 3, 1),
    ("[objects]\nA=B\n", 2, 1),
    ("", 1, 1),
])
def test_parse_errors_have_positions(text, line, column):
    with pytest.raises(ParseError) as err:
        parse(text)
    assert (err.value.line, err.value.column) == (line, column)


@pytest.mark.parametrize("text, ident", [
    ("[objects]\nA\n[morphisms]\nf : A -> Z\n", "Z"),
    ("[objects]\nA\n[morphisms]\nid_A : A -> A\n", "id_A"),
    ("[objects]\nA A\n", "A"),
    ("[objects]\nA\n[composition]\nf . id_A = id_A\n", "f"),
    ("[objects]\nA\n[classes]\ndisplay = g\n", "g"),
    ("[objects]\nA\n[choices]\npath id_A = Q id_A id_A id_A\n", "Q"),
    ("[objects]\nA\n[choices]\nreindex id_A u = id_A id_A\n", "u"),
])
def test_semantic_errors_name_identifier(text, ident):
    with pytest.raises(SemanticError) as err:
        parse(text)
    assert err.value.ident == ident


def test_duplicate_morphism():
    with pytest.raises(ParseError, match="declared twice"):
        parse("[objects]\nA\n[morphisms]\nf : A -> A\nf : A -> A\n")


def test_expectations():
    cf = load(DATA_DIR / "chain3-telescope.cat")
    assert cf.expectations["path-axioms"] == "fail"
    assert cf.expectations["dmpc"] == "pass"
