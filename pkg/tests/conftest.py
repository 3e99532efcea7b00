from __future__ import annotations

import pytest
from hypothesis import settings, strategies as st

from axiomcat import corpus
from axiomcat.fincat import preorder_category

settings.register_profile("ci", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def paths():
    return corpus.path_corpus()


@pytest.fixture(scope="session")
def dmpcs():
    return corpus.dmpc_corpus()


@st.composite
def preorders(draw, max_objects: int = 4):
    """Random finite preorders as thin categories."""
    n = draw(st.integers(1, max_objects))
    objs = [f"o{i}" for i in range(n)]
    pairs = [(a, b) for a in objs for b in objs if a != b]
    rel = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return preorder_category(objs, rel, name="random")


@st.composite
def lattices(draw, max_bits: int = 3):
    """Powerset lattices of subsets closed under intersection: finite meet-semilattices with top."""
    bits = draw(st.integers(1, max_bits))
    full = (1 << bits) - 1
    family = set(draw(st.lists(st.integers(0, full), max_size=6))) | {full}
    changed = True
    while changed:
        changed = False
        for a in list(family):
            for b in list(family):
                if a & b not in family:
                    family.add(a & b)
                    changed = True
    objs = [f"s{v}" for v in sorted(family)]
    rel = [(f"s{a}", f"s{b}") for a in family for b in family if a != b and a & b == a]
    return preorder_category(objs, rel, name="lattice"), {f"s{v}": v for v in family}
