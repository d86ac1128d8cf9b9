"""Category presentation loading and validation."""

import pytest

from cubecat import bundled_category, load_fincat
from cubecat.errors import CategoryLawViolation, ParseError


def count_paths(graph):
    """Independent oracle: DFS path count on an acyclic graph, identities included."""
    out = {v: [] for v in graph["vertices"]}
    for e in graph["edges"]:
        out[e["src"]].append(e["tgt"])
    total = 0

    def walk(v):
        nonlocal total
        total += 1
        for w in out[v]:
            walk(w)

    for v in graph["vertices"]:
        walk(v)
    return total


FREE_SQUARE_GRAPH = {
    "vertices": ["A", "B", "C", "D"],
    "edges": [
        {"name": "f", "src": "A", "tgt": "B"},
        {"name": "g", "src": "B", "tgt": "D"},
        {"name": "h", "src": "A", "tgt": "C"},
        {"name": "k", "src": "C", "tgt": "D"},
    ],
}


def test_poset22_counts():
    cat = bundled_category("poset22")
    assert len(cat.objects) == 4
    # 4 identities, 4 covers, 1 diagonal
    assert len(cat.morphisms) == 9
    identities = [m for m in cat.morphisms if cat.is_identity(m)]
    assert len(identities) == 4


def test_free_square_counts_match_path_enumeration():
    cat = load_fincat({"graph": FREE_SQUARE_GRAPH})
    # oracle: path enumeration, frozen value 10 (4 identities + 4 generators
    # + two length-2 paths through B and through C)
    assert count_paths(FREE_SQUARE_GRAPH) == 10
    assert len(cat.morphisms) == 10
    assert cat.compose("g", "f") != cat.compose("k", "h")
    assert cat.morphisms[cat.compose("g", "f")] == ("A", "D")


def test_parallel_pair_counts():
    cat = bundled_category("parallel_pair")
    assert len(cat.morphisms) == 4
    assert sorted(cat.hom("A", "B")) == ["a", "b"]


def test_identity_compositions_filled_in():
    cat = bundled_category("poset22")
    assert cat.compose("00->01", "00->00") == "00->01"
    assert cat.compose("01->01", "00->01") == "00->01"


def test_free_category_rejects_cycles():
    graph = {
        "vertices": ["A", "B"],
        "edges": [
            {"name": "u", "src": "A", "tgt": "B"},
            {"name": "v", "src": "B", "tgt": "A"},
        ],
    }
    with pytest.raises(ParseError):
        load_fincat({"graph": graph})


def test_broken_associativity_rejected():
    doc = {
        "objects": ["x", "y", "z", "w"],
        "morphisms": [
            {"name": "ix", "src": "x", "tgt": "x"},
            {"name": "iy", "src": "y", "tgt": "y"},
            {"name": "iz", "src": "z", "tgt": "z"},
            {"name": "iw", "src": "w", "tgt": "w"},
            {"name": "xy", "src": "x", "tgt": "y"},
            {"name": "yz", "src": "y", "tgt": "z"},
            {"name": "zw", "src": "z", "tgt": "w"},
            {"name": "xz", "src": "x", "tgt": "z"},
            {"name": "yw", "src": "y", "tgt": "w"},
            {"name": "xw", "src": "x", "tgt": "w"},
            {"name": "xw2", "src": "x", "tgt": "w"},
        ],
        "identities": {"x": "ix", "y": "iy", "z": "iz", "w": "iw"},
        "compose": [
            ["yz", "xy", "xz"],
            ["zw", "yz", "yw"],
            ["zw", "xz", "xw"],
            ["yw", "xy", "xw2"],
        ],
    }
    with pytest.raises(CategoryLawViolation, match="associativity"):
        load_fincat(doc)


def test_missing_table_entry_rejected():
    doc = {
        "objects": ["x", "y", "z"],
        "morphisms": [
            {"name": "ix", "src": "x", "tgt": "x"},
            {"name": "iy", "src": "y", "tgt": "y"},
            {"name": "iz", "src": "z", "tgt": "z"},
            {"name": "xy", "src": "x", "tgt": "y"},
            {"name": "yz", "src": "y", "tgt": "z"},
        ],
        "identities": {"x": "ix", "y": "iy", "z": "iz"},
        "compose": [],
    }
    with pytest.raises(CategoryLawViolation, match="misses"):
        load_fincat(doc)


def test_malformed_document_rejected():
    with pytest.raises(ParseError):
        load_fincat({"objects": ["A"]})
    with pytest.raises(ParseError):
        load_fincat([1, 2, 3])
