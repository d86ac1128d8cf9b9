"""Composable arrays, partitions, symbol resolution, and rendering."""

import pathlib

import pytest

from cubecat import (
    MINUS,
    PLUS,
    ComposableArray,
    ComposablePartition,
    PartitionCell,
    SymbolicCell,
    boundary,
    compose_array,
    compose_partition,
    psi,
    render_ascii,
    resolve_symbols,
)
from cubecat.arrays import DOUBLE, EPS_H, EPS_V, GAMMA_MINUS, GAMMA_PLUS
from cubecat.core import composable_pairs
from cubecat.errors import BadTiling, NotComposable, Unresolvable
GOLDEN = pathlib.Path(__file__).parent / "golden"


def identity_square(system):
    for c in system.cubes(2):
        if all(c.vertex(v) == f"{v & 1}{(v >> 1) & 1}" for v in range(4)):
            return c
    raise AssertionError


def test_transport_array_composes_to_connection(poset_nerve):
    for a, b in list(composable_pairs(poset_nerve, poset_nerve.cubes(1), 1))[:20]:
        arr = ComposableArray(poset_nerve, [
            [poset_nerve.connection(a, 1, PLUS), poset_nerve.degeneracy(a, 2)],
            [poset_nerve.degeneracy(a, 1), poset_nerve.connection(b, 1, PLUS)],
        ], dir_v=1, dir_h=2)
        expected = poset_nerve.connection(poset_nerve.compose(a, b, 1), 1, PLUS)
        assert compose_array(arr) == expected


def test_psi_row_array(poset_nerve):
    for x in poset_nerve.cubes(2)[:10]:
        row = ComposableArray(poset_nerve, [[
            poset_nerve.connection(poset_nerve.face(x, 2, MINUS), 1, PLUS),
            x,
            poset_nerve.connection(poset_nerve.face(x, 2, PLUS), 1, MINUS),
        ]], dir_v=1, dir_h=2)
        assert compose_array(row) == psi(poset_nerve, x, 1)


def test_identity_array_composes_to_its_cell(poset_nerve):
    x = identity_square(poset_nerve)
    arr = ComposableArray(poset_nerve, [
        [x, poset_nerve.degeneracy(poset_nerve.face(x, 2, PLUS), 2)],
        [poset_nerve.degeneracy(poset_nerve.face(x, 1, PLUS), 1),
         poset_nerve.degeneracy(
             poset_nerve.face(poset_nerve.degeneracy(poset_nerve.face(x, 2, PLUS), 2), 1, PLUS), 1)],
    ], dir_v=1, dir_h=2)
    assert compose_array(arr) == x


def test_array_construction_rejects_bad_adjacency(poset_nerve):
    squares = poset_nerve.cubes(2)
    x = next(c for c in squares if poset_nerve.face(c, 2, PLUS).edges[0] == "00->01")
    y = next(c for c in squares if poset_nerve.face(c, 2, MINUS).edges[0] == "10->11")
    with pytest.raises(NotComposable):
        ComposableArray(poset_nerve, [[x, y]], dir_v=1, dir_h=2)


def test_interchange_row_vs_column_exhaustive_2x2(poset_nerve):
    # every composable 2x2 array of squares evaluates identically both ways
    squares = poset_nerve.cubes(2)
    count = 0
    from cubecat.core import interchange_grids

    for x, y, z, w in interchange_grids(poset_nerve, squares, 2, 1):
        arr = ComposableArray(poset_nerve, [[x, y], [z, w]], dir_v=1, dir_h=2)
        compose_array(arr)  # raises InterchangeViolation on disagreement
        count += 1
        if count >= 400:
            break
    assert count


def test_partition_simple_span(poset_nerve):
    pairs = composable_pairs(poset_nerve, poset_nerve.cubes(2), 2)
    for a, b in pairs:
        top = poset_nerve.compose(a, b, 2)
        mates = [c for c in poset_nerve.cubes(2)
                 if poset_nerve.face(c, 1, MINUS) == poset_nerve.face(top, 1, PLUS)]
        if mates:
            c = mates[0]
            break
    partition = ComposablePartition(poset_nerve, [
        PartitionCell(0, 0, 1, 1, a, "a"),
        PartitionCell(0, 1, 1, 2, b, "b"),
        PartitionCell(1, 0, 2, 2, c, "c"),
    ], dir_v=1, dir_h=2)
    expected = poset_nerve.compose(poset_nerve.compose(a, b, 2), c, 1)
    assert compose_partition(partition) == expected
    # column-style order: merge a with nothing first is impossible, but the
    # reverse band order must agree with rows-first
    explicit = [(0, 1), (3, 2)]
    assert compose_partition(partition, verify_order=explicit) == expected


def test_single_cell_partition(poset_nerve):
    x = poset_nerve.cubes(2)[0]
    partition = ComposablePartition(
        poset_nerve, [PartitionCell(0, 0, 1, 1, x, "x")], dir_v=1, dir_h=2
    )
    assert compose_partition(partition) == x


def test_unfold_partition_rows_first(poset_nerve):
    # the three-row reconstruction partition evaluates back to the cube
    for x in poset_nerve.cubes(2)[:10]:
        s = boundary(poset_nerve, x)
        a = psi(poset_nerve, x, 1)
        partition = ComposablePartition(poset_nerve, [
            PartitionCell(0, 0, 1, 1, poset_nerve.degeneracy(s.face(1, MINUS), 1)),
            PartitionCell(0, 1, 1, 2, poset_nerve.connection(s.face(2, PLUS), 1, PLUS)),
            PartitionCell(1, 0, 2, 2, a),
            PartitionCell(2, 0, 3, 1, poset_nerve.connection(s.face(2, MINUS), 1, MINUS)),
            PartitionCell(2, 1, 3, 2, poset_nerve.degeneracy(s.face(1, PLUS), 1)),
        ], dir_v=1, dir_h=2)
        assert compose_partition(partition) == x


def test_partition_tiling_validation(poset_nerve):
    x = poset_nerve.cubes(2)[0]
    with pytest.raises(BadTiling):
        ComposablePartition(poset_nerve, [
            PartitionCell(0, 0, 1, 1, x), PartitionCell(0, 0, 1, 1, x),
        ], dir_v=1, dir_h=2)
    with pytest.raises(BadTiling):
        ComposablePartition(poset_nerve, [
            PartitionCell(0, 0, 1, 1, x), PartitionCell(1, 1, 2, 2, x),
        ], dir_v=1, dir_h=2)


def test_partition_bad_order_detected(poset_nerve):
    x = poset_nerve.cubes(2)[0]
    partition = ComposablePartition(
        poset_nerve, [PartitionCell(0, 0, 1, 1, x)], dir_v=1, dir_h=2,
        order=[(0, 5)],
    )
    with pytest.raises(BadTiling):
        compose_partition(partition)


def test_resolve_symbols_identity_grid(poset_nerve):
    x = identity_square(poset_nerve)
    grid = [
        [SymbolicCell.plain(x, "x"), SymbolicCell(EPS_H)],
        [SymbolicCell(EPS_V), SymbolicCell(DOUBLE)],
    ]
    arr = resolve_symbols(poset_nerve, grid, dir_v=1, dir_h=2)
    assert compose_array(arr) == x
    # the resolved paddings are the expected degeneracies
    assert arr.rows[0][1] == poset_nerve.degeneracy(poset_nerve.face(x, 2, PLUS), 2)
    assert arr.rows[1][0] == poset_nerve.degeneracy(poset_nerve.face(x, 1, PLUS), 1)


def test_resolve_symbols_full_reconstruction_array(poset_nerve):
    # the 3x3 array around x whose columns cancel to x: corners are double
    # identities, the middle row folds, and the off-cells are degeneracies
    for x in poset_nerve.cubes(2)[:8]:
        grid = [
            [SymbolicCell(DOUBLE), SymbolicCell(EPS_V), SymbolicCell(GAMMA_PLUS)],
            [SymbolicCell(GAMMA_PLUS), SymbolicCell.plain(x, "x"),
             SymbolicCell(GAMMA_MINUS)],
            [SymbolicCell(GAMMA_MINUS), SymbolicCell(EPS_V), SymbolicCell(DOUBLE)],
        ]
        arr = resolve_symbols(poset_nerve, grid, dir_v=1, dir_h=2)
        assert compose_array(arr) == x
        # middle row alone is the elementary folding
        middle = ComposableArray(poset_nerve, [arr.rows[1]], dir_v=1, dir_h=2)
        assert compose_array(middle) == psi(poset_nerve, x, 1)


def test_resolve_symbols_psi_row(poset_nerve):
    for x in poset_nerve.cubes(2)[:6]:
        grid = [[SymbolicCell(GAMMA_PLUS), SymbolicCell.plain(x, "x"),
                 SymbolicCell(GAMMA_MINUS)]]
        arr = resolve_symbols(poset_nerve, grid, dir_v=1, dir_h=2)
        assert compose_array(arr) == psi(poset_nerve, x, 1)


def test_resolve_symbols_needs_context(poset_nerve):
    with pytest.raises(Unresolvable):
        resolve_symbols(poset_nerve, [[SymbolicCell(EPS_H)]], dir_v=1, dir_h=2)


def test_resolve_then_render_shows_kinds(poset_nerve):
    x = identity_square(poset_nerve)
    grid = [
        [SymbolicCell.plain(x, "x"), SymbolicCell(EPS_H)],
        [SymbolicCell(EPS_V), SymbolicCell(DOUBLE)],
    ]
    arr = resolve_symbols(poset_nerve, grid, dir_v=1, dir_h=2)
    text = render_ascii(arr)
    for glyph in ("║", "═", "□", "x"):
        assert glyph in text


@pytest.mark.parametrize("name", ["psi_row", "identity_array", "unfold_partition"])
def test_render_golden(name, poset_nerve):
    x = identity_square(poset_nerve)
    if name == "psi_row":
        grid = [[SymbolicCell(GAMMA_PLUS), SymbolicCell.plain(x, "x"),
                 SymbolicCell(GAMMA_MINUS)]]
        text = render_ascii(resolve_symbols(poset_nerve, grid, dir_v=1, dir_h=2))
    elif name == "identity_array":
        grid = [
            [SymbolicCell.plain(x, "x"), SymbolicCell(EPS_H)],
            [SymbolicCell(EPS_V), SymbolicCell(DOUBLE)],
        ]
        text = render_ascii(resolve_symbols(poset_nerve, grid, dir_v=1, dir_h=2))
    else:
        s = boundary(poset_nerve, x)
        a = psi(poset_nerve, x, 1)
        partition = ComposablePartition(poset_nerve, [
            PartitionCell(0, 0, 1, 1, poset_nerve.degeneracy(s.face(1, MINUS), 1), "eps-"),
            PartitionCell(0, 1, 1, 2, poset_nerve.connection(s.face(2, PLUS), 1, PLUS), "G+"),
            PartitionCell(1, 0, 2, 2, a, "fold"),
            PartitionCell(2, 0, 3, 1, poset_nerve.connection(s.face(2, MINUS), 1, MINUS), "G-"),
            PartitionCell(2, 1, 3, 2, poset_nerve.degeneracy(s.face(1, PLUS), 1), "eps+"),
        ], dir_v=1, dir_h=2)
        text = render_ascii(partition)
    assert text == (GOLDEN / f"{name}.txt").read_text(encoding="utf-8")


def test_interchange_on_2x3_arrays(poset_nerve):
    # exhaustive 2x3 arrays of squares: row-first equals column-first
    from cubecat.core import interchange_grids

    squares = poset_nerve.cubes(2)
    count = 0
    for x, y, z, w in interchange_grids(poset_nerve, squares, 2, 1):
        mates = [
            m for m in squares
            if poset_nerve.face(m, 2, MINUS) == poset_nerve.face(y, 2, PLUS)
        ]
        for m in mates[:2]:
            tail = [
                t for t in squares
                if poset_nerve.face(t, 2, MINUS) == poset_nerve.face(w, 2, PLUS)
                and poset_nerve.face(t, 1, MINUS) == poset_nerve.face(m, 1, PLUS)
            ]
            for t in tail[:2]:
                arr = ComposableArray(
                    poset_nerve, [[x, y, m], [z, w, t]], dir_v=1, dir_h=2
                )
                compose_array(arr)
                count += 1
        if count >= 300:
            break
    assert count


def test_unfold_partition_two_orders_agree(poset_nerve):
    # rows-first versus an order that assembles the bottom band first
    for x in poset_nerve.cubes(2)[:6]:
        s = boundary(poset_nerve, x)
        a = psi(poset_nerve, x, 1)
        partition = ComposablePartition(poset_nerve, [
            PartitionCell(0, 0, 1, 1, poset_nerve.degeneracy(s.face(1, MINUS), 1)),
            PartitionCell(0, 1, 1, 2, poset_nerve.connection(s.face(2, PLUS), 1, PLUS)),
            PartitionCell(1, 0, 2, 2, a),
            PartitionCell(2, 0, 3, 1, poset_nerve.connection(s.face(2, MINUS), 1, MINUS)),
            PartitionCell(2, 1, 3, 2, poset_nerve.degeneracy(s.face(1, PLUS), 1)),
        ], dir_v=1, dir_h=2)
        bottom_first = [(3, 4), (0, 1), (6, 2), (7, 5)]
        assert compose_partition(partition, verify_order=bottom_first) == x


def test_folding_refinement_partition_two_orders(poset_nerve):
    # the folded cube as a 3x4 partition: outer connection columns expanded,
    # the fold spanning the middle; rows-first equals a column-band order
    j = 1
    for x in poset_nerve.cubes(2)[:8]:
        s = boundary(poset_nerve, x)
        a = psi(poset_nerve, x, j)
        eps, con = poset_nerve.degeneracy, poset_nerve.connection
        sm, sp = s.face(j, MINUS), s.face(j, PLUS)
        tm, tp = s.face(j + 1, MINUS), s.face(j + 1, PLUS)
        dd_low = eps(eps(poset_nerve.face(sm, j, MINUS), j), j + 1)
        dd_high = eps(eps(poset_nerve.face(sp, j, PLUS), j), j + 1)
        partition = ComposablePartition(poset_nerve, [
            PartitionCell(0, 0, 1, 1, dd_low),
            PartitionCell(0, 1, 1, 2, eps(sm, j)),
            PartitionCell(0, 2, 1, 3, con(tp, j, PLUS)),
            PartitionCell(0, 3, 1, 4, con(tp, j, MINUS)),
            PartitionCell(1, 0, 2, 1, dd_low),
            PartitionCell(1, 1, 2, 3, a),
            PartitionCell(1, 3, 2, 4, dd_high),
            PartitionCell(2, 0, 3, 1, con(tm, j, PLUS)),
            PartitionCell(2, 1, 3, 2, con(tm, j, MINUS)),
            PartitionCell(2, 2, 3, 3, eps(sp, j)),
            PartitionCell(2, 3, 3, 4, dd_high),
        ], dir_v=j, dir_h=j + 1)
        by_rows = compose_partition(partition)
        assert by_rows == a
        column_bands = [
            (0, 4), (11, 7),          # left column
            (1, 2), (8, 9),           # horizontal pairs inside the middle
            (13, 5), (15, 14),        # stack the middle band
            (3, 6), (17, 10),         # right column
            (12, 16), (19, 18),       # glue the three bands
        ]
        assert compose_partition(partition, verify_order=column_bands) == a
