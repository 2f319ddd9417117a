"""Tests for big squares, explored balls, links and exports."""

import json

import pytest

from tame_sl2.complex.subcomplex import (
    SubComplexBuilder,
    big_square,
    edge_distance,
    elementary_moves,
    explore,
    link_girth_ok,
    link_graph,
    square_intersection_ok,
    to_dot,
    to_json,
)
from tame_sl2.complex.vertices import canonical_t1, canonical_t2, standard_vertices, vertex_t3
from tame_sl2.errors import TameError
from tame_sl2.grouplab.families import example_g_word
from tame_sl2.polyring import RING_Q
from tame_sl2.tame import TameAuto

X1, X2, X3, X4 = RING_Q.gens
CENTER = vertex_t3(TameAuto.identity())


def _make_standard():
    return big_square(TameAuto.identity(), parity=0)


def test_big_square_counts() -> None:
    S = _make_standard()
    assert len(S.vertices) == 9
    assert len(S.edges) == 12
    assert len(S.squares) == 4
    assert [len(S.of_kind(kind)) for kind in (1, 2, 3)] == [4, 4, 1]


def test_center_link_is_a_four_cycle() -> None:
    S = _make_standard()
    report = link_girth_ok(CENTER, S)
    assert report.ok
    assert (report.nodes, report.edges, report.girth) == (4, 4, 4)
    assert report.bipartite
    assert link_graph(S, CENTER).number_of_edges() == 4


def test_edge_distance_inside_big_square() -> None:
    S = _make_standard()
    assert edge_distance(S, canonical_t1(X1), CENTER) == 2
    assert edge_distance(S, canonical_t1(X1), canonical_t1(X4)) == 4
    with pytest.raises(TameError):
        edge_distance(S, canonical_t1(X1 + X2), CENTER)


def test_squares_meet_along_edges_only() -> None:
    assert square_intersection_ok(_make_standard()).ok


def test_orientation_follows_parity() -> None:
    even = to_json(_make_standard())
    odd = to_json(big_square(TameAuto.identity(), parity=1))
    label = canonical_t2(X1, X2).label()
    assert [v["orientation"] for v in even["vertices"] if v["label"] == label] == ["horizontal"]
    assert [v["orientation"] for v in odd["vertices"] if v["label"] == label] == ["vertical"]


def test_exports_are_deterministic() -> None:
    S = _make_standard()
    dot = to_dot(S)
    assert dot.startswith("graph subcomplex {")
    assert dot.count("// square:") == 4
    assert json.dumps(to_json(S), sort_keys=True) == json.dumps(to_json(_make_standard()), sort_keys=True)


def test_elementary_moves_respect_family_variables() -> None:
    moves = elementary_moves([X1, X2 * X4])
    assert sorted(e.family for e in moves) == ["E13", "E24", "E34"]


def test_explore_contains_standard_square_and_passes_checks() -> None:
    S = explore([], 1, [X1])
    assert all(v in S for v in standard_vertices())
    assert len(S.of_kind(3)) > 1
    assert link_girth_ok(CENTER, S).ok
    assert square_intersection_ok(S).ok
    with pytest.raises(TameError):
        explore([], -1, [X1])


def test_chain_of_a_word_connects_the_endpoints() -> None:
    builder = SubComplexBuilder()
    start = TameAuto.identity()
    end = builder.add_chain(start, example_g_word())
    S = builder.build()
    assert edge_distance(S, CENTER, vertex_t3(end)) is not None
