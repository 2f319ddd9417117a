"""Tests for canonical vertices of the square complex."""

import pytest

from tame_sl2.complex.vertices import (
    act,
    big_square_vertices,
    canonical_t1,
    canonical_t2,
    standard_vertices,
    translate,
    vertex_eq_t3,
    vertex_t3,
)
from tame_sl2.errors import TameError
from tame_sl2.grouplab.families import example_g_word, gen_example_g
from tame_sl2.orth import TAU
from tame_sl2.polyring import RING_Q, RING_QI, lift
from tame_sl2.tame import ElementaryAuto, TameAuto, from_matrix

X1, X2, X3, X4 = RING_Q.gens


def test_type1_vertices_ignore_scalars_and_field() -> None:
    assert canonical_t1(2 * X1) == canonical_t1(X1)
    assert canonical_t1(lift(X1, RING_QI)) == canonical_t1(X1)
    with pytest.raises(TameError):
        canonical_t1(RING_Q.zero)


def test_type2_vertices_are_spans() -> None:
    assert canonical_t2(X1, X2) == canonical_t2(X1 + X2, X2)
    assert canonical_t2(X1, X2) != canonical_t2(X1, X3)
    with pytest.raises(TameError):
        canonical_t2(X1, 2 * X1)


def test_type3_vertices_are_o4_orbits() -> None:
    tau = from_matrix(TAU)
    identity = TameAuto.identity()
    assert vertex_t3(identity) == vertex_t3(tau)
    assert vertex_eq_t3(identity, tau)
    e = ElementaryAuto("E24", X1).as_auto()
    assert vertex_t3(e) != vertex_t3(identity)
    assert not vertex_eq_t3(identity, e)


def test_big_square_of_identity() -> None:
    lines, planes, center = big_square_vertices(TameAuto.identity())
    assert lines == [canonical_t1(x) for x in (X1, X2, X3, X4)]
    assert planes[(0, 2)] == canonical_t2(X1, X3)
    assert center == vertex_t3(TameAuto.identity())
    assert len(standard_vertices()) == 9


def test_example_g_moves_x1_line_to_x4_line() -> None:
    _, g_inv = gen_example_g()
    assert translate(g_inv, canonical_t1(X1)) == canonical_t1(X4)
    assert act(example_g_word(), canonical_t1(X1)) == canonical_t1(X4)


def test_vertex_t3_rejects_maps_off_the_quadric() -> None:
    with pytest.raises(TameError):
        vertex_t3(TameAuto((X1, X2, X3, X4 + X1)))
