"""Tests for 4x4 grids and the 6x6 grid search."""

import logging

import pytest

from tame_sl2.complex.grids import find_grid, grid_4x4, search_6x6
from tame_sl2.complex.subcomplex import big_square
from tame_sl2.complex.vertices import canonical_t1, canonical_t2, vertex_t3
from tame_sl2.errors import TameError
from tame_sl2.polyring import RING_Q
from tame_sl2.tame import ElementaryAuto, TameAuto

X1, X2, X3, X4 = RING_Q.gens


def _make_grid():
    return grid_4x4(X2, X3, X4, X1)


def test_grid_has_twenty_five_distinct_vertices() -> None:
    result = _make_grid()
    assert not result.degenerate
    assert len(result.positions) == 25
    assert len(set(result.positions.values())) == 25
    assert result.positions[(0, 0)] == vertex_t3(TameAuto.identity())
    assert result.positions[(-1, 1)] == canonical_t1(X1)
    assert set(result.corners) == {"NE", "NW", "SE", "SW"}


def test_grid_is_found_again_by_search() -> None:
    result = _make_grid()
    grid = find_grid(result.complex, result.positions[(0, 0)], 2)
    assert grid is not None
    assert len(grid) == 25


def test_grid_rejects_polynomials_in_the_wrong_variable() -> None:
    with pytest.raises(TameError) as excinfo:
        grid_4x4(X1, X3, X4, X1)
    assert "Jacobian" in str(excinfo.value)


def test_degenerate_grid_reports_the_vanished_side(caplog) -> None:
    caplog.set_level(logging.INFO, logger="tame_sl2.complex.grids")
    result = grid_4x4(RING_Q.zero, X3, X4, X1)
    assert result.degenerate
    assert result.positions == {}
    assert vertex_t3(ElementaryAuto("E13", X4).as_auto()) in result.complex
    assert "degenerate grid: side N vanishes" in caplog.text


def test_find_grid_edge_cases() -> None:
    S = big_square(TameAuto.identity())
    with pytest.raises(TameError):
        find_grid(S, canonical_t2(X1, X2), 1)
    assert find_grid(S, canonical_t1(X1 + X2), 1) is None


def test_no_6x6_grid_in_a_single_big_square() -> None:
    report = search_6x6(big_square(TameAuto.identity()))
    assert report.empty
    assert report.centers_checked == 4
