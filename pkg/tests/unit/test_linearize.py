"""Tests for linearizing finite groups by averaging."""

import pytest

from tame_sl2.errors import TameError
from tame_sl2.grouplab.linearize import (
    FiniteSubgroup,
    TriangularMap,
    conjugate_linear,
    diagonalize_triangular,
    linearize,
)
from tame_sl2.orth import TAU, Mat4
from tame_sl2.polyring import RING_Q
from tame_sl2.tame import ElementaryAuto, TameAuto, compose, from_matrix

X1, X2, X3, X4 = RING_Q.gens
MINUS_ONE = from_matrix(Mat4.build([[-1 if i == j else 0 for j in range(4)] for i in range(4)]))


def test_generated_group_closes_up() -> None:
    group = FiniteSubgroup.generated_by([from_matrix(TAU)])
    assert len(group) == 2
    with pytest.raises(TameError):
        FiniteSubgroup((from_matrix(TAU),))


def test_linear_group_needs_no_conjugation() -> None:
    report = linearize(FiniteSubgroup.generated_by([from_matrix(TAU)]))
    assert report.case == "linear"
    assert report.conjugator == TameAuto.identity()


def test_conjugated_involution_is_linearized() -> None:
    m = ElementaryAuto("E24", X1).as_auto()
    g = conjugate_linear(m, MINUS_ONE)
    assert not g.is_linear()
    group = FiniteSubgroup.generated_by([g])
    report = linearize(group)
    assert report.case == "Stab([x1,x3])"
    assert report.conjugator == m
    for element, image in zip(group.elements, report.images):
        assert image.is_linear()
        assert compose(report.conjugator, element) == compose(image, report.conjugator)


def test_triangular_group_is_diagonalized() -> None:
    order = (1, 2)
    identity = TriangularMap((X2, X3), order)
    f = TriangularMap((-X2 + X3**2, -X3), order)
    u = diagonalize_triangular([identity, f])
    assert u.diagonal() == (1, 1)
    assert u.then(f) == TriangularMap((-X2, -X3), order).then(u)


def test_triangular_shape_is_enforced() -> None:
    with pytest.raises(TameError):
        TriangularMap((X2 + X2**2, X3), (1, 2))
