"""Tests for O4 membership and isotropic planes."""

import random

import pytest

from tame_sl2.errors import TameError
from tame_sl2.orth import (
    TAU,
    V4,
    Mat4,
    OrthVerdict,
    PairCase,
    classify_plane,
    extend_isotropic_pair,
    identity_mat4,
    is_orthogonal,
    is_orthogonal_matrix_identity,
    isotropic_plane,
    mat4_forms,
    mat4_inverse,
    mat4_mul,
    normalize_plane_pair,
    planes_through,
    q_pairing,
    sample_o4,
    so4_from_sl2_pair,
)
from tame_sl2.polyring import RING_Q

X1, X2, X3, X4 = RING_Q.gens


def test_identity_and_tau_verdicts() -> None:
    assert is_orthogonal(identity_mat4()) == OrthVerdict.SPECIAL
    assert is_orthogonal(TAU) == OrthVerdict.GENERAL


def test_scaling_is_not_orthogonal() -> None:
    scaled = Mat4.build([[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    assert is_orthogonal(scaled) == OrthVerdict.NO
    assert is_orthogonal_matrix_identity(scaled) == OrthVerdict.NO


def test_both_membership_checks_agree_on_samples() -> None:
    for matrix in [*V4, *sample_o4()]:
        assert is_orthogonal(matrix) == is_orthogonal_matrix_identity(matrix)
        assert is_orthogonal(matrix) != OrthVerdict.NO


def test_both_membership_checks_agree_on_random_matrices() -> None:
    rng = random.Random(3)
    samples = sample_o4()
    for _ in range(40):
        matrix = Mat4.build([[rng.choice((-1, 0, 1)) for _ in range(4)] for _ in range(4)])
        assert is_orthogonal(matrix) == is_orthogonal_matrix_identity(matrix)
        product = mat4_mul(rng.choice(samples), rng.choice(samples))
        assert is_orthogonal(product) == is_orthogonal_matrix_identity(product)
        assert is_orthogonal(product) != OrthVerdict.NO


def test_sl2_pair_images_are_special() -> None:
    matrix = so4_from_sl2_pair([[1, 1], [0, 1]], [[0, -1], [1, 0]])
    assert is_orthogonal(matrix) == OrthVerdict.SPECIAL
    assert mat4_mul(matrix, mat4_inverse(matrix)) == identity_mat4()
    with pytest.raises(TameError):
        so4_from_sl2_pair([[2, 0], [0, 1]], [[1, 0], [0, 1]])


def test_pairing_values() -> None:
    assert q_pairing(X1, X4) == RING_Q.domain.convert(1) / 2
    assert q_pairing(X2, X3) == -RING_Q.domain.convert(1) / 2
    assert q_pairing(X1, X3) == 0


def test_isotropic_plane_rejects_non_isotropic_spans() -> None:
    assert isotropic_plane(X1, X3) == isotropic_plane(X1 + X3, X3)
    with pytest.raises(TameError):
        isotropic_plane(X1, X4)
    with pytest.raises(TameError):
        isotropic_plane(X1, 2 * X1)


def test_planes_through_a_coordinate_line() -> None:
    horizontal, vertical = planes_through(X1)
    assert horizontal == isotropic_plane(X1, X2)
    assert vertical == isotropic_plane(X1, X3)
    assert classify_plane(horizontal).kind == "horizontal"
    assert classify_plane(vertical).kind == "vertical"


def test_extend_isotropic_pair_keeps_first_rows() -> None:
    matrix = extend_isotropic_pair(X1, X2)
    forms = mat4_forms(matrix)
    assert forms[:2] == (X1, X2)
    assert is_orthogonal(matrix) != OrthVerdict.NO


def test_normalize_plane_pair_cases() -> None:
    first = isotropic_plane(X1, X2)
    _, case = normalize_plane_pair(first, first)
    assert case == PairCase.EQUAL
    matrix, case = normalize_plane_pair(first, isotropic_plane(X3, X4))
    assert case == PairCase.TRANSVERSE
    assert is_orthogonal(matrix) != OrthVerdict.NO
    _, case = normalize_plane_pair(first, isotropic_plane(X1, X3))
    assert case == PairCase.MEETING
