"""Tests for the elliptic/hyperbolic classification of words."""

import pytest
from sympy.polys.domains import QQ

from tame_sl2.complex.isometry import (
    CERTIFICATE,
    EllipticWitness,
    HyperbolicWitness,
    classify_isometry,
    geodesic_chain,
    orbit_complex,
)
from tame_sl2.complex.vertices import act, canonical_t1, standard_vertices
from tame_sl2.errors import TameError
from tame_sl2.fixtures import henon_word
from tame_sl2.grouplab.families import example_g_word, gen_hyperelliptic
from tame_sl2.orth import TAU, V4
from tame_sl2.polyring import RING_Q
from tame_sl2.tame import ElementaryAuto, TameAuto, TameWord

X1, X2, X3, X4 = RING_Q.gens


def test_linear_word_is_elliptic() -> None:
    verdict = classify_isometry(TameWord((TAU,)))
    assert isinstance(verdict, EllipticWitness)
    assert verdict.vertex == canonical_t1(X1)


def test_conjugated_linear_map_fixes_a_vertex_off_the_standard_square() -> None:
    a, b = ElementaryAuto("E24", X3), ElementaryAuto("E13", X2)
    for m in V4[1:]:
        w = TameWord((a, b, m, b.inverse(), a.inverse()))
        verdict = classify_isometry(w)
        assert isinstance(verdict, EllipticWitness)
        assert verdict.vertex not in standard_vertices()
        assert act(w, verdict.vertex) == verdict.vertex


@pytest.mark.parametrize("r", [1, 2, pytest.param(3, marks=pytest.mark.slow)])
def test_henon_word_translates_by_twice_its_length(r: int) -> None:
    verdict = classify_isometry(henon_word(r))
    assert isinstance(verdict, HyperbolicWitness)
    assert verdict.certificate == CERTIFICATE
    assert verdict.length == 2 * r


def test_example_g_word_is_hyperbolic_through_x1_and_x4() -> None:
    verdict = classify_isometry(example_g_word())
    assert isinstance(verdict, HyperbolicWitness)
    assert verdict.length == 4
    ends = {canonical_t1(X1), canonical_t1(X4)}
    assert any({u, v} == ends for u, v in zip(verdict.axis, verdict.axis[1:]))


def test_hyperelliptic_witness_is_hyperbolic() -> None:
    report = gen_hyperelliptic(2, QQ(1, 2))
    assert isinstance(classify_isometry(report.witness), HyperbolicWitness)


def test_horizon_must_allow_a_comparison() -> None:
    with pytest.raises(TameError):
        classify_isometry(TameWord((TAU,)), horizon=1)


def test_orbit_complex_indexes_inverse_powers() -> None:
    _, inverses = orbit_complex(henon_word(1), 1, 1)
    assert inverses[0] == TameAuto.identity()
    assert sorted(inverses) == [-1, 0, 1]


def test_geodesic_chain_of_a_fixed_vertex_is_constant() -> None:
    chain = geodesic_chain(TameWord((TAU,)), canonical_t1(X1), 3)
    assert chain == [canonical_t1(X1)] * 3
