"""Tests for the Henon, hyperelliptic and parabolic generators."""

import pytest
from sympy.polys.domains import QQ

from tame_sl2.errors import TameError
from tame_sl2.grouplab.families import (
    gen_henon,
    gen_hyperelliptic,
    gen_parabolic,
    parabolic_drift,
    raw_degree,
)
from tame_sl2.grouplab.resonance import ResonanceWitness
from tame_sl2.polyring import RING_Q
from tame_sl2.tame import TameAuto, compose, evaluate_word

X1, X2, X3, X4 = RING_Q.gens


def test_henon_factor_shape() -> None:
    word = gen_henon([(-1, -1, X2**2)])
    expected = TameAuto((-X2, -X1 - X2**3, X4, X3 + X4 * X2**2))
    assert evaluate_word(word) == expected
    assert len(gen_henon([(1, 1, X2**2), (2, 3, X4**3)])) == 4


def test_henon_needs_degree_two() -> None:
    assert raw_degree(X2 * X4) == 2
    with pytest.raises(TameError):
        gen_henon([(1, 1, X2)])


def test_resonant_hyperelliptic_witness_commutes() -> None:
    report = gen_hyperelliptic(2, QQ(1, 2))
    assert report.form == "resonant"
    assert report.resonance == ResonanceWitness(1, 1)
    h = evaluate_word(report.witness)
    assert compose(report.f, h) == compose(h, report.f)
    with pytest.raises(TameError):
        gen_hyperelliptic(2, 3)


def test_elementary_hyperelliptic_form() -> None:
    report = gen_hyperelliptic(-1, -1, form="elementary")
    assert report.form == "elementary"
    assert report.verified == "planar with m=3, n=3"
    assert report.f.preserves_quadric()


def test_parabolic_family_sizes() -> None:
    assert len(gen_parabolic(0).generators) == 1
    family = gen_parabolic(1)
    assert len(family.generators) == 2
    assert len(family.phi) == 4
    with pytest.raises(TameError):
        gen_parabolic(3)


def test_parabolic_drift_for_first_index() -> None:
    assert parabolic_drift(1) == 4
