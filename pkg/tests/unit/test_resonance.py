"""Tests for resonant scalars and resonant polynomials."""

import pytest
from sympy import I
from sympy.polys.domains import QQ

from tame_sl2.errors import TameError
from tame_sl2.grouplab.resonance import (
    ResonanceWitness,
    power,
    resonance_identity_holds,
    resonant,
    resonant_poly,
)
from tame_sl2.polyring import RING_Q, RING_QI

X1, X2, X3, X4 = RING_Q.gens
HALF = QQ(1, 2)


@pytest.mark.parametrize(
    ("a", "b", "expected"),
    [
        (2, HALF, ResonanceWitness(1, 1)),
        (4, HALF, ResonanceWitness(1, 2)),
        (-2, HALF, ResonanceWitness(2, 2)),
        (1, -1, ResonanceWitness(1, 2)),
        (2, 3, None),
        (2, 1, None),
    ],
)
def test_resonant_rational_pairs(a, b, expected) -> None:
    assert resonant(a, b) == expected


def test_resonant_rejects_zero() -> None:
    with pytest.raises(TameError):
        resonant(0, 1)


def test_gaussian_units_are_resonant() -> None:
    i = RING_QI.domain.from_sympy(I)
    witness = resonant(i, i, RING_QI)
    assert witness is not None
    assert power(i, witness.p, RING_QI.domain) * power(i, witness.q, RING_QI.domain) == RING_QI.domain.one


def test_resonant_polynomials() -> None:
    assert resonant_poly(X1 * X2, 2, HALF)
    assert resonance_identity_holds(X1 * X2, 2, HALF)
    assert not resonant_poly(X1, 2, HALF)
    assert not resonance_identity_holds(X1, 2, HALF)
    assert not resonant_poly(RING_Q.one, 2, HALF)
    with pytest.raises(TameError):
        resonant_poly(X3, 2, HALF)
