"""Tests for membership in K1 and H2 and the Stab([x1]) normal form."""

import pytest

from tame_sl2.errors import TameError
from tame_sl2.grouplab.families import gen_example_g
from tame_sl2.grouplab.stabilizer import membership_h2, membership_k1, stab_x1_normal_form
from tame_sl2.orth import TAU
from tame_sl2.polyring import RING_Q
from tame_sl2.tame import ElementaryAuto, TameAuto, from_matrix

X1, X2, X3, X4 = RING_Q.gens


def test_membership() -> None:
    assert membership_h2(ElementaryAuto("E24", X1 * X3).as_auto())
    assert not membership_k1(ElementaryAuto("E24", X1 * X3).as_auto())
    assert membership_k1(ElementaryAuto("E24", X1**2).as_auto())
    assert membership_k1(from_matrix(TAU))
    assert not membership_h2(from_matrix(TAU))


def test_normal_form_alternates_between_factors() -> None:
    f = TameAuto((X1, X2, X3 + X1**2 * X2**2, X4 + X1 * X2**3))
    form = stab_x1_normal_form(f)
    assert form.labels() == ["K1", "H2", "K1"]
    assert form.alternates()
    assert form.evaluate() == f


def test_member_of_both_groups_is_one_factor() -> None:
    form = stab_x1_normal_form(ElementaryAuto("E24", X1**3).as_auto())
    assert form.labels() == ["K1&H2"]


def test_normal_form_requires_x1_first_component() -> None:
    g, _ = gen_example_g()
    with pytest.raises(TameError):
        stab_x1_normal_form(g)
