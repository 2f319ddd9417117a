"""Tests for tame automorphisms, elementary maps and words."""

import pytest

from tame_sl2.errors import TameError
from tame_sl2.grouplab.families import example_g_word, gen_example_g
from tame_sl2.orth import TAU
from tame_sl2.polyring import RING_Q, WeightVec
from tame_sl2.tame import (
    ElementaryAuto,
    TameAuto,
    TameWord,
    auto_degree,
    component_drop_equiv,
    compose,
    elementary,
    evaluate_word,
    from_matrix,
    invert_word,
    is_o4,
)

X1, X2, X3, X4 = RING_Q.gens


def test_elementary_map_layout() -> None:
    assert ElementaryAuto("E24", X1).as_auto() == TameAuto((X1, X2 + X1**2, X3, X4 + X1 * X3))
    assert elementary("E12", 3).as_auto() == TameAuto((X1 + 3 * X3, X2 + 3 * X4, X3, X4))


def test_elementary_rejects_foreign_variables() -> None:
    with pytest.raises(TameError):
        ElementaryAuto("E24", X2)
    with pytest.raises(TameError):
        ElementaryAuto("E99", X1)


def test_example_g_composes_with_its_inverse_to_identity() -> None:
    g, g_inv = gen_example_g()
    assert compose(g, g_inv) == TameAuto.identity()
    assert compose(g_inv, g) == TameAuto.identity()


def test_example_word_evaluates_right_to_left() -> None:
    g, g_inv = gen_example_g()
    word = example_g_word()
    assert evaluate_word(word) == g
    assert evaluate_word(invert_word(word)) == g_inv
    assert evaluate_word(TameWord(())) == TameAuto.identity()


def test_compose_checks_the_quadric() -> None:
    broken = TameAuto((X1, X2, X3, X4 + X1))
    with pytest.raises(TameError) as excinfo:
        compose(broken, TameAuto.identity())
    assert excinfo.value.witness is not None
    with pytest.raises(TameError):
        TameAuto((X1, X2, X3))  # type: ignore[arg-type]


def test_degree_and_linear_membership() -> None:
    g, _ = gen_example_g()
    assert auto_degree(g) == WeightVec.of(10, 5, 5, 0)
    assert is_o4(from_matrix(TAU))
    assert not is_o4(g)


def test_component_drop_agrees_for_a_reduction() -> None:
    f = ElementaryAuto("E24", X1**2).as_auto()
    report = component_drop_equiv(f, ElementaryAuto("E24", -(X1**2)))
    assert report.auto_relation == "<"
    assert report.agree
