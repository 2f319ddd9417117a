"""Tests for generic degrees, parachutes and degree bounds."""

import random
from itertools import permutations

import pytest

from tame_sl2.degrees import (
    degree_report,
    generic_degree_data,
    hom_membership,
    lower_bound_check,
    multilayer_impossible,
    parachute,
    parachute_bound_holds,
    pseudo_jacobian_bound_holds,
)
from tame_sl2.errors import TameError
from tame_sl2.fixtures import random_poly, random_word
from tame_sl2.grouplab.families import gen_example_g
from tame_sl2.polyring import RING_Q, WeightVec, quadric
from tame_sl2.tame import TameAuto, evaluate_word

X1, X2, X3, X4 = RING_Q.gens

SWEEP_SCALE = 4


def test_hom_membership_finds_powers_of_q() -> None:
    assert hom_membership(quadric() ** 2 + X1, quadric()) == (1, 2)
    assert hom_membership(X1, quadric()) is None


def test_generic_degree_data_of_independent_pair() -> None:
    data = generic_degree_data(X1, X2)
    assert not data.dependent
    assert data.nabla == WeightVec.of(1, 2, 0, 1)
    assert not multilayer_impossible(data, WeightVec.of(2, 1, 1, 0))


def test_dependent_leading_parts_are_detected() -> None:
    data = generic_degree_data(X1**2 + X2, X1**3)
    assert data.dependent
    assert (data.relation.s1, data.relation.s2) == (3, 2)


def test_parachute_fails_on_dependent_pair() -> None:
    with pytest.raises(TameError) as excinfo:
        parachute(X1, X1)
    assert "k=0" in excinfo.value.witness


def test_degree_bounds_on_coordinates() -> None:
    assert pseudo_jacobian_bound_holds(X1, X2, X3)
    assert parachute_bound_holds(X1, X2)
    g, _ = gen_example_g()
    assert parachute_bound_holds(g[1], g[3])


def test_lower_bound_report() -> None:
    report = lower_bound_check(X1, X2, X1)
    assert report.hypotheses_hold
    assert report.holds
    sl2 = lower_bound_check(X1, X2, X1, variant="sl2")
    assert sl2.holds
    with pytest.raises(TameError):
        lower_bound_check(X1, X2, X3)


def test_degree_report_on_identity_has_no_mismatch() -> None:
    report = degree_report([TameAuto.identity()])
    assert len(report.rows) == 4
    assert report.mismatches == []


def test_bounds_hold_on_component_pairs_of_random_words() -> None:
    rng = random.Random(11)
    for _ in range(SWEEP_SCALE):
        f = evaluate_word(random_word(rng, length=2, max_degree=2))
        for i, j in permutations(range(4), 2):
            k = next(index for index in range(4) if index not in (i, j))
            assert pseudo_jacobian_bound_holds(f[i], f[j], f[k])
            assert parachute_bound_holds(f[i], f[j])
            data = generic_degree_data(f[i], f[j])
            assert data.nabla is None or data.nabla <= data.d1 + data.d2
            r = X1 + random_poly(rng, (0, 1), 2, (-1, 0, 1))
            assert lower_bound_check(f[i], f[j], r).holds
