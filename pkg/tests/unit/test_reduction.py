"""Tests for elementary reductions and the tameness decision."""

import random

import pytest
from sympy.polys.domains import QQ

from tame_sl2.fixtures import anick, nontame_quadratic, random_word
from tame_sl2.grouplab.families import gen_example_g
from tame_sl2.polyring import RING_Q
from tame_sl2.reduction import (
    Linear,
    NoReductionFound,
    NotAutomorphismOfQuadric,
    NotTameWithinBudget,
    ReductionBudget,
    Tame,
    auto_inverse,
    find_elementary_reduction,
    is_tame,
    reduce,
    trace_payload,
    verdict_payload,
)
from tame_sl2.tame import TameAuto, apply_elementary, auto_degree, evaluate_word

X1, X2, X3, X4 = RING_Q.gens

SWEEP_SCALE = 6


def test_identity_reduces_without_steps() -> None:
    trace = reduce(TameAuto.identity())
    assert trace.linear
    assert isinstance(trace.verdict, Linear)
    assert trace.steps == ()


def test_example_g_is_tame_and_word_reevaluates() -> None:
    g, _ = gen_example_g()
    verdict = is_tame(g)
    assert isinstance(verdict, Tame)
    assert evaluate_word(verdict.word) == g
    degrees = [step.degree for step in verdict.trace.steps]
    assert all(later < earlier for earlier, later in zip([auto_degree(g), *degrees], degrees))


def test_find_elementary_reduction_lowers_degree() -> None:
    g, _ = gen_example_g()
    e = find_elementary_reduction(g)
    assert e is not None
    assert auto_degree(apply_elementary(e, g)) < auto_degree(g)


def test_inverse_through_certified_word() -> None:
    g, g_inv = gen_example_g()
    assert auto_inverse(g) == g_inv


def test_anick_map_has_no_reduction() -> None:
    verdict = is_tame(anick())
    assert isinstance(verdict, NotTameWithinBudget)
    assert len(verdict.trace.verdict.attempts) == 4
    payload = verdict_payload(verdict)
    assert payload["verdict"] == "NotTameWithinBudget"
    assert len(payload["trace"]["verdict"]["no_reduction_found"]["families"]) == 4


def test_quadruple_off_the_quadric_is_rejected() -> None:
    verdict = is_tame(TameAuto((X1, X2, X3, X4 + X1)))
    assert isinstance(verdict, NotAutomorphismOfQuadric)
    assert verdict_payload(verdict)["verdict"] == "NotAutomorphismOfQuadric"


def test_trace_payload_lists_steps_and_linear_end() -> None:
    g, _ = gen_example_g()
    payload = trace_payload(reduce(g))
    assert payload["steps"]
    assert all(step["family"] in ("E24", "E13", "E12", "E34") for step in payload["steps"])
    assert "linear" in payload["verdict"]


def test_budget_rejects_negative_values() -> None:
    with pytest.raises(ValueError):
        ReductionBudget(depth=-1)


def test_single_factor_words_are_recognised_as_tame() -> None:
    rng = random.Random(7)
    for _ in range(SWEEP_SCALE):
        f = evaluate_word(random_word(rng, length=1, max_degree=3))
        verdict = is_tame(f)
        assert isinstance(verdict, Tame)
        assert evaluate_word(verdict.word) == f


def test_nontame_quadratic_stops_without_a_reduction() -> None:
    verdict = is_tame(nontame_quadratic())
    assert isinstance(verdict, NotTameWithinBudget)
    assert isinstance(verdict.trace.verdict, NoReductionFound)


def test_short_words_reduce_in_strictly_decreasing_steps() -> None:
    rng = random.Random(1)
    for _ in range(SWEEP_SCALE):
        f = evaluate_word(random_word(rng, length=3, max_degree=2))
        verdict = is_tame(f)
        assert isinstance(verdict, Tame)
        assert evaluate_word(verdict.word) == f
        degrees = [step.degree for step in verdict.trace.steps]
        assert all(later < earlier for earlier, later in zip([auto_degree(f), *degrees], degrees))


def _rescale(f: TameAuto, c) -> TameAuto:
    return TameAuto((f[0].mul_ground(c), f[1], f[2], f[3].mul_ground(QQ(1) / c)))


def test_diagonal_rescaling_keeps_the_reduction_length() -> None:
    rng = random.Random(5)
    samples = [gen_example_g()[0]]
    samples += [evaluate_word(random_word(rng, length=2, max_degree=2)) for _ in range(SWEEP_SCALE)]
    for f in samples:
        trace, scaled = reduce(f), reduce(_rescale(f, QQ(2)))
        assert len(scaled.steps) == len(trace.steps)
        assert scaled.linear == trace.linear
