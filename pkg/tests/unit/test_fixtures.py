"""Tests for the named examples and random words."""

import random

import pytest

from tame_sl2.fixtures import NAMED, named, random_word
from tame_sl2.tame import TameAuto, TameWord, evaluate_word


@pytest.mark.parametrize("name", sorted(NAMED))
def test_named_examples_preserve_the_quadric(name: str) -> None:
    item = named(name)
    auto = evaluate_word(item) if isinstance(item, TameWord) else item
    assert isinstance(auto, TameAuto)
    assert auto.preserves_quadric()


def test_unknown_name_lists_choices() -> None:
    with pytest.raises(KeyError):
        named("no-such-example")


def test_random_words_are_reproducible() -> None:
    first = random_word(random.Random(3), length=2, max_degree=2)
    second = random_word(random.Random(3), length=2, max_degree=2)
    assert first == second
    assert 1 <= len(first) <= 3
    assert evaluate_word(first).preserves_quadric()
