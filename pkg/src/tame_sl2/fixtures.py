"""Named test vectors and seeded random tame words."""

from __future__ import annotations

import random
from typing import Callable, Sequence, Union

from sympy.polys.rings import PolyRing

from tame_sl2.grouplab.families import example_g_word, gen_example_g, gen_henon
from tame_sl2.orth import V4
from tame_sl2.polyring import RING_Q, Poly, monomials_of_degree, quadric
from tame_sl2.tame import FAMILIES, SEARCH_ORDER, ElementaryAuto, TameAuto, TameWord

Fixture = Union[TameAuto, TameWord]


def example_g() -> TameAuto:
    return gen_example_g()[0]


def example_g_inverse() -> TameAuto:
    return gen_example_g()[1]


def anick(ring_: PolyRing = RING_Q) -> TameAuto:
    """``(x1, x2 + x1 q, x3, x4 + x3 q)``: preserves q but admits no elementary reduction."""

    x1, x2, x3, x4 = ring_.gens
    q = quadric(ring_)
    return TameAuto((x1, x2 + x1 * q, x3, x4 + x3 * q)).checked()


def nontame_quadratic(ring_: PolyRing = RING_Q) -> TameAuto:
    x1, x2, x3, x4 = ring_.gens
    s = x1 + x4
    return TameAuto(
        (x1 - x2 * s, x2, x3 + (x1 - x4) * s - x2 * s**2, x4 + x2 * s)
    ).checked()


def henon_word(r: int, ring_: PolyRing = RING_Q) -> TameWord:
    """``g_r o ... o g_1`` with ``a = b = 1`` and ``P_i = x2^2``."""

    x2 = ring_.gens[1]
    return gen_henon([(1, 1, x2**2)] * r)


NAMED: dict[str, Callable[[], Fixture]] = {
    "example-g": example_g,
    "example-g-inverse": example_g_inverse,
    "example-g-word": example_g_word,
    "anick": anick,
    "nontame-quadratic": nontame_quadratic,
    "henon-r1": lambda: henon_word(1),
    "henon-r2": lambda: henon_word(2),
    "henon-r3": lambda: henon_word(3),
}


def named(name: str) -> Fixture:
    try:
        return NAMED[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(NAMED)}") from None


def random_poly(
    rng: random.Random,
    variables: tuple[int, int],
    max_degree: int,
    coefficients: Sequence[int],
    ring_: PolyRing = RING_Q,
) -> Poly:
    terms = {}
    for degree in range(max_degree + 1):
        for a, b in monomials_of_degree(degree):
            c = rng.choice(coefficients)
            if c:
                monom = [0, 0, 0, 0]
                monom[variables[0]], monom[variables[1]] = a, b
                terms[tuple(monom)] = ring_.domain.convert(c)
    return ring_.from_dict(terms)


def random_word(
    rng: random.Random,
    length: int = 6,
    max_degree: int = 3,
    coefficients: Sequence[int] = (-2, -1, 0, 1, 2),
    ring_: PolyRing = RING_Q,
) -> TameWord:
    """Up to ``length`` nonzero elementary factors followed by a Klein-group element."""

    factors: list = []
    for _ in range(rng.randint(1, length)):
        family = rng.choice(SEARCH_ORDER)
        p = random_poly(rng, FAMILIES[family].variables, max_degree, coefficients, ring_)
        if p:
            factors.append(ElementaryAuto(family, p))
    factors.append(rng.choice(V4).lifted(ring_))
    return TameWord(tuple(factors))


__all__ = [
    "Fixture",
    "NAMED",
    "anick",
    "example_g",
    "example_g_inverse",
    "henon_word",
    "named",
    "nontame_quadratic",
    "random_poly",
    "random_word",
]
