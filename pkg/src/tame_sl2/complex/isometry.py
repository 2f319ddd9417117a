"""Elliptic/hyperbolic classification of a word acting on the square complex.

Distances are edge-path distances inside the finite subcomplex traced out by the orbit of
``[id]``, so every hyperbolic verdict is certified on that skeleton only.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Union

from tame_sl2.complex.subcomplex import SubComplex, SubComplexBuilder, edge_distance
from tame_sl2.complex.vertices import Vertex, standard_vertices, translate
from tame_sl2.errors import TameError
from tame_sl2.tame import TameAuto, TameWord, evaluate_word, invert_word

logger = logging.getLogger(__name__)

CERTIFICATE = "skeleton-certified"


@dataclass(frozen=True)
class EllipticWitness:
    vertex: Vertex


@dataclass(frozen=True)
class HyperbolicWitness:
    """Orbit points ``w^k . x`` along which consecutive distances add up exactly."""

    base: Vertex
    axis: tuple[Vertex, ...]
    length: int
    certificate: str = CERTIFICATE


@dataclass(frozen=True)
class Undetermined:
    reason: str


IsometryVerdict = Union[EllipticWitness, HyperbolicWitness, Undetermined]


def _powers(word: TameWord, count: int, builder: SubComplexBuilder) -> list[TameAuto]:
    """``[id, u, u^2, ...]`` for ``u = evaluate(word)``, recording every intermediate big square."""

    current = TameAuto.identity(word.ring())
    found = [current]
    for _ in range(count):
        current = builder.add_chain(current, word)
        found.append(current)
    return found


def orbit_complex(w: TameWord, behind: int, ahead: int) -> tuple[SubComplex, dict[int, TameAuto]]:
    """Subcomplex through the orbit points and maps ``j -> w^-j`` for ``-behind <= j <= ahead``."""

    builder = SubComplexBuilder()
    forward = _powers(invert_word(w), ahead, builder)
    backward = _powers(w, behind, builder)
    inverses = {j: f for j, f in enumerate(forward)}
    inverses.update({-j: f for j, f in enumerate(backward)})
    return builder.build(), inverses


def classify_isometry(w: TameWord, horizon: int = 3) -> IsometryVerdict:
    """Elliptic when a vertex of the orbit complex is fixed, hyperbolic when orbit distances grow linearly.

    Standard vertices are tried first; the rest of the orbit complex is searched in sorted order.
    """

    if horizon < 2:
        raise TameError(f"classification needs a horizon of at least 2, got {horizon}")
    ring_ = w.ring()
    g_inverse = evaluate_word(invert_word(w), ring_)
    candidates = standard_vertices(ring_)
    for v in candidates:
        if translate(g_inverse, v) == v:
            logger.debug("word fixes %s", v.label())
            return EllipticWitness(v)

    behind = horizon // 2
    ahead = horizon - behind
    S, inverses = orbit_complex(w, behind, ahead)
    standard = set(candidates)
    for v in S.sorted_vertices():
        if v not in standard and translate(g_inverse, v) == v:
            logger.debug("word fixes %s", v.label())
            return EllipticWitness(v)

    best: HyperbolicWitness | None = None
    for v in candidates:
        points = {j: translate(f, v) for j, f in inverses.items()}
        distances = []
        for k in range(1, horizon + 1):
            start = min(behind, k // 2)
            distances.append(edge_distance(S, points[-start], points[k - start]))
        d1 = distances[0]
        if not d1 or any(d != (k + 1) * d1 for k, d in enumerate(distances)):
            logger.debug("orbit of %s gives distances %s", v.label(), distances)
            continue
        if best is None or d1 < best.length:
            axis = tuple(points[j] for j in range(-behind, ahead + 1))
            best = HyperbolicWitness(v, axis, d1)
    if best is not None:
        logger.info("hyperbolic with skeleton translation length %d", best.length)
        return best
    return Undetermined(f"no fixed vertex and no linear orbit within horizon {horizon}")


def geodesic_chain(w: TameWord, vertex: Vertex, count: int) -> list[Vertex]:
    """``[x, w.x, w^2.x, ...]`` with ``count`` entries."""

    g_inverse = evaluate_word(invert_word(w))
    chain = [vertex]
    for _ in range(count - 1):
        chain.append(translate(g_inverse, chain[-1]))
    return chain


__all__ = [
    "CERTIFICATE",
    "EllipticWitness",
    "HyperbolicWitness",
    "IsometryVerdict",
    "Undetermined",
    "classify_isometry",
    "geodesic_chain",
    "orbit_complex",
]
