"""Canonical vertices of the square complex.

Type-1 vertices are lines ``[f1]`` stored as the monic representative, type-2 vertices are planes
``[f1, f2]`` stored by a reduced echelon basis, and type-3 vertices are O4-orbits ``[f]``. Two
automorphisms span the same space of components exactly when they lie in one O4-orbit, so the
echelon basis of the four components is a complete key for type-3 vertices as well.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

from sympy.polys.rings import PolyRing

from lib.codec import format_pretty
from tame_sl2.errors import TameError
from tame_sl2.orth import Mat4, OrthVerdict, is_orthogonal
from tame_sl2.polyring import RING_Q, RING_QI, Poly, common_ring, echelon, lift, solve_linear, substitute
from tame_sl2.tame import TameAuto, TameWord, compose, evaluate_word, invert_word

TYPE2_PAIRS: tuple[tuple[int, int], ...] = ((0, 1), (0, 2), (1, 3), (2, 3))


def _settle(polys: Sequence[Poly]) -> tuple[Poly, ...]:
    """Move Gaussian polynomials with real coefficients back to Q so equal vertices compare equal."""

    if all(p.ring == RING_QI for p in polys) and not any(c.y for p in polys for c in p.values()):
        return tuple(lift(p, RING_Q) for p in polys)
    return tuple(polys)


def _span_basis(polys: Sequence[Poly]) -> tuple[Poly, ...]:
    ring_ = common_ring(polys)
    polys = [lift(p, ring_) for p in polys]
    monoms = sorted({m for p in polys for m in p.itermonoms()}, key=ring_.order, reverse=True)
    zero = ring_.domain.zero
    rows = [[p.get(m, zero) for m in monoms] for p in polys]
    reduced, _ = echelon(rows, ring_.domain)
    return tuple(ring_.from_dict(dict(zip(monoms, row))) for row in reduced)


@dataclass(frozen=True)
class VertexT1:
    poly: Poly

    kind = 1

    def label(self) -> str:
        return f"[{format_pretty(self.poly)}]"


@dataclass(frozen=True)
class VertexT2:
    basis: tuple[Poly, Poly]

    kind = 2

    def label(self) -> str:
        return "[" + ", ".join(format_pretty(p) for p in self.basis) + "]"


@dataclass(frozen=True)
class VertexT3:
    """Orbit ``O4 . f``; ``key`` is the echelon basis of the component span."""

    key: tuple[Poly, ...]
    representative: TameAuto = field(compare=False)

    kind = 3

    def label(self) -> str:
        f1, f2, f3, f4 = (format_pretty(p) for p in self.representative)
        return f"[{f1} {f2} / {f3} {f4}]"


Vertex = Union[VertexT1, VertexT2, VertexT3]


def canonical_t1(p: Poly) -> VertexT1:
    if not p:
        raise TameError("the zero polynomial is not a component")
    return VertexT1(_settle([p.monic()])[0])


def canonical_t2(p1: Poly, p2: Poly) -> VertexT2:
    basis = _span_basis([p1, p2])
    if len(basis) != 2:
        raise TameError("components are linearly dependent; they do not span a plane")
    return VertexT2(_settle(basis))  # type: ignore[arg-type]


def vertex_t3(f: TameAuto) -> VertexT3:
    f.checked()
    basis = _span_basis(list(f))
    if len(basis) != 4:
        raise TameError("components of an automorphism are linearly independent")  # pragma: no cover
    return VertexT3(_settle(basis), f)


def _span_coordinates(target: Poly, spanning: Sequence[Poly]) -> list | None:
    ring_ = common_ring([target, *spanning])
    target = lift(target, ring_)
    spanning = [lift(p, ring_) for p in spanning]
    monoms = sorted(
        {m for p in (target, *spanning) for m in p.itermonoms()}, key=ring_.order, reverse=True
    )
    zero = ring_.domain.zero
    rows = [[p.get(m, zero) for p in spanning] for m in monoms]
    return solve_linear(rows, [target.get(m, zero) for m in monoms], ring_.domain)


def vertex_eq_t3(f: TameAuto, g: TameAuto) -> bool:
    """True when ``g = M o f`` for a coefficient matrix ``M`` in O4."""

    rows = []
    for component in g:
        row = _span_coordinates(component, list(f))
        if row is None:
            return False
        rows.append(row)
    ring_ = common_ring([f[0], g[0]])
    return is_orthogonal(Mat4.build(rows, ring_)) != OrthVerdict.NO


def big_square_vertices(f: TameAuto) -> tuple[list[VertexT1], dict[tuple[int, int], VertexT2], VertexT3]:
    """Vertices of the big square of ``f``: the four lines, the four planes keyed by index pair, ``[f]``."""

    lines = [canonical_t1(p) for p in f]
    planes = {(i, j): canonical_t2(f[i], f[j]) for i, j in TYPE2_PAIRS}
    return lines, planes, vertex_t3(f)


def translate(g_inverse: TameAuto, v: Vertex) -> Vertex:
    """``g . v`` given ``g^-1``: every component is precomposed with ``g^-1``."""

    images = list(g_inverse)
    if isinstance(v, VertexT1):
        return canonical_t1(substitute(v.poly, images))
    if isinstance(v, VertexT2):
        return canonical_t2(*(substitute(p, images) for p in v.basis))
    return vertex_t3(compose(v.representative, g_inverse))


def act(w: TameWord, v: Vertex, ring_: PolyRing | None = None) -> Vertex:
    return translate(evaluate_word(invert_word(w), ring_), v)


def standard_vertices(ring_: PolyRing = RING_Q) -> list[Vertex]:
    lines, planes, center = big_square_vertices(TameAuto.identity(ring_))
    return [*lines, *planes.values(), center]


def vertex_sort_key(v: Vertex) -> tuple[int, str]:
    return (v.kind, v.label() if v.kind != 3 else " ".join(str(p) for p in v.key))


__all__ = [
    "TYPE2_PAIRS",
    "Vertex",
    "VertexT1",
    "VertexT2",
    "VertexT3",
    "act",
    "big_square_vertices",
    "canonical_t1",
    "canonical_t2",
    "standard_vertices",
    "translate",
    "vertex_eq_t3",
    "vertex_sort_key",
    "vertex_t3",
]
