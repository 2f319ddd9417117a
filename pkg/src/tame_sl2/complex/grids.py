"""Grids in the square complex: the explicit 4x4 grid around ``[id]`` and a backtracking grid search.

Grid positions are integer pairs ``(i, j)``. Around a type-3 center the even-even positions carry
type-3 vertices, the odd-odd positions type-1 vertices and the mixed positions type-2 vertices; a
type-1 center swaps the roles of types 1 and 3.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable

from tqdm import tqdm

from tame_sl2.complex.subcomplex import Square, SubComplex, SubComplexBuilder
from tame_sl2.complex.vertices import Vertex, big_square_vertices, canonical_t1, vertex_t3
from tame_sl2.errors import TameError
from tame_sl2.polyring import Poly, common_ring, lift
from tame_sl2.tame import ElementaryAuto, TameAuto, apply_elementary, compose

logger = logging.getLogger(__name__)

Position = tuple[int, int]

_SIDES = {
    "N": ("E34", 1, (0, 2)),
    "E": ("E13", 3, (2, 0)),
    "S": ("E12", 2, (0, -2)),
    "W": ("E24", 0, (-2, 0)),
}
_CORNERS = {"NW": ("N", "W"), "NE": ("N", "E"), "SE": ("S", "E"), "SW": ("S", "W")}
_CORNER_POSITIONS = {"NW": (-2, 2), "NE": (2, 2), "SE": (2, -2), "SW": (-2, -2)}
_LINES = {(-1, 1): 0, (1, 1): 1, (1, -1): 3, (-1, -1): 2}


@dataclass(frozen=True)
class GridResult:
    complex: SubComplex
    positions: dict[Position, Vertex]
    corners: dict[str, TameAuto]
    degenerate: bool


def _check_variable(side: str, p: Poly, variable: int) -> None:
    for monom in p.itermonoms():
        if any(e for i, e in enumerate(monom) if i != variable):
            raise TameError(
                f"grid polynomial {side} must lie in C[x{variable + 1}], got {p}: the Jacobian "
                "obstruction dW/dx3 * dN/dx2 = 0 leaves no other choice",
                witness={"side": side, "poly": str(p)},
            )


def _type2_of(f: TameAuto) -> set:
    _, planes, _ = big_square_vertices(f)
    return set(planes.values())


def _corner(first: TameAuto, second: TameAuto, a: ElementaryAuto, b: ElementaryAuto) -> TameAuto:
    """``a o b`` or ``b o a``, whichever big square meets both neighbouring big squares."""

    for outer, inner in ((a, b), (b, a)):
        candidate = apply_elementary(outer, inner.as_auto()).checked()
        planes = _type2_of(candidate)
        if planes & _type2_of(first) and planes & _type2_of(second):
            return candidate
    raise TameError("no corner order meets both neighbouring big squares")


def _lattice_neighbours(position: Position) -> list[Position]:
    i, j = position
    return [(i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)]


def _unit_squares(radius: int) -> Iterable[tuple[Position, Position, Position, Position]]:
    for i in range(-radius, radius):
        for j in range(-radius, radius):
            yield (i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)


def _lattice_kind(position: Position, center_kind: int) -> int:
    i, j = position
    if (i + j) % 2:
        return 2
    if i % 2 == 0:
        return center_kind
    return 4 - center_kind


def _square_of(S: SubComplex, corners: Iterable[Vertex]) -> Square | None:
    corners = list(corners)
    by_kind = {v.kind: v for v in corners}
    planes = [v for v in corners if v.kind == 2]
    if len(by_kind) != 3 or len(planes) != 2:
        return None
    square = Square.of(by_kind[1], planes[0], by_kind[3], planes[1])
    return square if square in S.squares else None


def _validate(S: SubComplex, positions: dict[Position, Vertex], radius: int) -> None:
    if len(set(positions.values())) != len(positions):
        raise TameError("grid vertices are not distinct")
    for corners in _unit_squares(radius):
        if _square_of(S, (positions[p] for p in corners)) is None:
            raise TameError(f"missing grid square at {corners[0]}")


def grid_4x4(n: Poly, s: Poly, e: Poly, w: Poly) -> GridResult:
    """The 4x4 grid around the standard big square with sides ``E34(N)``, ``E13(E)``, ``E12(S)``, ``E24(W)``."""

    ring_ = common_ring((n, s, e, w))
    given = {"N": lift(n, ring_), "S": lift(s, ring_), "E": lift(e, ring_), "W": lift(w, ring_)}
    for side, (_, variable, _) in _SIDES.items():
        _check_variable(side, given[side], variable)
    degenerate = not all(given.values())

    identity = TameAuto.identity(ring_)
    sides = {side: ElementaryAuto(_SIDES[side][0], given[side]) for side in _SIDES}
    centers: dict[Position, TameAuto] = {(0, 0): identity}
    for side, (_, _, position) in _SIDES.items():
        centers[position] = sides[side].as_auto()
    corners: dict[str, TameAuto] = {}
    for name, (first, second) in _CORNERS.items():
        if degenerate:
            corner = compose(sides[first].as_auto(), sides[second].as_auto())
        else:
            corner = _corner(
                centers[_SIDES[first][2]], centers[_SIDES[second][2]], sides[first], sides[second]
            )
        corners[name] = corner
        centers[_CORNER_POSITIONS[name]] = corner

    builder = SubComplexBuilder()
    for f in centers.values():
        builder.add_big_square(f)
    S = builder.build()
    if degenerate:
        standard = _type2_of(identity)
        for side, (_, _, position) in _SIDES.items():
            if given[side] and not _type2_of(centers[position]) & standard:
                raise TameError(f"side {side} does not meet the standard big square")
        vanished = [side for side, p in given.items() if not p]
        logger.info(
            "degenerate grid: side %s vanishes; other sides checked against [id] only",
            ", ".join(vanished),
        )
        return GridResult(S, {}, corners, True)

    positions: dict[Position, Vertex] = {p: vertex_t3(f) for p, f in centers.items()}
    for position, index in _LINES.items():
        positions[position] = canonical_t1(identity[index])
    graph = S.graph
    for i in range(-2, 3):
        for j in range(-2, 3):
            if (i + j) % 2 == 0:
                continue
            around = [p for p in _lattice_neighbours((i, j)) if p in positions]
            common = set(graph.neighbors(positions[around[0]]))
            for p in around[1:]:
                common &= set(graph.neighbors(positions[p]))
            candidates = [v for v in common if v.kind == 2]
            if len(candidates) != 1:
                raise TameError(f"grid position {(i, j)} has {len(candidates)} candidate planes")
            positions[(i, j)] = candidates[0]
    _validate(S, positions, 2)
    logger.info("built 4x4 grid with %d vertices", len(positions))
    return GridResult(S, positions, corners, False)


def _order(radius: int) -> list[Position]:
    cells = [(i, j) for i in range(-radius, radius + 1) for j in range(-radius, radius + 1)]
    return sorted(cells, key=lambda p: (max(abs(p[0]), abs(p[1])), abs(p[0]) + abs(p[1]), p))


def _closing_squares(position: Position, radius: int):
    i, j = position
    for di in (-1, 0):
        for dj in (-1, 0):
            a, b = i + di, j + dj
            if -radius <= a < radius and -radius <= b < radius:
                yield (a, b), (a + 1, b), (a + 1, b + 1), (a, b + 1)


def find_grid(S: SubComplex, center: Vertex, radius: int) -> dict[Position, Vertex] | None:
    """A ``2r x 2r`` grid of unit squares centered on ``center`` inside ``S``, or ``None``."""

    if center.kind == 2:
        raise TameError("grids are centered on vertices of type 1 or 3")
    if center not in S:
        return None
    order = _order(radius)
    graph = S.graph
    by_kind = {kind: S.of_kind(kind) for kind in (1, 2, 3)}
    placed: dict[Position, Vertex] = {}
    used: set = set()

    def candidates(position: Position) -> list[Vertex]:
        kind = _lattice_kind(position, center.kind)
        around = [placed[p] for p in _lattice_neighbours(position) if p in placed]
        if not around:
            pool = by_kind[kind]
        else:
            common = set(graph.neighbors(around[0]))
            for v in around[1:]:
                common &= set(graph.neighbors(v))
            pool = [v for v in by_kind[kind] if v in common]
        return [v for v in pool if v not in used]

    def squares_ok(position: Position) -> bool:
        for corners in _closing_squares(position, radius):
            if all(p in placed for p in corners):
                if _square_of(S, (placed[p] for p in corners)) is None:
                    return False
        return True

    def place(index: int) -> bool:
        if index == len(order):
            return True
        position = order[index]
        options = [center] if index == 0 else candidates(position)
        for v in options:
            placed[position] = v
            used.add(v)
            if squares_ok(position) and place(index + 1):
                return True
            del placed[position]
            used.discard(v)
        return False

    if place(0):
        return dict(placed)
    return None


@dataclass(frozen=True)
class GridSearchReport:
    centers_checked: int
    found: tuple[dict, ...]

    @property
    def empty(self) -> bool:
        return not self.found


def search_6x6(S: SubComplex, *, show_progress: bool = False) -> GridSearchReport:
    """Look for 6x6 grids centered on the type-1 vertices of ``S``."""

    centers = S.of_kind(1)
    found = []
    progress = None
    if show_progress:
        progress = tqdm(total=len(centers), desc="Searching 6x6 grids", unit="vertex")
    try:
        for v in centers:
            grid = find_grid(S, v, 3)
            if grid is not None:
                logger.warning("found a 6x6 grid centered at %s", v.label())
                found.append(grid)
            if progress:
                progress.update()
    finally:
        if progress:
            progress.close()
    return GridSearchReport(len(centers), tuple(found))


__all__ = [
    "GridResult",
    "GridSearchReport",
    "Position",
    "find_grid",
    "grid_4x4",
    "search_6x6",
]
