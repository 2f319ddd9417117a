"""Finite subcomplexes of the square complex: big squares, explored balls, links and exports."""

from __future__ import annotations

import itertools
import json
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Literal, Mapping, Sequence

import networkx as nx
from sympy.polys.rings import PolyRing
from tqdm import tqdm

from tame_sl2.complex.vertices import (
    TYPE2_PAIRS,
    Vertex,
    VertexT2,
    VertexT3,
    big_square_vertices,
    vertex_sort_key,
    vertex_t3,
)
from tame_sl2.errors import TameError
from tame_sl2.orth import V4, Mat4, mat4_det, sample_o4
from tame_sl2.polyring import RING_Q, Poly, common_ring
from tame_sl2.tame import (
    FAMILIES,
    SEARCH_ORDER,
    ElementaryAuto,
    TameAuto,
    TameWord,
    apply_elementary,
    apply_factor,
    apply_matrix,
    invert_word,
)

logger = logging.getLogger(__name__)

Orientation = Literal["horizontal", "vertical"]
_HORIZONTAL_PAIRS = ((0, 1), (2, 3))


@dataclass(frozen=True)
class Square:
    """A square ``t1 - a - t3 - b`` with type-2 vertices ``a`` and ``b`` stored in sorted order."""

    t1: Vertex
    a: Vertex
    t3: Vertex
    b: Vertex

    @classmethod
    def of(cls, t1: Vertex, a: Vertex, t3: Vertex, b: Vertex) -> Square:
        if vertex_sort_key(b) < vertex_sort_key(a):
            a, b = b, a
        return cls(t1, a, t3, b)

    @property
    def vertices(self) -> tuple[Vertex, Vertex, Vertex, Vertex]:
        return (self.t1, self.a, self.t3, self.b)

    @property
    def edges(self) -> tuple[frozenset, ...]:
        cycle = self.vertices
        return tuple(frozenset((cycle[i], cycle[(i + 1) % 4])) for i in range(4))


def _flip(orientation: Orientation) -> Orientation:
    return "vertical" if orientation == "horizontal" else "horizontal"


@dataclass(frozen=True)
class SubComplex:
    """Immutable explored subcomplex; build it with :class:`SubComplexBuilder`."""

    vertices: frozenset
    edges: frozenset
    squares: frozenset
    orientation: Mapping[VertexT2, Orientation] = field(default_factory=dict, compare=False, hash=False)

    @cached_property
    def graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(tuple(edge) for edge in self.edges)
        return graph

    @cached_property
    def squares_by_vertex(self) -> dict:
        index: dict = {}
        for square in self.squares:
            for v in square.vertices:
                index.setdefault(v, []).append(square)
        return index

    def sorted_vertices(self) -> list[Vertex]:
        return sorted(self.vertices, key=vertex_sort_key)

    def of_kind(self, kind: int) -> list[Vertex]:
        return [v for v in self.sorted_vertices() if v.kind == kind]

    def __contains__(self, v: object) -> bool:
        return v in self.vertices


class SubComplexBuilder:
    """Single-owner accumulator of vertices, edges and squares."""

    def __init__(self) -> None:
        self._vertices: set = set()
        self._edges: set = set()
        self._squares: set = set()
        self._orientation: dict = {}

    def add_square(self, square: Square) -> None:
        self._vertices.update(square.vertices)
        self._edges.update(square.edges)
        self._squares.add(square)

    def add_big_square(self, f: TameAuto, parity: int | None = None) -> VertexT3:
        lines, planes, center = big_square_vertices(f)
        for i, line in enumerate(lines):
            a, b = (planes[pair] for pair in TYPE2_PAIRS if i in pair)
            self.add_square(Square.of(line, a, center, b))
        if parity is not None:
            for pair, plane in planes.items():
                orientation: Orientation = "horizontal" if pair in _HORIZONTAL_PAIRS else "vertical"
                if parity % 2:
                    orientation = _flip(orientation)
                known = self._orientation.setdefault(plane, orientation)
                if known != orientation:
                    logger.debug("orientation conflict at %s", plane.label())
        return center

    def add_chain(self, start: TameAuto, word: TameWord) -> TameAuto:
        """Big squares of ``start`` and of every ``w_j o ... o w_k o start``; returns ``word o start``."""

        current = start
        self.add_big_square(current)
        for factor in reversed(word.factors):
            current = apply_factor(factor, current)
            self.add_big_square(current)
        return current

    def build(self) -> SubComplex:
        return SubComplex(
            frozenset(self._vertices),
            frozenset(self._edges),
            frozenset(self._squares),
            dict(self._orientation),
        )


def big_square(f: TameAuto, parity: int | None = None) -> SubComplex:
    builder = SubComplexBuilder()
    builder.add_big_square(f.checked(), parity)
    return builder.build()


def _valid_for(family: str, p: Poly) -> bool:
    allowed = FAMILIES[family].variables
    return all(not e or i in allowed for m in p.itermonoms() for i, e in enumerate(m))


def elementary_moves(sample_p: Sequence[Poly]) -> list[ElementaryAuto]:
    """Every ``E(P)`` with ``P`` in the sample and ``P`` in the two variables of the family."""

    moves = []
    for family in SEARCH_ORDER:
        for p in sample_p:
            if p and _valid_for(family, p):
                moves.append(ElementaryAuto(family, p))
    return moves


def _linear_moves(o4_sample: int, ring_: PolyRing) -> list[tuple[Mat4, int]]:
    pool = [m.lifted(ring_) for m in V4] + sample_o4(o4_sample, ring_)
    return [(m, 1 if mat4_det(m) == -ring_.domain.one else 0) for m in pool]


def explore(
    generators: Iterable[TameWord],
    depth: int,
    sample_p: Sequence[Poly],
    *,
    o4_sample: int = 2,
    show_progress: bool = False,
) -> SubComplex:
    """Union of big squares over the ball of radius ``depth`` around ``[id]``.

    A move sends ``f`` to ``e o m o f`` for an elementary ``e`` from the sample and a linear ``m``
    from V4 and a fixed O4 sample, or to ``w o f`` for a generator ``w`` or its inverse. Generator
    moves also add the big squares of the intermediate products so the ball stays connected.
    """

    if depth < 0:
        raise TameError(f"explore depth must be non-negative, got {depth}")
    generators = list(generators)
    ring_ = common_ring([*sample_p, *(w.ring().one for w in generators), RING_Q.one])
    moves = elementary_moves(list(sample_p))
    linear = _linear_moves(o4_sample, ring_)
    words = [w for g in generators for w in (g, invert_word(g))]

    builder = SubComplexBuilder()
    start = TameAuto.identity(ring_)
    builder.add_big_square(start, 0)
    seen = {vertex_t3(start)}
    frontier: list[tuple[TameAuto, int]] = [(start, 0)]
    fresh: list[tuple[TameAuto, int]] = []

    def visit(h: TameAuto, parity: int) -> None:
        center = vertex_t3(h)
        if center in seen:
            return
        seen.add(center)
        builder.add_big_square(h, parity)
        fresh.append((h, parity))

    progress = None
    if show_progress:
        progress = tqdm(total=depth, desc="Exploring", unit="layer")
    try:
        for layer in range(depth):
            for f, parity in frontier:
                for m, flip in linear:
                    base = apply_matrix(m, f)
                    for e in moves:
                        visit(apply_elementary(e, base), parity + flip)
                for w in words:
                    current, running = f, parity
                    for factor in reversed(w.factors):
                        current = apply_factor(factor, current)
                        if isinstance(factor, ElementaryAuto):
                            visit(current, running)
                        elif mat4_det(factor) == -factor.ring.domain.one:
                            running += 1
            logger.debug("explore layer %d: %d new type-3 vertices", layer + 1, len(fresh))
            frontier = list(fresh)
            fresh.clear()
            if progress:
                progress.update()
    finally:
        if progress:
            progress.close()
    result = builder.build()
    logger.info(
        "explored ball of depth %d: %d vertices, %d squares",
        depth,
        len(result.vertices),
        len(result.squares),
    )
    return result


@dataclass(frozen=True)
class LinkReport:
    """Loops found in the explored link of a vertex."""

    vertex: Vertex
    nodes: int
    edges: int
    girth: float
    bipartite: bool
    multi_edges: int
    self_loops: int

    @property
    def ok(self) -> bool:
        return self.girth >= 4 and not self.multi_edges and not self.self_loops


def _link_multigraph(S: SubComplex, v: Vertex) -> nx.MultiGraph:
    if v not in S:
        raise TameError(f"vertex is not in the subcomplex: {v.label()}")
    link = nx.MultiGraph()
    link.add_nodes_from(S.graph.neighbors(v))
    for square in S.squares_by_vertex.get(v, ()):
        cycle = square.vertices
        k = cycle.index(v)
        link.add_edge(cycle[(k - 1) % 4], cycle[(k + 1) % 4])
    return link


def link_graph(S: SubComplex, v: Vertex) -> nx.Graph:
    """Link of ``v``: its neighbours, joined when they lie on a common square through ``v``."""

    return nx.Graph(_link_multigraph(S, v))


def link_girth_ok(v: Vertex, S: SubComplex) -> LinkReport:
    multi = _link_multigraph(S, v)
    simple = nx.Graph(multi)
    self_loops = nx.number_of_selfloops(simple)
    multi_edges = multi.number_of_edges() - simple.number_of_edges()
    report = LinkReport(
        vertex=v,
        nodes=simple.number_of_nodes(),
        edges=simple.number_of_edges(),
        girth=nx.girth(simple),
        bipartite=nx.is_bipartite(simple),
        multi_edges=multi_edges,
        self_loops=self_loops,
    )
    logger.debug("link of %s: %s", v.label(), report)
    return report


@dataclass(frozen=True)
class IntersectionViolation:
    first: Square
    second: Square
    shared: tuple


@dataclass(frozen=True)
class IntersectionReport:
    pairs_checked: int
    violations: tuple[IntersectionViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def _allowed_intersection(first: Square, second: Square, shared: set) -> bool:
    if len(shared) <= 1:
        return True
    if len(shared) > 2:
        return False
    edge = frozenset(shared)
    return edge in first.edges and edge in second.edges


def square_intersection_ok(S: SubComplex) -> IntersectionReport:
    """Distinct squares meet in nothing, one vertex or one edge."""

    candidates: set = set()
    for squares in S.squares_by_vertex.values():
        ordered = sorted(squares, key=lambda sq: [vertex_sort_key(v) for v in sq.vertices])
        candidates.update(itertools.combinations(ordered, 2))
    violations = []
    for first, second in candidates:
        shared = set(first.vertices) & set(second.vertices)
        if not _allowed_intersection(first, second, shared):
            violations.append(
                IntersectionViolation(first, second, tuple(sorted(shared, key=vertex_sort_key)))
            )
    return IntersectionReport(len(candidates), tuple(violations))


def edge_distance(S: SubComplex, v: Vertex, w: Vertex) -> int | None:
    """Length of a shortest edge path inside ``S``; ``None`` when unreachable."""

    for vertex in (v, w):
        if vertex not in S:
            raise TameError(f"vertex is not in the subcomplex: {vertex.label()}")
    try:
        return nx.shortest_path_length(S.graph, v, w)
    except nx.NetworkXNoPath:
        return None


_SHAPES = {1: "circle", 2: "point", 3: "square"}


def to_dot(S: SubComplex) -> str:
    ordered = S.sorted_vertices()
    ids = {v: f"v{i}" for i, v in enumerate(ordered)}
    lines = ["graph subcomplex {"]
    for v in ordered:
        label = json.dumps(v.label())
        extra = ', style="filled"' if v.kind != 1 else ""
        lines.append(f"  {ids[v]} [shape={_SHAPES[v.kind]}, label={label}{extra}];")
    edges = sorted(sorted(ids[v] for v in edge) for edge in S.edges)
    for a, b in edges:
        lines.append(f"  {a} -- {b};")
    for square in sorted(" -- ".join(ids[v] for v in sq.vertices) for sq in S.squares):
        lines.append(f"  // square: {square}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(S: SubComplex) -> dict:
    ordered = S.sorted_vertices()
    ids = {v: i for i, v in enumerate(ordered)}
    vertices = []
    for v in ordered:
        entry: dict = {"id": ids[v], "type": v.kind, "label": v.label()}
        if isinstance(v, VertexT2) and v in S.orientation:
            entry["orientation"] = S.orientation[v]
        vertices.append(entry)
    return {
        "vertices": vertices,
        "edges": sorted(sorted(ids[v] for v in edge) for edge in S.edges),
        "squares": sorted([ids[v] for v in sq.vertices] for sq in S.squares),
    }


__all__ = [
    "IntersectionReport",
    "IntersectionViolation",
    "LinkReport",
    "Square",
    "SubComplex",
    "SubComplexBuilder",
    "big_square",
    "edge_distance",
    "elementary_moves",
    "explore",
    "link_girth_ok",
    "link_graph",
    "square_intersection_ok",
    "to_dot",
    "to_json",
]
