"""The square complex on which the tame group acts: vertices, subcomplexes, grids and isometries."""

from tame_sl2.complex.grids import GridResult, find_grid, grid_4x4, search_6x6
from tame_sl2.complex.isometry import (
    EllipticWitness,
    HyperbolicWitness,
    Undetermined,
    classify_isometry,
    geodesic_chain,
)
from tame_sl2.complex.subcomplex import (
    SubComplex,
    big_square,
    edge_distance,
    explore,
    link_girth_ok,
    link_graph,
    square_intersection_ok,
    to_dot,
    to_json,
)
from tame_sl2.complex.vertices import (
    act,
    canonical_t1,
    canonical_t2,
    vertex_eq_t3,
    vertex_t3,
)

__all__ = [
    "EllipticWitness",
    "GridResult",
    "HyperbolicWitness",
    "SubComplex",
    "Undetermined",
    "act",
    "big_square",
    "canonical_t1",
    "canonical_t2",
    "classify_isometry",
    "edge_distance",
    "explore",
    "find_grid",
    "geodesic_chain",
    "grid_4x4",
    "link_girth_ok",
    "link_graph",
    "search_6x6",
    "square_intersection_ok",
    "to_dot",
    "to_json",
    "vertex_eq_t3",
    "vertex_t3",
]
