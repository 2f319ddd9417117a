"""The orthogonal group O4 of q acting on linear forms.

A :class:`Mat4` acts on the dual basis: row ``i`` gives ``f_i = sum_j M[i][j] * x_j``. The
pairing on linear forms has matrix ``A = 1/2 * antidiag(1, -1, -1, 1)``, so ``<x1, x4> = 1/2``
and ``<x2, x3> = -1/2``. Totally isotropic planes are stored by a reduced echelon basis.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from typing import Literal, Sequence

from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyRing

from tame_sl2.errors import TameError
from tame_sl2.polyring import (
    RING_Q,
    Poly,
    common_ring,
    echelon,
    linear_coefficients,
    linear_form,
    lift,
    solve_linear,
)

logger = logging.getLogger(__name__)

Row = tuple


class OrthVerdict(str, enum.Enum):
    NO = "No"
    GENERAL = "GeneralO4"
    SPECIAL = "SpecialSO4"


@dataclass(frozen=True)
class Mat4:
    """A 4x4 matrix of exact coefficients acting on linear forms."""

    rows: tuple[Row, Row, Row, Row]
    ring: PolyRing = RING_Q

    @classmethod
    def build(cls, rows: Sequence[Sequence], ring_: PolyRing = RING_Q) -> Mat4:
        if len(rows) != 4 or any(len(row) != 4 for row in rows):
            raise TameError("a Mat4 needs four rows of four entries")
        domain = ring_.domain
        return cls(tuple(tuple(domain.convert(v) for v in row) for row in rows), ring_)  # type: ignore[arg-type]

    def to_domain_matrix(self) -> DomainMatrix:
        return DomainMatrix([list(row) for row in self.rows], (4, 4), self.ring.domain)

    def lifted(self, ring_: PolyRing) -> Mat4:
        if ring_ == self.ring:
            return self
        return Mat4.build(self.rows, ring_)


def identity_mat4(ring_: PolyRing = RING_Q) -> Mat4:
    return Mat4.build([[1 if i == j else 0 for j in range(4)] for i in range(4)], ring_)


def _from_domain_matrix(matrix: DomainMatrix, ring_: PolyRing) -> Mat4:
    return Mat4(tuple(tuple(row) for row in matrix.to_ddm()), ring_)  # type: ignore[arg-type]


def _shared(*rings: PolyRing) -> PolyRing:
    return common_ring([ring_.one for ring_ in rings])


def mat4_mul(left: Mat4, right: Mat4) -> Mat4:
    """Matrix of the composition ``left o right``."""

    ring_ = _shared(left.ring, right.ring)
    product = left.lifted(ring_).to_domain_matrix() * right.lifted(ring_).to_domain_matrix()
    return _from_domain_matrix(product, ring_)


def mat4_det(matrix: Mat4):
    return matrix.to_domain_matrix().det()


def mat4_inverse(matrix: Mat4) -> Mat4:
    if not mat4_det(matrix):
        raise TameError("singular matrix has no inverse")
    return _from_domain_matrix(matrix.to_domain_matrix().inv(), matrix.ring)


def mat4_transpose(matrix: Mat4) -> Mat4:
    return Mat4(tuple(zip(*matrix.rows)), matrix.ring)  # type: ignore[arg-type]


def mat4_forms(matrix: Mat4) -> tuple[Poly, Poly, Poly, Poly]:
    return tuple(linear_form(row, matrix.ring) for row in matrix.rows)  # type: ignore[return-value]


def mat4_from_forms(forms: Sequence[Poly]) -> Mat4:
    ring_ = common_ring(forms)
    rows = [linear_coefficients(lift(f, ring_)) for f in forms]
    return Mat4.build(rows, ring_)


def pairing_matrix(ring_: PolyRing = RING_Q) -> Mat4:
    half = ring_.domain.convert(1) / 2
    zero = ring_.domain.zero
    return Mat4(
        (
            (zero, zero, zero, half),
            (zero, zero, -half, zero),
            (zero, -half, zero, zero),
            (half, zero, zero, zero),
        ),
        ring_,
    )


def _pair_rows(u: Sequence, v: Sequence):
    return (u[0] * v[3] + u[3] * v[0] - u[1] * v[2] - u[2] * v[1]) / 2


def q_pairing(u: Poly, v: Poly):
    """The symmetric bilinear pairing of two linear forms."""

    ring_ = common_ring((u, v))
    return _pair_rows(linear_coefficients(lift(u, ring_)), linear_coefficients(lift(v, ring_)))


def is_orthogonal(matrix: Mat4) -> OrthVerdict:
    """Check the ten pairings ``<f_i, f_j> = <x_i, x_j>``, then the determinant."""

    standard = pairing_matrix(matrix.ring).rows
    for i in range(4):
        for j in range(i, 4):
            if _pair_rows(matrix.rows[i], matrix.rows[j]) != standard[i][j]:
                return OrthVerdict.NO
    return OrthVerdict.SPECIAL if mat4_det(matrix) == matrix.ring.domain.one else OrthVerdict.GENERAL


def is_orthogonal_matrix_identity(matrix: Mat4) -> OrthVerdict:
    """Same verdict computed through ``M^t A M = A``."""

    a = pairing_matrix(matrix.ring).to_domain_matrix()
    m = matrix.to_domain_matrix()
    if m.transpose() * a * m != a:
        return OrthVerdict.NO
    return OrthVerdict.SPECIAL if m.det() == matrix.ring.domain.one else OrthVerdict.GENERAL


TAU = Mat4.build([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
V4 = (
    identity_mat4(),
    Mat4.build([[0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0]]),
    TAU,
    Mat4.build([[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]),
)


@dataclass(frozen=True)
class IsotropicPlane:
    """A totally isotropic plane, stored by its reduced echelon basis."""

    basis: tuple[Row, Row]
    ring: PolyRing = RING_Q

    def forms(self) -> tuple[Poly, Poly]:
        return linear_form(self.basis[0], self.ring), linear_form(self.basis[1], self.ring)

    def contains(self, form: Poly) -> bool:
        rows, _ = echelon([*self.basis, linear_coefficients(lift(form, self.ring))], self.ring.domain)
        return len(rows) == 2


def _span_rows(rows: Sequence[Sequence], ring_: PolyRing) -> tuple[tuple, ...]:
    reduced, _ = echelon(rows, ring_.domain)
    return tuple(tuple(row) for row in reduced)


def isotropic_plane(f1: Poly, f2: Poly) -> IsotropicPlane:
    """Canonical plane spanned by two linear forms; fails unless they span an isotropic plane."""

    ring_ = common_ring((f1, f2))
    rows = [linear_coefficients(lift(f, ring_)) for f in (f1, f2)]
    basis = _span_rows(rows, ring_)
    if len(basis) != 2:
        raise TameError("linear forms are dependent; they do not span a plane")
    if any(_pair_rows(u, v) for u in rows for v in rows):
        raise TameError("plane is not totally isotropic")
    return IsotropicPlane(basis, ring_)  # type: ignore[arg-type]


def _lift_plane(plane: IsotropicPlane, ring_: PolyRing) -> IsotropicPlane:
    if plane.ring == ring_:
        return plane
    return isotropic_plane(*(lift(f, ring_) for f in plane.forms()))


def _coordinate_plane(i: int, j: int, ring_: PolyRing = RING_Q) -> IsotropicPlane:
    x = ring_.gens
    return isotropic_plane(x[i], x[j])


def complete_pair(f1: Poly, f2: Poly, target: IsotropicPlane) -> tuple[Poly, Poly]:
    """The unique basis (f3, f4) of ``target`` making (f1, f2, f3, f4) orthogonal."""

    ring_ = common_ring((f1, f2, target.ring.one))
    plane = isotropic_plane(lift(f1, ring_), lift(f2, ring_))
    w1, w2 = (lift(w, ring_) for w in target.forms())
    all_rows = [*plane.basis, *(linear_coefficients(w) for w in (w1, w2))]
    if len(_span_rows(all_rows, ring_)) != 4:
        raise TameError("planes are not transverse")
    gram = [[q_pairing(f, w) for w in (w1, w2)] for f in (f1, f2)]
    half = ring_.domain.convert(1) / 2
    zero = ring_.domain.zero
    third = solve_linear(gram, [zero, -half], ring_.domain)
    fourth = solve_linear(gram, [half, zero], ring_.domain)
    if third is None or fourth is None:  # pragma: no cover - gram is invertible when transverse
        raise TameError("planes are not transverse")
    f3 = w1.mul_ground(third[0]) + w2.mul_ground(third[1])
    f4 = w1.mul_ground(fourth[0]) + w2.mul_ground(fourth[1])
    return f3, f4


_COMPLEMENT_SCAN = ((2, 3), (0, 1), (0, 2), (1, 3))


def extend_isotropic_pair(f1: Poly, f2: Poly) -> Mat4:
    """An O4 element whose first two rows are ``f1`` and ``f2``."""

    ring_ = common_ring((f1, f2))
    plane = isotropic_plane(f1, f2)
    for i, j in _COMPLEMENT_SCAN:
        candidate = _coordinate_plane(i, j, ring_)
        rows = [*plane.basis, *candidate.basis]
        if len(_span_rows(rows, ring_)) == 4:
            f3, f4 = complete_pair(f1, f2, candidate)
            logger.debug("extended isotropic pair with complement x%d,x%d", i + 1, j + 1)
            return mat4_from_forms((lift(f1, ring_), lift(f2, ring_), f3, f4))
    raise TameError("no transverse coordinate plane found")  # pragma: no cover


def horizontal_plane(a, b, ring_: PolyRing = RING_Q) -> IsotropicPlane:
    x1, x2, x3, x4 = ring_.gens
    d = ring_.domain
    a, b = d.convert(a), d.convert(b)
    return isotropic_plane(x1.mul_ground(a) + x3.mul_ground(b), x2.mul_ground(a) + x4.mul_ground(b))


def vertical_plane(a, b, ring_: PolyRing = RING_Q) -> IsotropicPlane:
    x1, x2, x3, x4 = ring_.gens
    d = ring_.domain
    a, b = d.convert(a), d.convert(b)
    return isotropic_plane(x1.mul_ground(a) + x2.mul_ground(b), x3.mul_ground(a) + x4.mul_ground(b))


def _projective(a, b) -> tuple:
    if a:
        return (a / a, b / a)
    return (a, b / b)


def _ratio(first: tuple, second: tuple) -> tuple:
    return _projective(*first) if any(first) else _projective(*second)


@dataclass(frozen=True)
class PlaneClass:
    """Ruling of an isotropic plane together with its projective parameter (a:b)."""

    kind: Literal["horizontal", "vertical"]
    ratio: tuple


def planes_through(form: Poly) -> tuple[IsotropicPlane, IsotropicPlane]:
    """The horizontal and the vertical isotropic plane containing ``form``."""

    c = linear_coefficients(form)
    if not any(c):
        raise TameError("the zero form lies in every plane")
    if _pair_rows(c, c):
        raise TameError(f"linear form is not isotropic: {form}")
    a, b = _ratio((c[0], c[2]), (c[1], c[3]))
    horizontal = horizontal_plane(a, b, form.ring)
    a, b = _ratio((c[0], c[1]), (c[2], c[3]))
    vertical = vertical_plane(a, b, form.ring)
    return horizontal, vertical


def classify_plane(plane: IsotropicPlane) -> PlaneClass:
    c = plane.basis[0]
    ratio = _ratio((c[0], c[2]), (c[1], c[3]))
    if horizontal_plane(*ratio, plane.ring) == plane:
        return PlaneClass("horizontal", ratio)
    return PlaneClass("vertical", _ratio((c[0], c[1]), (c[2], c[3])))


def plane_image(matrix: Mat4, plane: IsotropicPlane) -> IsotropicPlane:
    """``g . W = {l o g^-1 : l in W}`` for the linear automorphism with matrix ``matrix``."""

    ring_ = _shared(matrix.ring, plane.ring)
    plane = _lift_plane(plane, ring_)
    inverse = mat4_inverse(matrix.lifted(ring_)).to_domain_matrix()
    rows = DomainMatrix([list(r) for r in plane.basis], (2, 4), ring_.domain) * inverse
    forms = [linear_form(row, ring_) for row in rows.to_ddm()]
    return isotropic_plane(*forms)


def so4_from_sl2_pair(
    a: Sequence[Sequence], b: Sequence[Sequence], ring_: PolyRing = RING_Q
) -> Mat4:
    """Image of (A, B) under the covering map X -> A X B^t, read row-major."""

    d = ring_.domain
    am = [[d.convert(v) for v in row] for row in a]
    bm = [[d.convert(v) for v in row] for row in b]
    for name, m in (("A", am), ("B", bm)):
        if m[0][0] * m[1][1] - m[0][1] * m[1][0] != d.one:
            raise TameError(f"{name} must have determinant 1")
    rows = []
    for i in range(2):
        for k in range(2):
            rows.append([am[i][j] * bm[k][l] for j in range(2) for l in range(2)])
    return Mat4.build(rows, ring_)


class PairCase(str, enum.Enum):
    EQUAL = "Equal"
    TRANSVERSE = "Transverse"
    MEETING = "Meeting"


def normalize_plane_pair(first: IsotropicPlane, second: IsotropicPlane) -> tuple[Mat4, PairCase]:
    """An O4 element g with g.W = span(x3,x4) and g.W' a coordinate plane, plus the case."""

    ring_ = _shared(first.ring, second.ring)
    first, second = _lift_plane(first, ring_), _lift_plane(second, ring_)
    rank = len(_span_rows([*first.basis, *second.basis], ring_))
    if rank == 2:
        h = mat4_forms(extend_isotropic_pair(*first.forms()))
        return mat4_from_forms((h[3], h[2], h[1], h[0])), PairCase.EQUAL
    if rank == 4:
        g1, g2 = second.forms()
        g3, g4 = complete_pair(g1, g2, first)
        return mat4_from_forms((g1, g2, g3, g4)), PairCase.TRANSVERSE

    d = ring_.domain
    w1p, w2p = second.basis
    solution = solve_linear(
        [[first.basis[0][r], first.basis[1][r], -w2p[r]] for r in range(4)], list(w1p), d
    )
    if solution is None:
        line = list(w2p)
    else:
        line = [w1p[r] + solution[2] * w2p[r] for r in range(4)]
    ell = linear_form(line, ring_)

    def _independent_of_line(rows: Sequence[Sequence]) -> list:
        for row in rows:
            if len(_span_rows([row, line], ring_)) == 2:
                return list(row)
        raise TameError("plane basis degenerate")  # pragma: no cover

    w = linear_form(_independent_of_line(first.basis), ring_)
    w_prime = linear_form(_independent_of_line(second.basis), ring_)
    w_prime = w_prime.mul_ground((-d.convert(1) / 2) / q_pairing(w_prime, w))
    index = next(k for k in range(4) if q_pairing(ring_.gens[k], ell))
    y = ring_.gens[index].mul_ground(d.convert(1) / (2 * q_pairing(ring_.gens[index], ell)))
    alpha = -q_pairing(y, w_prime) / q_pairing(w, w_prime)
    beta = -q_pairing(y, w) / q_pairing(w_prime, w)
    y_prime = y + w.mul_ground(alpha) + w_prime.mul_ground(beta)
    gamma = -q_pairing(y_prime, y_prime)
    g1 = y_prime + ell.mul_ground(gamma)
    return mat4_from_forms((g1, w_prime, w, ell)), PairCase.MEETING


def sample_o4(count: int = 8, ring_: PolyRing = RING_Q) -> list[Mat4]:
    """A fixed, deterministic list of O4 elements (SL2 x SL2 images and tau)."""

    identity2 = [[1, 0], [0, 1]]
    upper = [[1, 1], [0, 1]]
    lower = [[1, 0], [1, 1]]
    rotation = [[0, -1], [1, 0]]
    pool = [
        so4_from_sl2_pair(upper, identity2, ring_),
        so4_from_sl2_pair(identity2, upper, ring_),
        TAU.lifted(ring_),
        so4_from_sl2_pair(lower, identity2, ring_),
        so4_from_sl2_pair(identity2, lower, ring_),
        so4_from_sl2_pair(rotation, identity2, ring_),
        so4_from_sl2_pair(identity2, rotation, ring_),
        so4_from_sl2_pair(upper, lower, ring_),
    ]
    return pool[:count]


__all__ = [
    "IsotropicPlane",
    "Mat4",
    "OrthVerdict",
    "PairCase",
    "PlaneClass",
    "TAU",
    "V4",
    "classify_plane",
    "complete_pair",
    "extend_isotropic_pair",
    "horizontal_plane",
    "identity_mat4",
    "is_orthogonal",
    "is_orthogonal_matrix_identity",
    "isotropic_plane",
    "mat4_det",
    "mat4_forms",
    "mat4_from_forms",
    "mat4_inverse",
    "mat4_mul",
    "mat4_transpose",
    "normalize_plane_pair",
    "pairing_matrix",
    "plane_image",
    "planes_through",
    "q_pairing",
    "sample_o4",
    "so4_from_sl2_pair",
    "vertical_plane",
]
