"""Exact polynomials in x1..x4 with the weighted degree of the quadric.

Polynomials are :class:`sympy.polys.rings.PolyElement` values of one of two shared rings,
``RING_Q`` (coefficients in Q) and ``RING_QI`` (Gaussian rationals), both ordered by grlex with
x1 > x2 > x3 > x4. That monomial order is only used for division and canonical forms; degrees are
measured with the weight vectors

    deg x1 = (2,1,1,0), deg x2 = (1,2,0,1), deg x3 = (1,0,2,1), deg x4 = (0,1,1,2),

compared by their sum first and lexicographically on ties.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

from sympy.combinatorics import Permutation
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing, ring

from tame_sl2.errors import TameError

Field = Literal["q", "qi"]
Poly = PolyElement
Exponent4 = tuple[int, int, int, int]

RING_Q, *_GENS_Q = ring("x1,x2,x3,x4", QQ, grlex)
RING_QI, *_GENS_QI = ring("x1,x2,x3,x4", QQ_I, grlex)

WEIGHT_ROWS: tuple[Exponent4, ...] = (
    (2, 1, 1, 0),
    (1, 2, 0, 1),
    (1, 0, 2, 1),
    (0, 1, 1, 2),
)


@functools.total_ordering
@dataclass(frozen=True)
class WeightVec:
    """A weighted degree; ``values is None`` encodes minus infinity."""

    values: tuple[int, int, int, int] | None

    @classmethod
    def minus_infinity(cls) -> WeightVec:
        return cls(None)

    @classmethod
    def of(cls, *values: int) -> WeightVec:
        if len(values) != 4:
            raise TameError(f"weight vectors have four entries, got {len(values)}")
        return cls(tuple(int(v) for v in values))  # type: ignore[arg-type]

    @property
    def is_minus_infinity(self) -> bool:
        return self.values is None

    def total(self) -> int:
        if self.values is None:
            raise TameError("minus infinity has no total weight")
        return sum(self.values)

    def _key(self) -> tuple:
        if self.values is None:
            return (0,)
        return (1, sum(self.values), self.values)

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, WeightVec):
            return NotImplemented
        return self._key() < other._key()

    def __add__(self, other: WeightVec) -> WeightVec:
        if self.values is None or other.values is None:
            return WeightVec(None)
        return WeightVec(tuple(a + b for a, b in zip(self.values, other.values)))  # type: ignore[arg-type]

    def __sub__(self, other: WeightVec) -> WeightVec:
        if self.values is None or other.values is None:
            raise TameError("cannot subtract with minus infinity")
        return WeightVec(tuple(a - b for a, b in zip(self.values, other.values)))  # type: ignore[arg-type]

    def __mul__(self, factor: int) -> WeightVec:
        if factor < 0:
            raise TameError("weight vectors scale by non-negative integers only")
        if self.values is None:
            return self
        if factor == 0:
            return WeightVec((0, 0, 0, 0))
        return WeightVec(tuple(factor * v for v in self.values))  # type: ignore[arg-type]

    __rmul__ = __mul__

    def to_json(self) -> list[int] | str:
        return "-inf" if self.values is None else list(self.values)

    def __str__(self) -> str:
        return "-inf" if self.values is None else "(" + ",".join(map(str, self.values)) + ")"


def ring_for(field: Field) -> PolyRing:
    """Return the shared polynomial ring for ``field``."""

    if field == "q":
        return RING_Q
    if field == "qi":
        return RING_QI
    raise TameError(f"unknown coefficient field: {field!r}")


def field_of(ring_: PolyRing) -> Field:
    return "qi" if ring_.domain == QQ_I else "q"


def gens(ring_: PolyRing = RING_Q) -> tuple[Poly, Poly, Poly, Poly]:
    return tuple(ring_.gens)  # type: ignore[return-value]


def quadric(ring_: PolyRing = RING_Q) -> Poly:
    """The quadratic form q = x1*x4 - x2*x3."""

    x1, x2, x3, x4 = ring_.gens
    return x1 * x4 - x2 * x3


def lift(p: Poly, ring_: PolyRing) -> Poly:
    """Move ``p`` into ``ring_`` (Q -> Q(i) is the only non-trivial direction)."""

    if p.ring == ring_:
        return p
    if ring_ == RING_Q:
        if any(c.y for c in p.values()):
            raise TameError("polynomial has non-rational coefficients")
        return RING_Q.from_dict({m: c.x for m, c in p.iterterms()})
    return p.set_ring(ring_)


def common_ring(polys: Iterable[Poly]) -> PolyRing:
    """The smallest shared ring containing every polynomial."""

    return RING_QI if any(p.ring == RING_QI for p in polys) else RING_Q


def coefficient(value: object, ring_: PolyRing = RING_Q):
    """Convert ``value`` (int, Fraction-like, domain element) into the ring's domain."""

    return ring_.domain.convert(value)


def monomial_weight(exponent: Sequence[int]) -> WeightVec:
    """Image of an exponent under the weight matrix."""

    i, j, k, l = exponent
    return WeightVec((2 * i + j + k, i + 2 * j + l, i + 2 * k + l, j + k + 2 * l))


def wdeg(p: Poly) -> WeightVec:
    """Weighted degree of ``p``; minus infinity for the zero polynomial."""

    if not p:
        return WeightVec.minus_infinity()
    return max(monomial_weight(monom) for monom in p.itermonoms())


def leading_part(p: Poly) -> Poly:
    """Sum of the terms of ``p`` of maximal weighted degree (``hom p``)."""

    if not p:
        raise TameError("undefined leading part of the zero polynomial")
    top = wdeg(p)
    return p.ring.from_dict({m: c for m, c in p.iterterms() if monomial_weight(m) == top})


def homogeneous_components(p: Poly) -> list[tuple[WeightVec, Poly]]:
    """Decompose ``p`` by weighted degree, highest weight first."""

    buckets: dict[WeightVec, dict] = {}
    for monom, coeff in p.iterterms():
        buckets.setdefault(monomial_weight(monom), {})[monom] = coeff
    return [
        (weight, p.ring.from_dict(terms))
        for weight, terms in sorted(buckets.items(), key=lambda item: item[0], reverse=True)
    ]


def ring_arith(p: Poly, r: Poly | object, op: Literal["add", "sub", "mul", "scale"]) -> Poly:
    """Exact ring operation; ``scale`` multiplies ``p`` by the scalar ``r``."""

    if op == "scale":
        return p.mul_ground(coefficient(r, p.ring))
    if not isinstance(r, PolyElement):
        raise TameError(f"{op} expects two polynomials")
    shared = common_ring((p, r))
    p, r = lift(p, shared), lift(r, shared)
    if op == "add":
        return p + r
    if op == "sub":
        return p - r
    if op == "mul":
        return p * r
    raise TameError(f"unknown ring operation: {op!r}")


def substitute(p: Poly, images: Sequence[Poly]) -> Poly:
    """Replace x_i by ``images[i]`` simultaneously and expand."""

    if len(images) != 4:
        raise TameError(f"substitution needs four images, got {len(images)}")
    target = common_ring([p, *images])
    images = [lift(g, target) for g in images]
    powers: list[list[Poly]] = [[target.one] for _ in range(4)]

    def power(index: int, exponent: int) -> Poly:
        cache = powers[index]
        while len(cache) <= exponent:
            cache.append(cache[-1] * images[index])
        return cache[exponent]

    zero = target.domain.zero
    accumulated: dict = {}
    for monom, coeff in p.iterterms():
        term = target.one
        for index, exponent in enumerate(monom):
            if exponent:
                term = term * power(index, exponent)
        coeff = target.domain.convert(coeff, p.ring.domain)
        for m, c in term.iterterms():
            accumulated[m] = accumulated.get(m, zero) + coeff * c
    return target.from_dict(accumulated)


def divrem_single(p: Poly, d: Poly) -> tuple[Poly, Poly]:
    """Division by one polynomial under grlex: ``p = quotient*d + remainder``."""

    if not d:
        raise TameError("division by the zero polynomial")
    shared = common_ring((p, d))
    return lift(p, shared).div(lift(d, shared))


def quotient_normal_form(p: Poly) -> Poly:
    """A representative of ``p`` modulo (q - 1) whose leading part is not divisible by q."""

    q = quadric(p.ring)
    reducer = q - 1
    current = p
    while current:
        factor, remainder = leading_part(current).div(q)
        if remainder:
            break
        current = current - reducer * factor
    return current


def eq_mod_quadric(p: Poly, r: Poly) -> bool:
    """Equality in C[SL2] = C[x1..x4]/(q - 1)."""

    shared = common_ring((p, r))
    difference = lift(p, shared) - lift(r, shared)
    _, remainder = divrem_single(difference, quadric(shared) - 1)
    return not remainder


def jacobian(f1: Poly, f2: Poly, f3: Poly, f4: Poly) -> Poly:
    """Jacobian determinant; row i holds the partial derivatives of the i-th argument."""

    functions = (f1, f2, f3, f4)
    target = common_ring(functions)
    variables = target.gens
    rows = [[lift(f, target).diff(x) for x in variables] for f in functions]
    total = target.zero
    for perm in itertools.permutations(range(4)):
        term = target.one
        for row, column in enumerate(perm):
            term = term * rows[row][column]
            if not term:
                break
        if term:
            total += term if Permutation(list(perm)).signature() == 1 else -term
    return total


def pseudo_jacobian(f1: Poly, f2: Poly, f3: Poly) -> Poly:
    """``jj(f1, f2, f3) = Jac(q, f1, f2, f3)``."""

    target = common_ring((f1, f2, f3))
    return jacobian(quadric(target), f1, f2, f3)


def jj_k(k: int, f1: Poly, f2: Poly) -> Poly:
    """``jj(x_k, f1, f2)`` for ``k`` in 1..4."""

    if k not in (1, 2, 3, 4):
        raise TameError(f"variable index must be 1..4, got {k}")
    target = common_ring((f1, f2))
    return pseudo_jacobian(target.gens[k - 1], f1, f2)


def is_linear_form(p: Poly) -> bool:
    return all(sum(monom) == 1 for monom in p.itermonoms())


def linear_coefficients(p: Poly) -> list:
    """Coefficient row of a linear form in the basis x1..x4."""

    if not is_linear_form(p):
        raise TameError(f"not a homogeneous linear form: {p}")
    domain = p.ring.domain
    row = [domain.zero] * 4
    for monom, coeff in p.iterterms():
        row[monom.index(1)] = coeff
    return row


def linear_form(row: Sequence, ring_: PolyRing = RING_Q) -> Poly:
    terms = {}
    for index, coeff in enumerate(row):
        if coeff:
            monom = [0, 0, 0, 0]
            monom[index] = 1
            terms[tuple(monom)] = coeff
    return ring_.from_dict(terms)


def echelon(vectors: Sequence[Sequence], domain) -> tuple[list[list], tuple[int, ...]]:
    """Reduced row echelon form of ``vectors``; zero rows are dropped."""

    if not vectors:
        return [], ()
    width = len(vectors[0])
    matrix = DomainMatrix([list(v) for v in vectors], (len(vectors), width), domain)
    reduced, pivots = matrix.rref()
    rows = [list(row) for row in reduced.to_ddm()]
    return rows[: len(pivots)], tuple(pivots)


def solve_linear(rows: Sequence[Sequence], rhs: Sequence, domain) -> list | None:
    """One exact solution of ``rows * x = rhs`` (free unknowns set to 0), or ``None``."""

    if not rows:
        return [] if not any(rhs) else None
    width = len(rows[0])
    augmented = [list(row) + [value] for row, value in zip(rows, rhs)]
    reduced, pivots = echelon(augmented, domain)
    if width in pivots:
        return None
    solution = [domain.zero] * width
    for row, pivot in zip(reduced, pivots):
        solution[pivot] = row[width]
    return solution


def monomials_of_degree(raw_degree: int, nvars: int = 2) -> list[tuple[int, ...]]:
    """Exponent tuples of total raw degree ``raw_degree`` in ``nvars`` variables, lex descending."""

    found = [
        exps
        for exps in itertools.product(range(raw_degree + 1), repeat=nvars)
        if sum(exps) == raw_degree
    ]
    return sorted(found, reverse=True)


__all__ = [
    "Exponent4",
    "Field",
    "Poly",
    "RING_Q",
    "RING_QI",
    "WEIGHT_ROWS",
    "WeightVec",
    "coefficient",
    "common_ring",
    "divrem_single",
    "echelon",
    "eq_mod_quadric",
    "field_of",
    "gens",
    "homogeneous_components",
    "is_linear_form",
    "jacobian",
    "jj_k",
    "leading_part",
    "lift",
    "linear_coefficients",
    "linear_form",
    "monomial_weight",
    "monomials_of_degree",
    "pseudo_jacobian",
    "quadric",
    "quotient_normal_form",
    "ring_arith",
    "ring_for",
    "solve_linear",
    "substitute",
    "wdeg",
]
