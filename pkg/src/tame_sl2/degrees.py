"""Generic degrees, parachutes and the lower-bound checks used by the reduction engine.

For a pair (f1, f2) taken from an automorphism, the leading parts are either algebraically
independent or satisfy a single relation ``hom f1^s1 = lam * hom f2^s2`` with coprime s1, s2.
The parachute ``nabla(f1, f2) = d1 + d2 - max_k deg jj_k(f1, f2)`` bounds how much degree a
substituted polynomial ``R(f1, f2)`` can lose against its generic degree.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

from tqdm import tqdm

from tame_sl2.errors import TameError
from tame_sl2.polyring import (
    Poly,
    WeightVec,
    common_ring,
    jj_k,
    leading_part,
    lift,
    pseudo_jacobian,
    quadric,
    quotient_normal_form,
    substitute,
    wdeg,
)
from tame_sl2.tame import TameAuto

logger = logging.getLogger(__name__)

Q_WEIGHT = WeightVec.of(2, 2, 2, 2)
_MAX_RELATION_EXPONENT = 24


@dataclass(frozen=True)
class DependenceRelation:
    """``hom f1^s1 = lam * hom f2^s2``; s1 and s2 are coprime."""

    s1: int
    s2: int
    lam: object

    def gap(self, d1: WeightVec) -> WeightVec:
        """Generic degree of ``H = X1^s1 - lam*X2^s2``."""

        return self.s1 * d1


@dataclass(frozen=True)
class GenericDegreeData:
    d1: WeightVec
    d2: WeightVec
    relation: DependenceRelation | None
    nabla: WeightVec | None

    @property
    def dependent(self) -> bool:
        return self.relation is not None


def _leading_ratio(numerator: Poly, denominator: Poly):
    monom = denominator.LM
    return numerator.get(monom, numerator.ring.domain.zero) / denominator[monom]


def hom_membership(p: Poly, r: Poly) -> tuple[object, int] | None:
    """``(c, k)`` with ``hom p = c * (hom r)^k``, or ``None`` when ``hom p`` is not in C[hom r]."""

    shared = common_ring((p, r))
    hp, hr = leading_part(lift(p, shared)), leading_part(lift(r, shared))
    dp, dr = wdeg(hp), wdeg(hr)
    if dp.total() == 0:
        return hp.LC, 0
    if dr.total() == 0 or dp.total() % dr.total():
        return None
    k = dp.total() // dr.total()
    if k * dr != dp:
        return None
    power = hr**k
    c = _leading_ratio(hp, power)
    if not c or hp != power.mul_ground(c):
        return None
    return c, k


def _dependence(h1: Poly, h2: Poly) -> DependenceRelation | None:
    d1, d2 = wdeg(h1), wdeg(h2)
    t1, t2 = d1.total(), d2.total()
    if t1 == 0 or t2 == 0:
        return None
    g = math.gcd(t1, t2)
    s1, s2 = t2 // g, t1 // g
    if s1 * d1 != s2 * d2 or max(s1, s2) > _MAX_RELATION_EXPONENT:
        return None
    left, right = h1**s1, h2**s2
    lam = _leading_ratio(left, right)
    if lam and left == right.mul_ground(lam):
        return DependenceRelation(s1, s2, lam)
    return None


def generic_degree_data(f1: Poly, f2: Poly) -> GenericDegreeData:
    """Degrees, leading-part relation and parachute of a pair; ``nabla`` is ``None`` if every jj_k vanishes."""

    shared = common_ring((f1, f2))
    f1, f2 = lift(f1, shared), lift(f2, shared)
    d1, d2 = wdeg(f1), wdeg(f2)
    relation = _dependence(leading_part(f1), leading_part(f2))
    jacobians = [jj_k(k, f1, f2) for k in (1, 2, 3, 4)]
    nonzero = [wdeg(j) for j in jacobians if j]
    nabla = d1 + d2 - max(nonzero) if nonzero else None
    return GenericDegreeData(d1=d1, d2=d2, relation=relation, nabla=nabla)


def _product_witness(f1: Poly, f2: Poly) -> str | None:
    q = quadric(f1.ring)
    for first, second, name in ((f1, f2, "f2 = c*q^k*f1"), (f2, f1, "f1 = c*q^k*f2")):
        quotient, remainder = second.div(first)
        if remainder or not quotient:
            continue
        member = hom_membership(quotient, q)
        if member is not None and quotient == (q ** member[1]).mul_ground(member[0]):
            c, k = member
            return f"{name} with c={c}, k={k}"
    return None


def parachute(f1: Poly, f2: Poly) -> GenericDegreeData:
    """Generic degree data; fails when the pair cannot belong to an automorphism."""

    data = generic_degree_data(f1, f2)
    if data.nabla is None:
        shared = common_ring((f1, f2))
        witness = _product_witness(lift(f1, shared), lift(f2, shared))
        raise TameError(
            "all pseudo-Jacobians jj_k vanish: q, f1, f2 are algebraically dependent",
            witness=witness,
        )
    return data


def multilayer_impossible(data: GenericDegreeData, target: WeightVec) -> bool:
    """True when the parachute inequality rules out every cancelling ``R`` with ``H | R_gen``.

    A solution whose generic degree exceeds ``target`` has ``R_gen`` in ``(H^n)`` for some
    ``n >= 1`` and then ``n * (s1*d1 - nabla) < target``.
    """

    if data.relation is None or data.nabla is None:
        return False
    slack = data.relation.gap(data.d1) - data.nabla
    return slack.total() > 0 and slack >= target


def _bivariate_substitute(r: Poly, f1: Poly, f2: Poly) -> Poly:
    for monom in r.itermonoms():
        if monom[2] or monom[3]:
            raise TameError(f"R must be a polynomial in X1 = x1 and X2 = x2 only: {r}")
    shared = common_ring((r, f1, f2))
    zero = shared.zero
    return substitute(lift(r, shared), (lift(f1, shared), lift(f2, shared), zero, zero))


@dataclass(frozen=True)
class LowerBoundReport:
    """Hypotheses and conclusion of ``deg(f2 * R(f1, f2)) > deg f1``."""

    variant: str
    involves_x1: bool
    hom_independent: bool
    lhs: WeightVec
    rhs: WeightVec

    @property
    def hypotheses_hold(self) -> bool:
        return self.involves_x1 and self.hom_independent

    @property
    def conclusion(self) -> bool:
        return self.lhs > self.rhs

    @property
    def holds(self) -> bool:
        return not self.hypotheses_hold or self.conclusion


def lower_bound_check(
    f1: Poly, f2: Poly, r: Poly, *, variant: Literal["quadric", "sl2"] = "quadric"
) -> LowerBoundReport:
    """Evaluate the lower bound for one pair; ``sl2`` measures degrees on normal forms mod (q - 1)."""

    if variant not in ("quadric", "sl2"):
        raise TameError(f"unknown lower-bound variant: {variant!r}")
    value = _bivariate_substitute(r, f1, f2)
    product = lift(f2, value.ring) * value
    if variant == "sl2":
        f1, f2, product = (quotient_normal_form(p) for p in (f1, f2, product))
    involves_x1 = any(monom[0] for monom in r.itermonoms())
    hom_independent = bool(f1) and bool(f2) and hom_membership(f1, f2) is None
    return LowerBoundReport(
        variant=variant,
        involves_x1=involves_x1,
        hom_independent=hom_independent,
        lhs=wdeg(product),
        rhs=wdeg(f1),
    )


def pseudo_jacobian_bound_holds(f1: Poly, f2: Poly, f3: Poly) -> bool:
    jj = pseudo_jacobian(f1, f2, f3)
    if not jj:
        return True
    return wdeg(jj) <= wdeg(f1) + wdeg(f2) + wdeg(f3) - Q_WEIGHT


def parachute_bound_holds(f1: Poly, f2: Poly) -> bool:
    """``deg jj_k <= d1 + d2 + deg x_k - (2,2,2,2)`` for every k, and ``nabla <= d1 + d2``."""

    data = generic_degree_data(f1, f2)
    gens = common_ring((f1, f2)).gens
    for k in (1, 2, 3, 4):
        jj = jj_k(k, f1, f2)
        if jj and wdeg(jj) > data.d1 + data.d2 + wdeg(gens[k - 1]) - Q_WEIGHT:
            return False
    return data.nabla is None or data.nabla <= data.d1 + data.d2


@dataclass(frozen=True)
class DegreeRow:
    index: int
    component: int
    degree: WeightVec
    quotient_degree: WeightVec

    @property
    def equal(self) -> bool:
        return self.degree == self.quotient_degree


@dataclass(frozen=True)
class DegreeReport:
    """Comparison of ``deg p`` and ``deg p-bar`` on sampled components; evidence only."""

    rows: Sequence[DegreeRow]

    @property
    def mismatches(self) -> list[DegreeRow]:
        return [row for row in self.rows if not row.equal]


def degree_report(autos: Iterable[TameAuto], *, show_progress: bool = False) -> DegreeReport:
    autos = list(autos)
    progress = None
    if show_progress:
        progress = tqdm(total=len(autos), desc="Comparing degrees", unit="auto")
    rows: list[DegreeRow] = []
    try:
        for index, auto in enumerate(autos):
            for component, p in enumerate(auto):
                rows.append(DegreeRow(index, component + 1, wdeg(p), wdeg(quotient_normal_form(p))))
            if progress:
                progress.update()
    finally:
        if progress:
            progress.close()
    report = DegreeReport(rows)
    logger.info("degree report: %d components, %d mismatches", len(rows), len(report.mismatches))
    return report


__all__ = [
    "DegreeReport",
    "DegreeRow",
    "DependenceRelation",
    "GenericDegreeData",
    "LowerBoundReport",
    "Q_WEIGHT",
    "degree_report",
    "generic_degree_data",
    "hom_membership",
    "lower_bound_check",
    "multilayer_impossible",
    "parachute",
    "parachute_bound_holds",
    "pseudo_jacobian_bound_holds",
]
