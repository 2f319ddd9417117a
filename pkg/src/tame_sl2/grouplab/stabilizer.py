"""Stab([x1]) as the amalgam of K1 and H2 along their intersection.

H2 holds the maps ``(a x1, b x2 + x1 P(x1, x3), b^-1 x3 + x1 Q(x1), ...)``. K1 holds the maps
``(a x1, b x2 + x1 P(x1), b^-1 x3 + x1 Q(x1), ...)`` and their images under the swap of x2 and x3.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from tame_sl2.errors import TameError
from tame_sl2.orth import TAU
from tame_sl2.polyring import Poly
from tame_sl2.tame import ElementaryAuto, TameAuto, apply_elementary, compose, from_matrix

logger = logging.getLogger(__name__)

_X1 = (1, 0, 0, 0)
_X2 = (0, 1, 0, 0)
_X3 = (0, 0, 1, 0)
_MAX_STEPS = 256


def _scalar_x1(p: Poly):
    if len(p) == 1 and p.LM == _X1:
        return p.LC
    return None


def _split(p: Poly, monom: tuple) -> tuple[object, Poly]:
    coeff = p.get(monom, p.ring.domain.zero)
    return coeff, p - p.ring.from_dict({monom: coeff}) if coeff else p


def _x1_multiple(rest: Poly, allowed: frozenset[int]) -> bool:
    """``rest = x1 * R`` with ``R`` using only x1 and the variables in ``allowed``."""

    for monom in rest.itermonoms():
        if not monom[0]:
            return False
        if any(e for i, e in enumerate(monom) if i and i not in allowed):
            return False
    return True


def _triangular_shape(f: TameAuto, second: tuple, third: tuple, p_vars: frozenset[int]) -> bool:
    if _scalar_x1(f[0]) is None:
        return False
    b, rest2 = _split(f[1], second)
    c, rest3 = _split(f[2], third)
    if not b or c != f.ring.domain.one / b:
        return False
    return _x1_multiple(rest2, p_vars) and _x1_multiple(rest3, frozenset())


def membership_h2(f: TameAuto) -> bool:
    return _triangular_shape(f, _X2, _X3, frozenset({2}))


def membership_k1(f: TameAuto) -> bool:
    return _triangular_shape(f, _X2, _X3, frozenset()) or _triangular_shape(
        f, _X3, _X2, frozenset()
    )


def _groups(f: TameAuto) -> frozenset[str]:
    found = set()
    if membership_k1(f):
        found.add("K1")
    if membership_h2(f):
        found.add("H2")
    return frozenset(found)


@dataclass(frozen=True)
class AmalgamFactor:
    groups: frozenset[str]
    auto: TameAuto

    @property
    def label(self) -> str:
        return "K1&H2" if len(self.groups) == 2 else next(iter(self.groups))


@dataclass(frozen=True)
class StabNormalForm:
    """Factors ``w1, ..., wk`` with ``f = w1 o ... o wk``."""

    factors: tuple[AmalgamFactor, ...]

    def evaluate(self) -> TameAuto:
        result = self.factors[-1].auto
        for factor in reversed(self.factors[:-1]):
            result = compose(factor.auto, result)
        return result

    def alternates(self) -> bool:
        return all(not (a.groups & b.groups) for a, b in zip(self.factors, self.factors[1:]))

    def labels(self) -> list[str]:
        return [factor.label for factor in self.factors]


def _key(p: Poly) -> tuple[int, int]:
    return max((m[1] + m[2], m[0]) for m in p.itermonoms())


def _leading(p: Poly) -> Poly:
    top = _key(p)
    return p.ring.from_dict({m: c for m, c in p.iterterms() if (m[1] + m[2], m[0]) == top})


def _reducer(current: TameAuto) -> ElementaryAuto | None:
    """The H2 factor ``E24(P)`` cancelling the leading part of f2 against a power of f3."""

    f1, f2, f3 = current[0], current[1], current[2]
    (d2, _), (d3, _) = _key(f2), _key(f3)
    if d3 == 0 or d2 % d3:
        return None
    k = d2 // d3
    quotient, remainder = _leading(f2).div(_leading(f3) ** k)
    if remainder or len(quotient) != 1:
        return None
    j = quotient.LM[0]
    if not j or quotient.LM != (j, 0, 0, 0):
        return None
    ring_ = current.ring
    x1, _, x3, _ = ring_.gens
    a = f1.LC
    coeff = quotient.LC / a**j
    return ElementaryAuto("E24", (x1 ** (j - 1) * x3**k).mul_ground(coeff))


def _merge(raw: list[TameAuto]) -> tuple[AmalgamFactor, ...]:
    stack: list[AmalgamFactor] = []
    for auto in raw:
        stack.append(AmalgamFactor(_groups(auto), auto))
        while len(stack) >= 2 and stack[-2].groups & stack[-1].groups:
            right, left = stack.pop(), stack.pop()
            product = compose(left.auto, right.auto)
            groups = _groups(product)
            if not groups:
                raise TameError("merged factor left both K1 and H2")  # pragma: no cover
            stack.append(AmalgamFactor(groups, product))
    return tuple(stack)


def stab_x1_normal_form(f: TameAuto, max_steps: int = _MAX_STEPS) -> StabNormalForm:
    """Alternating K1/H2 factorization of an automorphism with ``f1 = a*x1``."""

    f.checked()
    if _scalar_x1(f[0]) is None:
        raise TameError(f"first component must be a multiple of x1: {f[0]}")
    tau = from_matrix(TAU.lifted(f.ring))
    raw: list[TameAuto] = []
    current = f
    for _ in range(max_steps):
        if _groups(current):
            raw.append(current)
            factors = _merge(raw)
            logger.debug("normal form with %d factors: %s", len(factors), factors)
            return StabNormalForm(factors)
        k2, k3 = _key(current[1]), _key(current[2])
        if k3 > k2:
            raw.append(tau)
            current = compose(tau, current)
            continue
        step = _reducer(current)
        if step is None and k2 == k3:
            swapped = compose(tau, current)
            step = _reducer(swapped)
            if step is not None:
                raw.append(tau)
                current = swapped
        if step is None:
            raise TameError("no K1/H2 peeling step applies", witness=[str(c) for c in current])
        raw.append(step.as_auto())
        current = apply_elementary(step.inverse(), current)
    raise TameError(f"normal form did not terminate within {max_steps} steps")


__all__ = [
    "AmalgamFactor",
    "StabNormalForm",
    "membership_h2",
    "membership_k1",
    "stab_x1_normal_form",
]
