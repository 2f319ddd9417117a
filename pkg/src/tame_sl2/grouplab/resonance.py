"""Resonant scalar pairs and resonant polynomials.

Two nonzero numbers ``a, b`` are resonant when ``a^p * b^q = 1`` for nonzero integers p, q.
Over Q the decision reduces to prime valuations; over Q(i) valuations are taken at Gaussian
primes and the remaining unit (one of 1, -1, i, -i) fixes a final multiple.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from sympy.ntheory import factorint, sqrt_mod
from sympy.polys.domains import QQ_I
from sympy.polys.rings import PolyRing

from tame_sl2.errors import TameError
from tame_sl2.polyring import RING_Q, Poly, coefficient, substitute

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ResonanceWitness:
    """Nonzero integers with ``a^p * b^q = 1``; ``p`` is positive."""

    p: int
    q: int


def power(value, exponent: int, domain):
    """Exact integer power inside ``domain``; negative exponents invert first."""

    base = value if exponent >= 0 else domain.one / value
    result = domain.one
    for _ in range(abs(exponent)):
        result = result * base
    return result


def _two_squares(prime: int) -> tuple[int, int]:
    root = int(sqrt_mod(-1, prime))
    a, b = prime, root
    limit = math.isqrt(prime)
    while b > limit:
        a, b = b, a % b
    c = math.isqrt(prime - b * b)
    if b * b + c * c != prime:  # pragma: no cover - Hermite-Serret always lands here
        raise TameError(f"could not split {prime} as a sum of two squares")
    return b, c


def _gaussian_valuation(x: int, y: int, prime: tuple[int, int], norm: int) -> int:
    u, v = prime
    count = 0
    while x or y:
        re, im = x * u + y * v, y * u - x * v
        if re % norm or im % norm:
            break
        x, y = re // norm, im // norm
        count += 1
    return count


def _rational_valuations(value) -> dict:
    fraction = Fraction(int(value.numerator), int(value.denominator))
    found: dict = {}
    for prime, exponent in factorint(abs(fraction.numerator)).items():
        found[prime] = found.get(prime, 0) + exponent
    for prime, exponent in factorint(fraction.denominator).items():
        found[prime] = found.get(prime, 0) - exponent
    return found


def _gaussian_valuations(value) -> dict:
    re, im = Fraction(int(value.x.numerator), int(value.x.denominator)), Fraction(
        int(value.y.numerator), int(value.y.denominator)
    )
    den = math.lcm(re.denominator, im.denominator)
    x, y = int(re * den), int(im * den)
    found: dict = {}

    def add(key, amount: int) -> None:
        if amount:
            found[key] = found.get(key, 0) + amount

    for prime in sorted(set(factorint(x * x + y * y)) | set(factorint(den))):
        den_exp = factorint(den).get(prime, 0)
        if prime == 2:
            add(("ramified", 2), _gaussian_valuation(x, y, (1, 1), 2) - 2 * den_exp)
        elif prime % 4 == 3:
            add(("inert", prime), _gaussian_valuation(x, y, (prime, 0), prime * prime) - den_exp)
        else:
            u, v = _two_squares(prime)
            for pi in ((u, v), (u, -v)):
                add(("split", prime, pi), _gaussian_valuation(x, y, pi, prime) - den_exp)
    return found


def _unit_order(unit, domain) -> int:
    for order in (1, 2, 4):
        if power(unit, order, domain) == domain.one:
            return order
    raise TameError(f"expected a root of unity, got {unit}")  # pragma: no cover


def resonant(a, b, ring_: PolyRing = RING_Q) -> ResonanceWitness | None:
    """A relation ``a^p * b^q = 1`` with p, q nonzero, or ``None`` when no relation exists."""

    domain = ring_.domain
    a, b = coefficient(a, ring_), coefficient(b, ring_)
    if not a or not b:
        raise TameError("resonance is only defined for nonzero numbers")
    valuations = _gaussian_valuations if domain == QQ_I else _rational_valuations
    alpha, beta = valuations(a), valuations(b)
    keys = sorted(set(alpha) | set(beta), key=repr)
    va = [alpha.get(k, 0) for k in keys]
    vb = [beta.get(k, 0) for k in keys]

    if not any(va) and not any(vb):
        p0, q0 = _unit_order(a, domain), _unit_order(b, domain)
        return ResonanceWitness(p0, q0)
    if not any(va) or not any(vb):
        return None
    index = next(i for i, value in enumerate(vb) if value)
    ratio = Fraction(va[index], vb[index])
    if any(Fraction(x) != ratio * y for x, y in zip(va, vb)):
        return None
    p0, q0 = ratio.denominator, -ratio.numerator
    unit = power(a, p0, domain) * power(b, q0, domain)
    order = _unit_order(unit, domain)
    logger.debug("resonance base relation (%d, %d) up to a unit of order %d", p0, q0, order)
    return ResonanceWitness(order * p0, order * q0)


def _pair_exponents(r: Poly, variables: Sequence[int]) -> list[tuple[tuple[int, int], object]]:
    x, y = variables
    terms = []
    for monom, coeff in r.iterterms():
        if any(e for i, e in enumerate(monom) if i not in (x, y)):
            raise TameError(f"polynomial must only involve x{x + 1} and x{y + 1}: {r}")
        terms.append(((monom[x], monom[y]), coeff))
    return terms


def resonant_poly(r: Poly, a, b, variables: Sequence[int] = (0, 1)) -> bool:
    """``r`` is nonconstant and each term ``x^i y^j`` has ``a^(i+1) * b^(j+1) = 1``."""

    domain = r.ring.domain
    a, b = coefficient(a, r.ring), coefficient(b, r.ring)
    terms = _pair_exponents(r, variables)
    if all(i == 0 and j == 0 for (i, j), _ in terms):
        return False
    return all(power(a, i + 1, domain) * power(b, j + 1, domain) == domain.one for (i, j), _ in terms)


def resonance_identity_holds(r: Poly, a, b, variables: Sequence[int] = (0, 1)) -> bool:
    """Expand ``a*b*R(a*x, b*y)`` and compare with ``R(x, y)``."""

    ring_ = r.ring
    a, b = coefficient(a, ring_), coefficient(b, ring_)
    _pair_exponents(r, variables)
    images = list(ring_.gens)
    images[variables[0]] = images[variables[0]].mul_ground(a)
    images[variables[1]] = images[variables[1]].mul_ground(b)
    return substitute(r, images).mul_ground(a * b) == r


__all__ = [
    "ResonanceWitness",
    "power",
    "resonance_identity_holds",
    "resonant",
    "resonant_poly",
]
