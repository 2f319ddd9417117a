"""Generators for hyperbolic, hyperelliptic and parabolic families of tame automorphisms.

A Henon-type factor is ``L o E13(P)`` with ``L = (b^-1 x2, a x1, -a^-1 x4, -b x3)`` and
``P`` in C[x2, x4] of raw degree at least 2. Products of such factors are hyperbolic.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Literal, Sequence

from sympy import I
from sympy.polys.rings import PolyRing

from tame_sl2.complex.subcomplex import SubComplexBuilder, edge_distance
from tame_sl2.complex.vertices import vertex_t3
from tame_sl2.errors import TameError
from tame_sl2.grouplab.resonance import ResonanceWitness, power, resonant
from tame_sl2.orth import TAU, Mat4
from tame_sl2.polyring import RING_Q, RING_QI, Poly, coefficient, lift, substitute
from tame_sl2.tame import (
    ElementaryAuto,
    TameAuto,
    TameWord,
    compose,
    evaluate_word,
    from_matrix,
    invert_word,
)

logger = logging.getLogger(__name__)

SIGMA = Mat4.build([[0, 0, -1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, 1, 0, 0]])
_SWAP_PAIRS = Mat4.build([[0, 0, 1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, -1, 0, 0]])
_MAX_PLANAR_EXPONENT = 16


def raw_degree(p: Poly) -> int:
    return max((sum(m) for m in p.itermonoms()), default=-1)


def henon_linear(a, b, ring_: PolyRing = RING_Q) -> Mat4:
    a, b = coefficient(a, ring_), coefficient(b, ring_)
    if not a or not b:
        raise TameError("Henon scalars must be nonzero")
    one, zero = ring_.domain.one, ring_.domain.zero
    return Mat4(
        (
            (zero, one / b, zero, zero),
            (a, zero, zero, zero),
            (zero, zero, zero, -one / a),
            (zero, zero, -b, zero),
        ),
        ring_,
    )


def diagonal(a, b, ring_: PolyRing = RING_Q) -> Mat4:
    """``(a x1, b^-1 x2, b x3, a^-1 x4)``."""

    a, b = coefficient(a, ring_), coefficient(b, ring_)
    one, zero = ring_.domain.one, ring_.domain.zero
    values = (a, one / b, b, one / a)
    return Mat4(tuple(tuple(v if i == j else zero for j in range(4)) for i, v in enumerate(values)), ring_)  # type: ignore[arg-type]


def gen_henon(params: Sequence[tuple[object, object, Poly]]) -> TameWord:
    """Word of ``g_r o ... o g_1`` for ``params = [(a_1, b_1, P_1), ..., (a_r, b_r, P_r)]``."""

    factors: list = []
    for a, b, p in params:
        if raw_degree(p) < 2:
            raise TameError(f"Henon polynomial must have degree at least 2, got {p}")
        factors[:0] = [henon_linear(a, b, p.ring), ElementaryAuto("E13", p)]
    return TameWord(tuple(factors))


def gen_example_g(ring_: PolyRing = RING_Q) -> tuple[TameAuto, TameAuto]:
    """The hyperbolic element ``g`` moving ``[x1]`` to ``[x4]``, and its inverse."""

    x1, x2, x3, x4 = ring_.gens
    g = TameAuto((x4 + x3 * x1**2 + x2 * x1**2 + x1**5, x2 + x1**3, x3 + x1**3, x1))
    g_inv = TameAuto((x4, x2 - x4**3, x3 - x4**3, x1 - x2 * x4**2 - x3 * x4**2 + x4**5))
    return g.checked(), g_inv.checked()


def example_g_word(ring_: PolyRing = RING_Q) -> TameWord:
    x4 = ring_.gens[3]
    swap = Mat4.build([[0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0]], ring_)
    return TameWord((ElementaryAuto("E13", x4**2), ElementaryAuto("E12", x4**2), swap))


@dataclass(frozen=True)
class HyperellipticReport:
    """``f`` together with a hyperbolic word commuting with it."""

    form: Literal["resonant", "elementary"]
    f: TameAuto
    witness: TameWord
    polynomial: Poly
    resonance: ResonanceWitness | None
    verified: str


def _swap_variables(p: Poly) -> Poly:
    x1, x2, x3, x4 = p.ring.gens
    return substitute(p, (x1, x4, x3, x2))


def _resonant_form(a, b, ring_: PolyRing) -> HyperellipticReport:
    witness = resonant(a, b, ring_)
    if witness is None:
        raise TameError(f"{a} and {b} are not resonant", witness={"a": str(a), "b": str(b)})
    a, b = coefficient(a, ring_), coefficient(b, ring_)
    p_exp, q_exp = witness.p, witness.q
    swapped = q_exp < 0
    if swapped:
        q_exp = -q_exp
    k = 1
    while k * (p_exp + q_exp) - 2 < 2:
        k += 1
    _, x2, _, x4 = ring_.gens
    p = x2 ** (k * q_exp - 1) * x4 ** (k * p_exp - 1)
    p_tilde = -_swap_variables(p)

    g = evaluate_word(gen_henon([(-1, -1, p)]), ring_)
    g_tilde = evaluate_word(gen_henon([(-1, -1, p_tilde)]), ring_)
    sigma = from_matrix(SIGMA.lifted(ring_))
    if compose(sigma, compose(g, sigma)) != g_tilde:
        raise TameError("sigma does not conjugate g to g~")  # pragma: no cover

    word = gen_henon([(-1, -1, p), (-1, -1, p_tilde)])
    if swapped:
        tau = TAU.lifted(ring_)
        word = TameWord((tau, *word.factors, tau))
    f = from_matrix(diagonal(a, b, ring_))
    h = evaluate_word(word, ring_)
    if compose(f, h) != compose(h, f):
        raise TameError("witness does not commute with the diagonal map")  # pragma: no cover
    logger.info("resonant hyperelliptic witness with P = %s (relation %s)", p, witness)
    return HyperellipticReport("resonant", f, word, p, witness, "compose(f, w) == compose(w, f)")


def _order_in_qi(value, ring_: PolyRing) -> int:
    for order in (1, 2, 4):
        if power(value, order, ring_.domain) == ring_.domain.one:
            return order
    raise TameError(f"{value} is not a root of unity in Q(i)")


def _planar_exponent(base, target, ring_: PolyRing) -> int:
    for exponent in range(2, _MAX_PLANAR_EXPONENT):
        if power(base, exponent, ring_.domain) == target:
            return exponent
    raise TameError(f"no exponent k >= 2 with {base}^k = {target}")  # pragma: no cover


def _planar(images: Sequence[Poly], after: Sequence[Poly]) -> tuple[Poly, Poly]:
    """``images o after`` for maps of the (x1, x3)-plane given by their two coordinates."""

    x1, x2, x3, x4 = after[0].ring.gens
    full = (after[0], x2, after[1], x4)
    return substitute(images[0], full), substitute(images[1], full)


def _swap_word(exponent: int, ring_: PolyRing) -> TameWord:
    x3 = ring_.gens[2]
    return TameWord((_SWAP_PAIRS.lifted(ring_), ElementaryAuto("E12", x3 ** (exponent - 1))))


def _elementary_form(a, b, p: Poly | None, ring_: PolyRing) -> HyperellipticReport:
    a, b = coefficient(a, ring_), coefficient(b, ring_)
    if _order_in_qi(a, ring_) != _order_in_qi(b, ring_):
        raise TameError(f"{a} and {b} are roots of unity of different orders")
    m = _planar_exponent(a, b, ring_)
    n = _planar_exponent(b, a, ring_)
    one = ring_.domain.one
    x1, _, x3, _ = ring_.gens
    m_map = (x3, x1 + x3**m)
    n_map = (x3, x1 + x3**n)
    d_map = (x1.mul_ground(one / a), x3.mul_ground(one / b))
    lhs = _planar(m_map, _planar(n_map, d_map))
    rhs = _planar(d_map, _planar(m_map, n_map))
    if lhs != rhs:
        raise TameError("planar maps do not commute with the diagonal")  # pragma: no cover

    g1 = evaluate_word(_swap_word(m, ring_), ring_).checked()
    g2 = evaluate_word(_swap_word(n, ring_), ring_).checked()
    logger.debug("lifted planar maps: %s and %s", g1, g2)
    p = lift(p, ring_) if p is not None else x1 * x3
    f_word = TameWord((diagonal(one / a, one / b, ring_), ElementaryAuto("E24", p)))
    witness = TameWord((*_swap_word(m, ring_).factors, *_swap_word(n, ring_).factors))
    f = evaluate_word(f_word, ring_).checked()
    return HyperellipticReport("elementary", f, witness, p, None, f"planar with m={m}, n={n}")


def gen_hyperelliptic(
    a,
    b,
    form: Literal["resonant", "elementary"] = "resonant",
    p: Poly | None = None,
    ring_: PolyRing | None = None,
) -> HyperellipticReport:
    """Hyperelliptic ``f`` with a commuting hyperbolic witness.

    The resonant form takes ``f = (a x1, b^-1 x2, b x3, a^-1 x4)`` for resonant ``a, b``. The
    elementary form takes roots of unity of one order in Q(i) and ``f = diag o E24(P)``.
    """

    if form == "resonant":
        return _resonant_form(a, b, ring_ or RING_Q)
    if form == "elementary":
        return _elementary_form(a, b, p, ring_ or RING_QI)
    raise TameError(f"unknown hyperelliptic form: {form!r}")


@dataclass(frozen=True)
class ParabolicFamily:
    """``phi_n`` and generators ``phi_n^-1 o h o phi_n`` for sampled ``h`` in ``H_n``."""

    n: int
    phi: TameWord
    h_samples: tuple[Mat4, ...]
    generators: tuple[TameWord, ...]


def _roots_of_unity(n: int, ring_: PolyRing) -> list:
    domain = ring_.domain
    pool = [domain.one, -domain.one]
    if ring_ == RING_QI:
        i = domain.from_sympy(I)
        pool += [i, -i]
    return [z for z in pool if power(z, 2**n, domain) == domain.one]


def h_samples(n: int, ring_: PolyRing = RING_Q) -> list[Mat4]:
    """``diag(a, b^-1, b, a^-1)`` with ``a = 2`` and ``a*b`` ranging over roots of order dividing ``2^n``."""

    two = ring_.domain.convert(2)
    return [diagonal(two, z / two, ring_) for z in _roots_of_unity(n, ring_)]


def parabolic_pair(k: int, ring_: PolyRing = RING_Q) -> TameWord:
    """``g~_k o g_k`` with ``P_k = (x2 x4)^(2^k - 1)``."""

    _, x2, _, x4 = ring_.gens
    p = (x2 * x4) ** (2**k - 1)
    return gen_henon([(-1, -1, p), (-1, -1, -p)])


def _phi(n: int, ring_: PolyRing) -> TameWord:
    factors: list = []
    for k in range(n, 0, -1):
        factors.extend(parabolic_pair(k, ring_).factors)
    return TameWord(tuple(factors))


def _field_for(n: int) -> PolyRing:
    if n < 0:
        raise TameError(f"parabolic index must be non-negative, got {n}")
    if n > 2:
        raise TameError(f"Q(i) has no roots of unity of order 2^{n}")
    return RING_QI if n == 2 else RING_Q


def gen_parabolic(n: int) -> ParabolicFamily:
    """Generators of ``phi_n^-1 H_n phi_n`` after checking that ``H_j`` commutes with ``g~_k o g_k`` for ``j < k``."""

    ring_ = _field_for(n)
    for k in range(1, n + 1):
        pair = evaluate_word(parabolic_pair(k, ring_), ring_)
        for j in range(k):
            for sample in h_samples(j, ring_):
                h = from_matrix(sample)
                if compose(h, pair) != compose(pair, h):
                    raise TameError(f"H_{j} sample does not commute with the pair of index {k}")  # pragma: no cover
    phi = _phi(n, ring_)
    samples = tuple(h_samples(n, ring_))
    inverse = invert_word(phi)
    generators = tuple(TameWord((*inverse.factors, h, *phi.factors)) for h in samples)
    logger.info("parabolic family n=%d with %d generators", n, len(generators))
    return ParabolicFamily(n, phi, samples, generators)


def parabolic_drift(n: int) -> int:
    """Skeleton distance between ``[id]`` and ``phi_n^-1 . [id]``.

    With ``phi_n = A o B`` split in the middle, the distance equals ``d([B^-1], [A])``, which is
    measured on the chains of big squares from ``[id]`` to both ends.
    """

    ring_ = _field_for(n)
    factors = _phi(n, ring_).factors
    half = len(factors) // 2
    first, second = TameWord(factors[:half]), TameWord(factors[half:])
    builder = SubComplexBuilder()
    start = TameAuto.identity(ring_)
    left = builder.add_chain(start, invert_word(second))
    right = builder.add_chain(start, first)
    distance = edge_distance(builder.build(), vertex_t3(left), vertex_t3(right))
    if distance is None:  # pragma: no cover - both chains start at [id]
        raise TameError("chains are disconnected")
    return distance


__all__ = [
    "HyperellipticReport",
    "ParabolicFamily",
    "SIGMA",
    "diagonal",
    "example_g_word",
    "gen_example_g",
    "gen_hyperelliptic",
    "gen_henon",
    "gen_parabolic",
    "h_samples",
    "henon_linear",
    "parabolic_drift",
    "parabolic_pair",
    "raw_degree",
]
