"""Linearization of finite subgroups by averaging.

For a group ``G = M x| L`` acting on polynomial maps, with ``phi: G -> L`` the projection, the
average ``m = 1/|Gamma| * sum phi(g)^-1 o g`` satisfies ``m o f = phi(f) o m`` for every ``f`` in
a finite subgroup ``Gamma``. Averaging is coordinatewise; the fourth component of a quadric map is
recovered from the other three.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from sympy.polys.rings import PolyRing

from tame_sl2.errors import TameError
from tame_sl2.grouplab.stabilizer import membership_h2, membership_k1
from tame_sl2.orth import Mat4, mat4_inverse
from tame_sl2.polyring import Poly, is_linear_form, lift, linear_coefficients, quadric, substitute
from tame_sl2.reduction import auto_inverse
from tame_sl2.tame import TameAuto, TameWord, as_matrix, compose, evaluate_word, from_matrix

logger = logging.getLogger(__name__)

_MAX_GROUP_ORDER = 64


def _key(f: TameAuto) -> tuple:
    return tuple(f.components)


@dataclass(frozen=True)
class FiniteSubgroup:
    """Distinct automorphisms closed under composition; closure is checked on construction."""

    elements: tuple[TameAuto, ...]

    def __post_init__(self) -> None:
        if not self.elements:
            raise TameError("a finite subgroup has at least the identity")
        ring_ = self.elements[0].ring
        lifted = tuple(f.lifted(ring_).checked() for f in self.elements)
        object.__setattr__(self, "elements", lifted)
        keys = {_key(f) for f in lifted}
        if len(keys) != len(lifted):
            raise TameError("finite subgroup elements must be distinct")
        if _key(TameAuto.identity(ring_)) not in keys:
            raise TameError("finite subgroup must contain the identity")
        for f in lifted:
            for g in lifted:
                if _key(compose(f, g)) not in keys:
                    raise TameError("set is not closed under composition", witness=len(keys))

    @classmethod
    def generated_by(
        cls, generators: Iterable[TameAuto | TameWord], max_order: int = _MAX_GROUP_ORDER
    ) -> FiniteSubgroup:
        autos = [evaluate_word(g) if isinstance(g, TameWord) else g for g in generators]
        ring_ = autos[0].ring if autos else TameAuto.identity().ring
        identity = TameAuto.identity(ring_)
        found = {_key(identity): identity}
        frontier = [identity]
        while frontier:
            fresh = []
            for f in frontier:
                for g in autos:
                    h = compose(g, f)
                    if _key(h) not in found:
                        found[_key(h)] = h
                        fresh.append(h)
                        if len(found) > max_order:
                            raise TameError(f"generated group exceeds order {max_order}")
            frontier = fresh
        return cls(tuple(found.values()))

    @property
    def ring(self) -> PolyRing:
        return self.elements[0].ring

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class LinearizationReport:
    """Conjugator ``m`` and the linear images ``phi(g) = m o g o m^-1``."""

    case: str
    conjugator: TameAuto
    images: tuple[TameAuto, ...]


def _complete_fourth(first: Poly, second: Poly, third: Poly) -> Poly:
    q = quadric(first.ring)
    quotient, remainder = (q + second * third).div(first)
    if remainder:
        raise TameError("averaged map does not extend to a map preserving q")
    return quotient


def _mean_map(gamma: FiniteSubgroup, phi: Callable[[TameAuto], TameAuto]) -> TameAuto:
    ring_ = gamma.ring
    zero = ring_.zero
    sums = [zero, zero, zero]
    for g in gamma.elements:
        translated = compose(_inverse_linear(phi(g)), g)
        for i in range(3):
            sums[i] = sums[i] + translated[i]
    scale = ring_.domain.one / ring_.domain.convert(len(gamma))
    first, second, third = (s.mul_ground(scale) for s in sums)
    return TameAuto((first, second, third, _complete_fourth(first, second, third))).checked()


def _inverse_linear(f: TameAuto) -> TameAuto:
    return from_matrix(mat4_inverse(as_matrix(f)))


def _verified(case: str, gamma: FiniteSubgroup, phi, m: TameAuto) -> LinearizationReport:
    images = []
    for g in gamma.elements:
        image = phi(g)
        if compose(m, g) != compose(image, m):
            raise TameError(f"{case}: conjugation identity m o f = phi(f) o m failed")
        images.append(image)
    logger.info("linearized a group of order %d (%s)", len(gamma), case)
    return LinearizationReport(case=case, conjugator=m, images=tuple(images))


def _span_x1_x3(form) -> tuple:
    if not is_linear_form(form):
        raise TameError(f"component is not linear: {form}")
    row = linear_coefficients(form)
    if row[1] or row[3]:
        raise TameError(f"component leaves span(x1, x3): {form}")
    return row[0], row[2]


def stab_x1x3_linear_part(g: TameAuto) -> TameAuto:
    """The GL2 factor of ``g`` in ``Stab([x1, x3]) = E24 x| GL2``."""

    alpha, beta = _span_x1_x3(g[0])
    gamma_, delta = _span_x1_x3(g[2])
    det = alpha * delta - beta * gamma_
    if not det:
        raise TameError("degenerate action on span(x1, x3)")
    d = g.ring.domain
    rows = [
        [alpha, d.zero, beta, d.zero],
        [d.zero, alpha / det, d.zero, beta / det],
        [gamma_, d.zero, delta, d.zero],
        [d.zero, gamma_ / det, d.zero, delta / det],
    ]
    return from_matrix(Mat4.build(rows, g.ring))


def mean_linearize(gamma: FiniteSubgroup) -> LinearizationReport:
    """Conjugate a finite subgroup of ``Stab([x1, x3])`` into GL2."""

    for g in gamma.elements:
        stab_x1x3_linear_part(g)
    m = _mean_map(gamma, stab_x1x3_linear_part)
    return _verified("Stab([x1,x3])", gamma, stab_x1x3_linear_part, m)


@dataclass(frozen=True)
class TriangularMap:
    """A map of C^n on the variables ``order`` (indices into x1..x4).

    Component ``i`` has the shape ``a_i * y_i + P_i(y_(i+1), ..., y_n)`` with ``y = x[order]``.
    """

    components: tuple
    order: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.components) != len(self.order):
            raise TameError("a triangular map needs one component per variable")
        for i, (component, var) in enumerate(zip(self.components, self.order)):
            later = set(self.order[i + 1 :])
            diagonal = component.ring.domain.zero
            for monom, coeff in component.iterterms():
                used = {k for k, e in enumerate(monom) if e}
                if used == {var} and monom[var] == 1:
                    diagonal = coeff
                elif not used <= later:
                    raise TameError(f"component {i + 1} is not triangular: {component}")
            if not diagonal:
                raise TameError(f"component {i + 1} has no invertible diagonal term")

    @property
    def ring(self) -> PolyRing:
        return self.components[0].ring

    def diagonal(self) -> tuple:
        out = []
        for component, var in zip(self.components, self.order):
            monom = tuple(1 if k == var else 0 for k in range(4))
            out.append(component.get(monom, component.ring.domain.zero))
        return tuple(out)

    def _images(self) -> list:
        images = list(self.ring.gens)
        for component, var in zip(self.components, self.order):
            images[var] = component
        return images

    def then(self, other: TriangularMap) -> TriangularMap:
        """``self o other``."""

        images = other._images()
        return TriangularMap(tuple(substitute(c, images) for c in self.components), self.order)

    def is_diagonal(self) -> bool:
        return all(
            len(c) == 1 and c.LM == tuple(1 if k == v else 0 for k in range(4))
            for c, v in zip(self.components, self.order)
        )


def _diagonal_map(scalars: Sequence, order: tuple[int, ...], ring_: PolyRing) -> TriangularMap:
    return TriangularMap(
        tuple(ring_.gens[v].mul_ground(s) for s, v in zip(scalars, order)), tuple(order)
    )


def diagonalize_triangular(gamma: Sequence[TriangularMap]) -> TriangularMap:
    """Unipotent ``u`` with ``u o f o u^-1`` diagonal for each ``f`` of a finite triangular group."""

    if not gamma:
        raise TameError("empty group")
    order = gamma[0].order
    ring_ = gamma[0].ring
    d = ring_.domain
    sums = [ring_.zero for _ in order]
    for g in gamma:
        if g.order != order:
            raise TameError("all maps must use the same variable order")
        inverse = _diagonal_map([d.one / a for a in g.diagonal()], order, ring_)
        for i, component in enumerate(inverse.then(g).components):
            sums[i] = sums[i] + lift(component, ring_)
    scale = d.one / d.convert(len(gamma))
    u = TriangularMap(tuple(s.mul_ground(scale) for s in sums), order)
    for g in gamma:
        image = _diagonal_map(g.diagonal(), order, ring_)
        if u.then(g) != image.then(u):
            raise TameError("conjugation identity failed; the maps do not form a group")
    return u


def _k1_linear_part(g: TameAuto) -> TameAuto:
    ring_ = g.ring
    x1, x2, x3, x4 = ring_.gens
    one = ring_.domain.one
    a = g[0].get((1, 0, 0, 0), ring_.domain.zero)
    swapped = g[1].get((0, 0, 1, 0), ring_.domain.zero)
    if swapped:
        b = swapped
        forms = (x1.mul_ground(a), x3.mul_ground(b), x2.mul_ground(one / b), x4.mul_ground(one / a))
    else:
        b = g[1].get((0, 1, 0, 0), ring_.domain.zero)
        forms = (x1.mul_ground(a), x2.mul_ground(b), x3.mul_ground(one / b), x4.mul_ground(one / a))
    return TameAuto(forms)


def _h2_linear_part(g: TameAuto) -> TameAuto:
    ring_ = g.ring
    x1, x2, x3, x4 = ring_.gens
    one = ring_.domain.one
    a = g[0].get((1, 0, 0, 0), ring_.domain.zero)
    b = g[1].get((0, 1, 0, 0), ring_.domain.zero)
    forms = (x1.mul_ground(a), x2.mul_ground(b), x3.mul_ground(one / b), x4.mul_ground(one / a))
    return TameAuto(forms)


H2_ORDER = (1, 2, 0)


def linearize(gamma: FiniteSubgroup) -> LinearizationReport:
    """Dispatch over the fixed-vertex cases: [id], [x1, x3] and [x1] (K1 or H2 branch)."""

    elements = gamma.elements
    if all(g.is_linear() for g in elements):
        return LinearizationReport("linear", TameAuto.identity(gamma.ring), elements)
    try:
        return mean_linearize(gamma)
    except TameError:
        logger.debug("group does not fix [x1,x3]")
    if all(membership_k1(g) for g in elements):
        m = _mean_map(gamma, _k1_linear_part)
        return _verified("K1", gamma, _k1_linear_part, m)
    if all(membership_h2(g) for g in elements):
        maps = [TriangularMap((g[1], g[2], g[0]), H2_ORDER) for g in elements]
        u = diagonalize_triangular(maps)
        second, third, first = u.components
        m = TameAuto((first, second, third, _complete_fourth(first, second, third))).checked()
        return _verified("H2", gamma, _h2_linear_part, m)
    raise TameError("group is not inside Stab([x1,x3]), K1 or H2")


def conjugate_linear(m: TameAuto, image: TameAuto) -> TameAuto:
    """``m^-1 o image o m`` for a linear ``image``; used to build test groups."""

    return compose(auto_inverse(m), compose(image, m))


__all__ = [
    "FiniteSubgroup",
    "H2_ORDER",
    "LinearizationReport",
    "TriangularMap",
    "conjugate_linear",
    "diagonalize_triangular",
    "linearize",
    "mean_linearize",
    "stab_x1x3_linear_part",
]
