"""Tame automorphisms as exact quadruples, elementary maps and factored words."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Literal, Sequence, Union

from sympy.polys.rings import PolyRing

from tame_sl2.errors import TameError
from tame_sl2.orth import (
    Mat4,
    OrthVerdict,
    identity_mat4,
    is_orthogonal,
    mat4_forms,
    mat4_from_forms,
    mat4_inverse,
)
from tame_sl2.polyring import (
    RING_Q,
    Poly,
    WeightVec,
    common_ring,
    is_linear_form,
    lift,
    quadric,
    substitute,
    wdeg,
)

FamilyName = Literal["E24", "E13", "E12", "E34"]


@dataclass(frozen=True)
class Family:
    """Index layout of an elementary family: ``f_r += f_u*P(f_u, f_v)``, ``f_s += f_v*P(f_u, f_v)``."""

    name: str
    r: int
    s: int
    u: int
    v: int

    @property
    def touched(self) -> tuple[int, int]:
        return (self.r, self.s)

    @property
    def variables(self) -> tuple[int, int]:
        return (self.u, self.v)


FAMILIES: dict[str, Family] = {
    "E24": Family("E24", r=1, s=3, u=0, v=2),
    "E13": Family("E13", r=0, s=2, u=1, v=3),
    "E12": Family("E12", r=0, s=1, u=2, v=3),
    "E34": Family("E34", r=2, s=3, u=0, v=1),
}
SEARCH_ORDER: tuple[str, ...] = ("E24", "E13", "E12", "E34")


@dataclass(frozen=True)
class TameAuto:
    """A quadruple (f1, f2, f3, f4); tame maps satisfy ``f1*f4 - f2*f3 = q``."""

    components: tuple[Poly, Poly, Poly, Poly]

    def __post_init__(self) -> None:
        if len(self.components) != 4:
            raise TameError(f"an automorphism has four components, got {len(self.components)}")
        shared = common_ring(self.components)
        object.__setattr__(self, "components", tuple(lift(c, shared) for c in self.components))

    @classmethod
    def identity(cls, ring_: PolyRing = RING_Q) -> TameAuto:
        return cls(tuple(ring_.gens))  # type: ignore[arg-type]

    @property
    def ring(self) -> PolyRing:
        return self.components[0].ring

    def __iter__(self) -> Iterator[Poly]:
        return iter(self.components)

    def __getitem__(self, index: int) -> Poly:
        return self.components[index]

    def preserves_quadric(self) -> bool:
        f1, f2, f3, f4 = self.components
        return f1 * f4 - f2 * f3 == quadric(self.ring)

    def checked(self) -> TameAuto:
        if not self.preserves_quadric():
            f1, f2, f3, f4 = self.components
            defect = f1 * f4 - f2 * f3 - quadric(self.ring)
            raise TameError("quadruple does not preserve q", witness=str(defect.as_expr()))
        return self

    def is_linear(self) -> bool:
        return all(is_linear_form(c) for c in self.components)

    def lifted(self, ring_: PolyRing) -> TameAuto:
        return self if ring_ == self.ring else TameAuto(tuple(lift(c, ring_) for c in self))  # type: ignore[arg-type]


@dataclass(frozen=True)
class ElementaryAuto:
    """An elementary map of one family; ``p`` only involves that family's two variables."""

    family: str
    p: Poly

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise TameError(f"unknown elementary family: {self.family!r}")
        allowed = FAMILIES[self.family].variables
        for monom in self.p.itermonoms():
            if any(exponent and index not in allowed for index, exponent in enumerate(monom)):
                names = " and ".join(f"x{i + 1}" for i in allowed)
                raise TameError(f"{self.family} polynomial must only involve {names}: {self.p}")

    @property
    def layout(self) -> Family:
        return FAMILIES[self.family]

    def inverse(self) -> ElementaryAuto:
        return ElementaryAuto(self.family, -self.p)

    def as_auto(self) -> TameAuto:
        return apply_elementary(self, TameAuto.identity(self.p.ring))


Factor = Union[ElementaryAuto, Mat4]


@dataclass(frozen=True)
class TameWord:
    """Factors ``w1, ..., wk`` standing for the composition ``w1 o ... o wk``."""

    factors: tuple[Factor, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self) -> Iterator[Factor]:
        return iter(self.factors)

    def then(self, other: TameWord) -> TameWord:
        """The word for ``self o other``."""

        return TameWord(self.factors + other.factors)

    def ring(self) -> PolyRing:
        rings = [f.p.ring.one if isinstance(f, ElementaryAuto) else f.ring.one for f in self.factors]
        return common_ring(rings)


def apply_elementary(e: ElementaryAuto, f: TameAuto) -> TameAuto:
    """``e o f`` without any invariant check."""

    layout = e.layout
    ring_ = common_ring((e.p, f[0]))
    comps = [lift(c, ring_) for c in f]
    substituted = substitute(lift(e.p, ring_), comps)
    comps[layout.r] = comps[layout.r] + comps[layout.u] * substituted
    comps[layout.s] = comps[layout.s] + comps[layout.v] * substituted
    return TameAuto(tuple(comps))  # type: ignore[arg-type]


def apply_matrix(matrix: Mat4, f: TameAuto) -> TameAuto:
    """``M o f``: component i becomes ``sum_j M[i][j] * f_j``."""

    ring_ = common_ring((matrix.ring.one, f[0]))
    matrix = matrix.lifted(ring_)
    comps = [lift(c, ring_) for c in f]
    result = []
    for row in matrix.rows:
        total = ring_.zero
        for coeff, comp in zip(row, comps):
            if coeff:
                total += comp.mul_ground(coeff)
        result.append(total)
    return TameAuto(tuple(result))  # type: ignore[arg-type]


def apply_factor(factor: Factor, f: TameAuto) -> TameAuto:
    if isinstance(factor, ElementaryAuto):
        return apply_elementary(factor, f)
    return apply_matrix(factor, f)


def compose(f: TameAuto, g: TameAuto) -> TameAuto:
    """``f o g = (f_i(g))``; both inputs and the result must preserve q."""

    f.checked()
    g.checked()
    ring_ = common_ring((f[0], g[0]))
    images = [lift(c, ring_) for c in g]
    return TameAuto(tuple(substitute(lift(c, ring_), images) for c in f)).checked()  # type: ignore[arg-type]


def evaluate_word(word: TameWord, ring_: PolyRing | None = None) -> TameAuto:
    """Evaluate right to left; the empty word is the identity."""

    current = TameAuto.identity(ring_ or word.ring())
    for factor in reversed(word.factors):
        current = apply_factor(factor, current)
    return current


def invert_factor(factor: Factor) -> Factor:
    if isinstance(factor, ElementaryAuto):
        return factor.inverse()
    return mat4_inverse(factor)


def invert_word(word: TameWord) -> TameWord:
    return TameWord(tuple(invert_factor(f) for f in reversed(word.factors)))


def from_matrix(matrix: Mat4) -> TameAuto:
    return TameAuto(mat4_forms(matrix))


def as_matrix(f: TameAuto) -> Mat4:
    if not f.is_linear():
        raise TameError("automorphism is not linear")
    return mat4_from_forms(f.components)


def is_o4(f: TameAuto) -> bool:
    return f.is_linear() and is_orthogonal(as_matrix(f)) != OrthVerdict.NO


def auto_degree(f: TameAuto) -> WeightVec:
    """``degmax f``: the largest component degree."""

    return max(wdeg(c) for c in f)


def _relation(new: WeightVec, old: WeightVec) -> str:
    if new < old:
        return "<"
    if new > old:
        return ">"
    return "="


@dataclass(frozen=True)
class ComponentDropReport:
    """How ``deg(e o f)`` and the two touched components compare with ``f``."""

    family: str
    auto_relation: str
    first_relation: str
    second_relation: str

    @property
    def agree(self) -> bool:
        return self.auto_relation == self.first_relation == self.second_relation


def component_drop_equiv(f: TameAuto, e: ElementaryAuto) -> ComponentDropReport:
    image = apply_elementary(e, f)
    layout = e.layout
    return ComponentDropReport(
        family=e.family,
        auto_relation=_relation(auto_degree(image), auto_degree(f)),
        first_relation=_relation(wdeg(image[layout.r]), wdeg(f[layout.r])),
        second_relation=_relation(wdeg(image[layout.s]), wdeg(f[layout.s])),
    )


def elementary(family: str, p: Poly | int, ring_: PolyRing = RING_Q) -> ElementaryAuto:
    """Convenience constructor accepting integer constants."""

    if not hasattr(p, "ring"):
        p = ring_.ground_new(ring_.domain.convert(p))
    return ElementaryAuto(family, p)  # type: ignore[arg-type]


def word_of(factors: Sequence[Factor]) -> TameWord:
    return TameWord(tuple(factors))


def identity_word() -> TameWord:
    return TameWord(())


def linear_word(matrix: Mat4 | None = None) -> TameWord:
    return TameWord((matrix if matrix is not None else identity_mat4(),))


__all__ = [
    "ComponentDropReport",
    "ElementaryAuto",
    "FAMILIES",
    "Factor",
    "Family",
    "SEARCH_ORDER",
    "TameAuto",
    "TameWord",
    "apply_elementary",
    "apply_factor",
    "apply_matrix",
    "as_matrix",
    "auto_degree",
    "component_drop_equiv",
    "compose",
    "elementary",
    "evaluate_word",
    "from_matrix",
    "identity_word",
    "invert_factor",
    "invert_word",
    "is_o4",
    "linear_word",
    "word_of",
]
