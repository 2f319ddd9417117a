"""Elementary reductions: search, certified traces and the tameness decision.

For a family with untouched components (u, v) and touched components (r, s), a reduction is a
polynomial P with ``deg(f_r + f_u * P(f_u, f_v)) < deg f_r``. Writing P as a sum of
``c_ab * X^a * Y^b``, every term of weight at least ``deg f_r`` must cancel, which is a linear
system in the unknown coefficients. When the leading parts of f_u and f_v are independent the
candidates of generic degree exactly ``deg f_r`` suffice; otherwise higher layers are searched up
to the configured budget.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from tqdm import tqdm

from lib.codec import encode_auto, encode_matrix, encode_poly, encode_word
from tame_sl2.degrees import GenericDegreeData, generic_degree_data, multilayer_impossible
from tame_sl2.errors import TameError
from tame_sl2.orth import Mat4, OrthVerdict, is_orthogonal
from tame_sl2.polyring import Poly, WeightVec, monomial_weight, quadric, solve_linear, wdeg
from tame_sl2.tame import (
    FAMILIES,
    SEARCH_ORDER,
    ElementaryAuto,
    Family,
    TameAuto,
    TameWord,
    apply_elementary,
    as_matrix,
    auto_degree,
    evaluate_word,
    invert_word,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReductionBudget:
    """Search bounds: multi-layer depth, unknowns per solve and reduction steps."""

    depth: int = 4
    support: int = 64
    max_steps: int = 200

    def __post_init__(self) -> None:
        for name in ("depth", "support", "max_steps"):
            if getattr(self, name) < 0:
                raise ValueError(f"budget {name} must be non-negative")


DEFAULT_BUDGET = ReductionBudget()


@dataclass(frozen=True)
class FamilyAttempt:
    """Why one family produced no reduction."""

    family: str
    equation: str
    solutions: tuple[tuple[int, int], ...]
    dependent: bool
    layers: int
    definitive: bool
    reason: str

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "equation": self.equation,
            "solutions": [list(s) for s in self.solutions],
            "dependent": self.dependent,
            "layers": self.layers,
            "definitive": self.definitive,
            "reason": self.reason,
        }


@dataclass(frozen=True)
class ReductionStep:
    elementary: ElementaryAuto
    degree: WeightVec


@dataclass(frozen=True)
class Linear:
    matrix: Mat4


@dataclass(frozen=True)
class NoReductionFound:
    attempts: tuple[FamilyAttempt, ...]
    reason: str = "no elementary reduction"

    @property
    def definitive(self) -> bool:
        return bool(self.attempts) and all(a.definitive for a in self.attempts)


Verdict = Union[Linear, NoReductionFound]


@dataclass(frozen=True)
class ReductionTrace:
    start: TameAuto
    steps: tuple[ReductionStep, ...]
    verdict: Verdict

    @property
    def linear(self) -> bool:
        return isinstance(self.verdict, Linear)

    def word(self) -> TameWord:
        """``[e_1^-1, ..., e_n^-1, a]``, which evaluates back to ``start``."""

        if not isinstance(self.verdict, Linear):
            raise ValueError("only a trace ending in a linear map certifies a word")
        inverses = tuple(step.elementary.inverse() for step in self.steps)
        return TameWord(inverses + (self.verdict.matrix,))

    def degrees(self) -> list[WeightVec]:
        return [auto_degree(self.start)] + [step.degree for step in self.steps]


@dataclass(frozen=True)
class Tame:
    word: TameWord
    trace: ReductionTrace


@dataclass(frozen=True)
class NotTameWithinBudget:
    trace: ReductionTrace

    @property
    def definitive(self) -> bool:
        verdict = self.trace.verdict
        return isinstance(verdict, NoReductionFound) and verdict.definitive


@dataclass(frozen=True)
class NotAutomorphismOfQuadric:
    defect: Poly


TameVerdict = Union[Tame, NotTameWithinBudget, NotAutomorphismOfQuadric]


@dataclass
class _PowerCache:
    base: Poly
    powers: list[Poly] = field(default_factory=list)

    def __getitem__(self, exponent: int) -> Poly:
        if not self.powers:
            self.powers.append(self.base.ring.one)
        while len(self.powers) <= exponent:
            self.powers.append(self.powers[-1] * self.base)
        return self.powers[exponent]


def _candidates(
    du: WeightVec, dv: WeightVec, shift: tuple[int, int], low: WeightVec, high: WeightVec
) -> list[tuple[int, int]]:
    """Exponents (a, b) whose generic degree ``(a+ea)*du + (b+eb)*dv`` lies in [low, high]."""

    ea, eb = shift
    limit_a = high.total() // du.total() + 1
    limit_b = high.total() // dv.total() + 1
    found = []
    for a in range(limit_a + 1):
        for b in range(limit_b + 1):
            weight = (a + ea) * du + (b + eb) * dv
            if low <= weight <= high:
                found.append((a, b))
    return sorted(found, key=lambda ab: ((ab[0] + ea) * du + (ab[1] + eb) * dv, ab))


def _truncate(p: Poly, floor: WeightVec) -> dict:
    return {m: c for m, c in p.iterterms() if monomial_weight(m) >= floor}


def _solve_layer(
    target: Poly,
    floor: WeightVec,
    candidates: Sequence[tuple[int, int]],
    u_powers: _PowerCache,
    v_powers: _PowerCache,
    shift: tuple[int, int],
) -> list | None:
    """Coefficients cancelling every term of ``target`` of weight >= ``floor``."""

    ea, eb = shift
    columns = [
        _truncate(u_powers[a + ea] * v_powers[b + eb], floor) for a, b in candidates
    ]
    goal = _truncate(target, floor)
    monomials = sorted(set(goal).union(*columns), reverse=True)
    domain = target.ring.domain
    zero = domain.zero
    rows = [[column.get(m, zero) for column in columns] for m in monomials]
    rhs = [-goal.get(m, zero) for m in monomials]
    return solve_linear(rows, rhs, domain)


def _build_p(layout: Family, candidates: Sequence[tuple[int, int]], solution: list, ring_) -> Poly:
    terms = {}
    for (a, b), coeff in zip(candidates, solution):
        if coeff:
            monom = [0, 0, 0, 0]
            monom[layout.u] = a
            monom[layout.v] = b
            terms[tuple(monom)] = coeff
    return ring_.from_dict(terms)


def _equation(layout: Family, f: TameAuto) -> str:
    du, dv, dr = (wdeg(f[i]) for i in (layout.u, layout.v, layout.r))
    return f"(a+1)*{du} + b*{dv} = {dr}"


def _lowers(f: TameAuto, e: ElementaryAuto, current: WeightVec) -> bool:
    return auto_degree(apply_elementary(e, f)) < current


def _try_family(
    f: TameAuto, layout: Family, budget: ReductionBudget
) -> tuple[ElementaryAuto | None, FamilyAttempt]:
    current = auto_degree(f)
    u, v = f[layout.u], f[layout.v]
    du, dv = wdeg(u), wdeg(v)
    dr = wdeg(f[layout.r])
    degenerate = not (u and v and f[layout.r]) or du.total() == 0 or dv.total() == 0
    single = () if degenerate else tuple(_candidates(du, dv, (1, 0), dr, dr))
    data = GenericDegreeData(du, dv, None, None) if degenerate else generic_degree_data(u, v)

    def attempt(layers: int, definitive: bool, reason: str) -> FamilyAttempt:
        return FamilyAttempt(
            family=layout.name,
            equation=_equation(layout, f),
            solutions=single,
            dependent=data.dependent,
            layers=layers,
            definitive=definitive,
            reason=reason,
        )

    if max(dr, wdeg(f[layout.s])) < current:
        return None, attempt(0, True, "the maximal degree sits on an untouched component")
    if degenerate:
        return None, attempt(0, True, "zero or constant components")

    u_powers, v_powers = _PowerCache(u), _PowerCache(v)
    ring_ = f.ring
    layers = 0
    for index, shift in ((layout.r, (1, 0)), (layout.s, (0, 1))):
        target = f[index]
        floor = wdeg(target)
        if not target or (floor < current and index == layout.s):
            continue
        candidates = _candidates(du, dv, shift, floor, floor)
        if candidates and len(candidates) <= budget.support:
            solution = _solve_layer(target, floor, candidates, u_powers, v_powers, shift)
            if solution is not None:
                e = ElementaryAuto(layout.name, _build_p(layout, candidates, solution, ring_))
                if _lowers(f, e, current):
                    return e, attempt(0, True, "reduced")
        if data.relation is None:
            continue
        if multilayer_impossible(data, floor):
            logger.debug("%s: parachute rules out higher layers", layout.name)
            continue
        gap = data.relation.gap(du)
        for m in range(1, budget.depth + 1):
            layers = max(layers, m)
            candidates = _candidates(du, dv, shift, floor, floor + m * gap)
            if len(candidates) > budget.support:
                logger.debug("%s: layer %d exceeds support budget (%d)", layout.name, m, len(candidates))
                return None, attempt(layers, False, "support budget exhausted")
            solution = _solve_layer(target, floor, candidates, u_powers, v_powers, shift)
            logger.debug("%s: layer %d with %d unknowns", layout.name, m, len(candidates))
            if solution is None:
                continue
            e = ElementaryAuto(layout.name, _build_p(layout, candidates, solution, ring_))
            if _lowers(f, e, current):
                return e, attempt(layers, True, "reduced")

    if data.relation is None:
        return None, attempt(0, True, "independent leading parts; single layer is exhaustive")
    if multilayer_impossible(data, dr):
        return None, attempt(0, True, "parachute inequality excludes higher layers")
    return None, attempt(layers, False, "layer budget exhausted")


def search_reduction(
    f: TameAuto, budget: ReductionBudget = DEFAULT_BUDGET
) -> tuple[ElementaryAuto | None, tuple[FamilyAttempt, ...]]:
    """First reduction in the order E24, E13, E12, E34, with the per-family diagnostics."""

    attempts = []
    for name in SEARCH_ORDER:
        e, attempt = _try_family(f, FAMILIES[name], budget)
        logger.debug("%s: %s", name, attempt.reason)
        if e is not None:
            return e, tuple(attempts)
        attempts.append(attempt)
    return None, tuple(attempts)


def find_elementary_reduction(
    f: TameAuto, budget: ReductionBudget = DEFAULT_BUDGET
) -> ElementaryAuto | None:
    return search_reduction(f, budget)[0]


def reduce(f: TameAuto, budget: ReductionBudget = DEFAULT_BUDGET) -> ReductionTrace:
    """Apply reductions until a linear map is reached or the search fails."""

    current = f
    steps: list[ReductionStep] = []
    for _ in range(budget.max_steps):
        if current.is_linear():
            matrix = as_matrix(current)
            if is_orthogonal(matrix) == OrthVerdict.NO:
                return ReductionTrace(f, tuple(steps), NoReductionFound((), "linear but not in O4"))
            return ReductionTrace(f, tuple(steps), Linear(matrix))
        e, attempts = search_reduction(current, budget)
        if e is None:
            return ReductionTrace(f, tuple(steps), NoReductionFound(attempts))
        current = apply_elementary(e, current)
        steps.append(ReductionStep(e, auto_degree(current)))
        logger.debug("step %d: %s -> %s", len(steps), e.family, steps[-1].degree)
    return ReductionTrace(f, tuple(steps), NoReductionFound((), "step budget exhausted"))


def is_tame(f: TameAuto, budget: ReductionBudget = DEFAULT_BUDGET) -> TameVerdict:
    if not f.preserves_quadric():
        f1, f2, f3, f4 = f.components
        return NotAutomorphismOfQuadric(f1 * f4 - f2 * f3 - quadric(f.ring))
    trace = reduce(f, budget)
    if not trace.linear:
        return NotTameWithinBudget(trace)
    word = trace.word()
    if evaluate_word(word, f.ring) != f:  # pragma: no cover - certificate re-check
        raise AssertionError("certified word does not evaluate to the input")
    return Tame(word, trace)


def auto_inverse(f: TameAuto, budget: ReductionBudget = DEFAULT_BUDGET) -> TameAuto:
    """Inverse of a tame automorphism through its certified word."""

    verdict = is_tame(f, budget)
    if not isinstance(verdict, Tame):
        raise TameError("no tame certificate within budget; cannot invert")
    return evaluate_word(invert_word(verdict.word), f.ring)


def batch_reduce(
    autos: Iterable[TameAuto],
    budget: ReductionBudget = DEFAULT_BUDGET,
    *,
    show_progress: bool = False,
) -> list[ReductionTrace]:
    autos = list(autos)
    progress = None
    if show_progress:
        progress = tqdm(total=len(autos), desc="Reducing", unit="auto")
    traces = []
    try:
        for auto in autos:
            traces.append(reduce(auto, budget))
            if progress:
                progress.update()
    finally:
        if progress:
            progress.close()
    logger.info(
        "reduced %d automorphisms, %d linear", len(traces), sum(t.linear for t in traces)
    )
    return traces


def trace_payload(trace: ReductionTrace) -> dict:
    payload: dict = {
        "start": encode_auto(trace.start),
        "start_degree": auto_degree(trace.start).to_json(),
        "steps": [
            {
                "family": step.elementary.family,
                "P": encode_poly(step.elementary.p),
                "degree": step.degree.to_json(),
            }
            for step in trace.steps
        ],
    }
    verdict = trace.verdict
    if isinstance(verdict, Linear):
        payload["verdict"] = {"linear": encode_matrix(verdict.matrix.rows, verdict.matrix.ring)}
        payload["word"] = encode_word(trace.word())["word"]
    else:
        payload["verdict"] = {
            "no_reduction_found": {
                "reason": verdict.reason,
                "definitive": verdict.definitive,
                "families": [a.to_json() for a in verdict.attempts],
            }
        }
    return payload


def verdict_payload(verdict: TameVerdict) -> dict:
    if isinstance(verdict, Tame):
        return {"verdict": "Tame", "word": encode_word(verdict.word)["word"]}
    if isinstance(verdict, NotTameWithinBudget):
        return {
            "verdict": "NotTameWithinBudget",
            "definitive": verdict.definitive,
            "trace": trace_payload(verdict.trace),
        }
    return {"verdict": "NotAutomorphismOfQuadric", "defect": encode_poly(verdict.defect)}


__all__ = [
    "DEFAULT_BUDGET",
    "FamilyAttempt",
    "Linear",
    "NoReductionFound",
    "NotAutomorphismOfQuadric",
    "NotTameWithinBudget",
    "ReductionBudget",
    "ReductionStep",
    "ReductionTrace",
    "Tame",
    "TameVerdict",
    "auto_inverse",
    "batch_reduce",
    "find_elementary_reduction",
    "is_tame",
    "reduce",
    "search_reduction",
    "trace_payload",
    "verdict_payload",
]
