"""Structured-text (JSON) encoding of coefficients, polynomials and matrices.

A polynomial is a list of terms ``[[i, j, k, l], "num/den"]``; over Q(i) a term carries two
coefficient strings, real part then imaginary part. Terms are emitted in grlex order, highest
first, so output is deterministic. Parsing raises :class:`PayloadError` on malformed input.
"""

from __future__ import annotations

from typing import Any, Sequence

from sympy import I, Rational, Symbol
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.polyerrors import CoercionFailed
from sympy.polys.rings import PolyRing

from tame_sl2.errors import PayloadError, TameError
from tame_sl2.orth import Mat4
from tame_sl2.polyring import RING_Q, RING_QI, Poly, field_of, ring_for
from tame_sl2.tame import ElementaryAuto, TameAuto, TameWord

_VARIABLES = ("x1", "x2", "x3", "x4")
_TRANSFORMATIONS = standard_transformations + (convert_xor,)


def format_rational(value) -> str:
    numerator, denominator = int(value.numerator), int(value.denominator)
    return str(numerator) if denominator == 1 else f"{numerator}/{denominator}"


def parse_rational(text: Any):
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise PayloadError(f"coefficient must be a string or integer, got {text!r}")
    try:
        return QQ.from_sympy(Rational(str(text).strip()))
    except (TypeError, ValueError, ZeroDivisionError, CoercionFailed) as exc:
        raise PayloadError(f"malformed coefficient: {text!r}") from exc


def encode_coeff(value, ring_: PolyRing = RING_Q) -> str | list[str]:
    if ring_.domain == QQ_I:
        return [format_rational(value.x), format_rational(value.y)]
    return format_rational(value)


def decode_coeff(payload: Any, ring_: PolyRing = RING_Q):
    if isinstance(payload, list):
        if len(payload) != 2:
            raise PayloadError(f"a Gaussian coefficient has two parts, got {payload!r}")
        if ring_.domain != QQ_I:
            raise PayloadError("complex coefficient found while decoding over Q")
        return QQ_I(parse_rational(payload[0]), parse_rational(payload[1]))
    return ring_.domain.convert(parse_rational(payload))


def payload_field(payload: Any) -> str:
    """Guess the coefficient field of a decoded JSON payload: ``qi`` if any term is complex."""

    stack = [payload]
    while stack:
        item = stack.pop()
        if isinstance(item, dict):
            if item.get("field") == "qi":
                return "qi"
            stack.extend(item.values())
        elif isinstance(item, list):
            if (
                len(item) == 3
                and isinstance(item[0], list)
                and all(isinstance(e, int) for e in item[0])
            ):
                return "qi"
            if len(item) == 2 and all(isinstance(e, str) for e in item):
                return "qi"
            stack.extend(item)
    return "q"


def encode_poly(p: Poly) -> list[list]:
    terms = []
    for monom, coeff in p.terms():
        coeff_text = encode_coeff(coeff, p.ring)
        if isinstance(coeff_text, list):
            terms.append([list(monom), *coeff_text])
        else:
            terms.append([list(monom), coeff_text])
    return terms


def decode_poly(payload: Any, ring_: PolyRing = RING_Q) -> Poly:
    if isinstance(payload, str):
        return parse_pretty(payload, ring_)
    if not isinstance(payload, list):
        raise PayloadError(f"a polynomial is a list of terms, got {type(payload).__name__}")
    terms: dict = {}
    for term in payload:
        if not isinstance(term, list) or len(term) not in (2, 3):
            raise PayloadError(f"malformed term: {term!r}")
        exponent = term[0]
        if (
            not isinstance(exponent, list)
            or len(exponent) != 4
            or not all(isinstance(e, int) and not isinstance(e, bool) and e >= 0 for e in exponent)
        ):
            raise PayloadError(f"malformed exponent: {exponent!r}")
        if len(term) == 3:
            coeff = decode_coeff([term[1], term[2]], ring_)
        else:
            coeff = decode_coeff(term[1], ring_)
        key = tuple(exponent)
        terms[key] = terms.get(key, ring_.domain.zero) + coeff
    return ring_.from_dict(terms)


def encode_matrix(rows: Sequence[Sequence], ring_: PolyRing = RING_Q) -> list[list]:
    return [[encode_coeff(value, ring_) for value in row] for row in rows]


def decode_matrix(payload: Any, ring_: PolyRing = RING_Q) -> list[list]:
    if (
        not isinstance(payload, list)
        or len(payload) != 4
        or not all(isinstance(row, list) and len(row) == 4 for row in payload)
    ):
        raise PayloadError("a matrix is a 4x4 array of coefficients")
    return [[decode_coeff(value, ring_) for value in row] for row in payload]


def parse_pretty(text: str, ring_: PolyRing = RING_Q) -> Poly:
    """Parse ``x1^2*x3 - 3/2*x4`` style text (``I`` is the imaginary unit over Q(i))."""

    local = {name: Symbol(name) for name in _VARIABLES}
    local["I"] = I
    try:
        expr = parse_expr(text, local_dict=local, transformations=_TRANSFORMATIONS)
        return ring_.from_expr(expr)
    except Exception as exc:
        raise PayloadError(f"cannot parse polynomial {text!r}: {exc}") from exc


def _pretty_coeff(value, ring_: PolyRing) -> str:
    if ring_.domain == QQ_I:
        re, im = value.x, value.y
        if not im:
            return format_rational(re)
        if not re:
            return f"{format_rational(im)}*I"
        return f"({format_rational(re)} + {format_rational(im)}*I)"
    return format_rational(value)


def format_pretty(p: Poly) -> str:
    """Human-readable rendering, diagnostics only."""

    if not p:
        return "0"
    pieces: list[str] = []
    for monom, coeff in p.terms():
        factors = []
        for name, exponent in zip(_VARIABLES, monom):
            if exponent == 1:
                factors.append(name)
            elif exponent > 1:
                factors.append(f"{name}^{exponent}")
        negative = p.ring.domain != QQ_I and coeff < 0
        magnitude = -coeff if negative else coeff
        text = _pretty_coeff(magnitude, p.ring)
        if factors:
            body = "*".join(factors) if text == "1" else f"{text}*" + "*".join(factors)
        else:
            body = text
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(pieces)


def field_ring(payload: Any, field: str | None = None) -> PolyRing:
    """Ring to decode ``payload`` into: explicit ``field`` wins, otherwise the payload decides."""

    if field is not None:
        return ring_for(field)  # type: ignore[arg-type]
    return RING_QI if payload_field(payload) == "qi" else RING_Q


def encode_auto(f: TameAuto) -> dict:
    payload: dict = {"components": [encode_poly(c) for c in f]}
    if field_of(f.ring) == "qi":
        payload["field"] = "qi"
    return payload


def decode_auto(payload: Any, ring_: PolyRing | None = None) -> TameAuto:
    if not isinstance(payload, dict) or "components" not in payload:
        raise PayloadError("an automorphism is an object with a \"components\" list")
    components = payload["components"]
    if not isinstance(components, list) or len(components) != 4:
        raise PayloadError("an automorphism has exactly four components")
    ring_ = ring_ or field_ring(payload)
    return TameAuto(tuple(decode_poly(c, ring_) for c in components))  # type: ignore[arg-type]


def encode_word(word: TameWord) -> dict:
    factors = []
    for factor in word:
        if isinstance(factor, ElementaryAuto):
            factors.append({"elem": {"family": factor.family, "P": encode_poly(factor.p)}})
        else:
            factors.append({"orth": encode_matrix(factor.rows, factor.ring)})
    payload: dict = {"word": factors}
    if field_of(word.ring()) == "qi":
        payload["field"] = "qi"
    return payload


def decode_word(payload: Any, ring_: PolyRing | None = None) -> TameWord:
    if not isinstance(payload, dict) or not isinstance(payload.get("word"), list):
        raise PayloadError("a word is an object with a \"word\" list")
    ring_ = ring_ or field_ring(payload)
    factors = []
    for item in payload["word"]:
        if isinstance(item, dict) and "elem" in item:
            elem = item["elem"]
            if not isinstance(elem, dict) or "family" not in elem or "P" not in elem:
                raise PayloadError(f"malformed elementary factor: {elem!r}")
            try:
                factors.append(ElementaryAuto(elem["family"], decode_poly(elem["P"], ring_)))
            except TameError as exc:
                raise PayloadError(str(exc)) from exc
        elif isinstance(item, dict) and "orth" in item:
            factors.append(Mat4.build(decode_matrix(item["orth"], ring_), ring_))
        else:
            raise PayloadError(f"unknown word factor: {item!r}")
    return TameWord(tuple(factors))


__all__ = [
    "decode_auto",
    "decode_coeff",
    "decode_matrix",
    "decode_poly",
    "decode_word",
    "encode_auto",
    "encode_coeff",
    "encode_matrix",
    "encode_poly",
    "encode_word",
    "field_ring",
    "format_pretty",
    "format_rational",
    "parse_pretty",
    "parse_rational",
    "payload_field",
]
