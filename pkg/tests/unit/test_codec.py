"""Tests for the JSON and pretty-text encodings."""

import pytest
from sympy.polys.domains import QQ

from lib.codec import (
    decode_coeff,
    decode_poly,
    decode_word,
    encode_auto,
    encode_poly,
    format_pretty,
    parse_pretty,
    parse_rational,
)
from tame_sl2.errors import PayloadError
from tame_sl2.polyring import RING_Q, RING_QI
from tame_sl2.tame import ElementaryAuto, TameAuto, TameWord

X1, X2, X3, X4 = RING_Q.gens


def test_parse_pretty_reads_powers_and_fractions() -> None:
    assert parse_pretty("x1^2*x3 - 3/2*x4") == X1**2 * X3 - X4.mul_ground(QQ(3, 2))


def test_format_pretty_is_readable() -> None:
    assert format_pretty(X1**2 - X4) == "x1^2 - x4"
    assert format_pretty(RING_Q.zero) == "0"


def test_encode_poly_uses_grlex_term_order() -> None:
    assert encode_poly(X1 - 2 * X4) == [[[1, 0, 0, 0], "1"], [[0, 0, 0, 1], "-2"]]


def test_decode_poly_accepts_terms_and_text() -> None:
    assert decode_poly([[[0, 2, 0, 0], "1/3"]]) == X2**2 * QQ(1, 3)
    assert decode_poly("x2 + x3") == X2 + X3


@pytest.mark.parametrize(
    "payload",
    [
        [[[1, 0, 0], "1"]],
        [[[1, 0, 0, 0], "abc"]],
        [[[1, 0, 0, -1], "1"]],
        {"x1": 1},
    ],
)
def test_decode_poly_rejects_malformed_payloads(payload) -> None:
    with pytest.raises(PayloadError):
        decode_poly(payload)


def test_parse_rational_reduces_and_rejects_bad_coefficients() -> None:
    assert parse_rational("3/6") == QQ(1, 2)
    assert parse_rational(" -4 ") == QQ(-4)
    assert parse_rational(7) == QQ(7)
    for text in ("1/0", "1/2/3", "x1", ""):
        with pytest.raises(PayloadError):
            parse_rational(text)


def test_gaussian_coefficient_needs_gaussian_ring() -> None:
    with pytest.raises(PayloadError):
        decode_coeff(["1", "2"], RING_Q)
    value = decode_coeff(["1", "2"], RING_QI)
    assert (value.x, value.y) == (1, 2)


def test_encode_auto_marks_gaussian_field() -> None:
    identity = TameAuto.identity(RING_QI)
    assert encode_auto(identity)["field"] == "qi"
    assert "field" not in encode_auto(TameAuto.identity())


def test_decode_word_reads_elementary_and_matrix_factors() -> None:
    payload = {
        "word": [
            {"elem": {"family": "E24", "P": "x1*x3"}},
            {"orth": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]},
        ]
    }
    word = decode_word(payload)
    assert isinstance(word, TameWord)
    assert word.factors[0] == ElementaryAuto("E24", X1 * X3)
    assert len(word) == 2


def test_decode_word_rejects_unknown_family_and_bad_matrix() -> None:
    with pytest.raises(PayloadError):
        decode_word({"word": [{"elem": {"family": "E99", "P": "x1"}}]})
    with pytest.raises(PayloadError):
        decode_word({"word": [{"orth": [[1, 0], [0, 1]]}]})
    with pytest.raises(PayloadError):
        decode_word({"word": [{"elem": {"family": "E24", "P": "x2"}}]})
