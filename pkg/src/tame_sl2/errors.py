"""Exception types shared across the toolkit."""

from __future__ import annotations

from typing import Any


class TameError(ValueError):
    """An operation was called outside its domain (e.g. a quadruple that does not preserve q)."""

    def __init__(self, message: str, *, witness: Any = None) -> None:
        super().__init__(message)
        self.witness = witness


class PayloadError(ValueError):
    """Structured-text input could not be decoded."""


__all__ = ["PayloadError", "TameError"]
