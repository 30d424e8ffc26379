"""Hiccup sequences from their recursive definition.

A ``(j, x, y, z)``-hiccup sequence starts at ``a(1) = x`` and for ``n >= 2``
adds ``y`` when ``n - j`` already occurs among ``a(1..n-1)`` and ``z``
otherwise.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import (
    EmptyRequestError,
    HorizonError,
    NotHiccupError,
    ParameterError,
)

__all__ = [
    "HiccupParams",
    "DegenerateWarning",
    "generate_hiccup",
    "characteristic_word",
    "reduce_j_to_zero",
    "lift_from_zero_x",
    "LiftRule",
    "infer_params",
]


class DegenerateWarning(UserWarning):
    """Raised (as a warning) for ``x = z = 1, j = 0``, which yields ``a(n) = n``."""


@dataclass(frozen=True)
class HiccupParams:
    j: int
    x: int
    y: int
    z: int

    def __post_init__(self):
        for name in ("j", "x", "y", "z"):
            if not isinstance(getattr(self, name), int):
                raise ParameterError(f"{name} must be an integer")
        problem = self.violation()
        if problem:
            raise ParameterError(problem)

    def violation(self) -> str | None:
        j, x, y, z = self.j, self.x, self.y, self.z
        if j < 0:
            return "j must be >= 0"
        if x < 0:
            return "x must be >= 0"
        if y < 1 or z < 1:
            return "gaps y and z must be >= 1"
        if y == z:
            return "y must differ from z"
        if x == 0 and not (j == 0 and y > 1 and z > 1):
            return "x = 0 requires j = 0 and y, z > 1"
        return None

    @property
    def degenerate(self) -> bool:
        return self.j == 0 and self.x == 1 and self.z == 1

    @classmethod
    def parse(cls, text: str) -> "HiccupParams":
        parts = [p.strip() for p in text.replace("(", "").replace(")", "").split(",")]
        if len(parts) != 4:
            raise ParameterError(f"expected four comma-separated integers, got {text!r}")
        try:
            return cls(*(int(p) for p in parts))
        except ValueError as exc:
            if isinstance(exc, ParameterError):
                raise
            raise ParameterError(f"non-integer parameter in {text!r}") from None

    def __iter__(self):
        return iter((self.j, self.x, self.y, self.z))

    def __str__(self):
        return f"({self.j},{self.x},{self.y},{self.z})"


def generate_hiccup(params: HiccupParams, count: int) -> list[int]:
    """Return ``a(1), ..., a(count)``."""
    if count < 1:
        raise EmptyRequestError("count must be >= 1")
    j, x, y, z = params
    if params.degenerate:
        warnings.warn(f"{params} is degenerate: a(n) = n", DegenerateWarning, stacklevel=2)
    # all terms are <= x + count*max(y, z); a bytearray is a cheap set
    seen = bytearray(x + count * max(y, z) + 2)
    terms = [x]
    seen[x] = 1
    last = x
    for n in range(2, count + 1):
        m = n - j
        last += y if m > 0 and m < len(seen) and seen[m] else z
        seen[last] = 1
        terms.append(last)
    return terms


def characteristic_word(seq: Sequence[int], length: int) -> str:
    """Binary word whose position ``p`` (1-indexed) is ``1`` iff ``p`` is in ``seq``.

    ``seq`` must cover the whole window: its last term has to be at least
    ``length``, otherwise later members could still be missing.
    """
    if length < 1:
        raise EmptyRequestError("length must be >= 1")
    if not seq or seq[-1] < length:
        horizon = seq[-1] if seq else 0
        raise HorizonError(f"word of length {length} needs terms up to {length}; generated horizon is {horizon}")
    word = bytearray(b"0" * length)
    for p in seq:
        if p > length:
            break
        if p >= 1:
            word[p - 1] = ord("1")
    return word.decode()


def reduce_j_to_zero(params: HiccupParams) -> tuple[HiccupParams, int]:
    """``(j, x, y, z) -> (0, x + j, y, z)``; the new sequence is the old one plus ``j``."""
    if params.j == 0:
        raise ParameterError("j is already 0; nothing to reduce")
    return HiccupParams(0, params.x + params.j, params.y, params.z), params.j


class LiftRule(NamedTuple):
    """``a(1) = first`` and ``a(n + 1) = b(n) + offset``."""

    first: int = 0
    offset: int = 1

    def apply(self, b_terms: Sequence[int]) -> list[int]:
        return [self.first] + [t + self.offset for t in b_terms]


def lift_from_zero_x(params: HiccupParams) -> tuple[HiccupParams, LiftRule]:
    """Relate ``(0, 0, y, z)`` to ``(0, z - 1, y, z)``."""
    j, x, y, z = params
    if j != 0 or x != 0:
        raise ParameterError("lift applies to (0, 0, y, z) only")
    if y <= 1 or z <= 1:
        raise ParameterError("lift requires y, z > 1")
    return HiccupParams(0, z - 1, y, z), LiftRule(first=0, offset=1)


def infer_params(prefix: Sequence[int], j_max: int = 2) -> list[HiccupParams]:
    """All hiccup parameters with ``j <= j_max`` that reproduce ``prefix`` exactly."""
    prefix = list(prefix)
    if len(prefix) < 4:
        raise ParameterError("need at least four terms")
    if any(b <= a for a, b in zip(prefix, prefix[1:])):
        raise ParameterError("prefix must be strictly increasing")
    gaps = sorted({b - a for a, b in zip(prefix, prefix[1:])})
    if len(gaps) > 2:
        raise NotHiccupError(f"{len(gaps)} distinct differences {gaps}; hiccup sequences have at most two")
    if len(gaps) < 2:
        # the unused gap is not determined by the prefix
        return []
    found = []
    x = prefix[0]
    for j in range(j_max + 1):
        for y, z in (gaps, gaps[::-1]):
            try:
                cand = HiccupParams(j, x, y, z)
            except ParameterError:
                continue
            if cand.degenerate:
                continue
            if generate_hiccup(cand, len(prefix)) == prefix:
                found.append(cand)
    return found
