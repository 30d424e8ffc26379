"""Sturmian morphisms, mechanical words and Beatty sequences.

Mechanical words are indexed from position 1: letter ``p`` of the word with
parameters ``(alpha, beta)`` is ``R(alpha*p + beta) - R(alpha*(p-1) + beta)``
where ``R`` is floor or ceiling.  The intercept is kept in ``[0, 1)`` for the
floor variant and in ``(0, 1]`` for the ceiling variant; with that
normalisation every generator acts on ``(alpha, beta)`` by an explicit map and
the positions of ``1`` are indexed by ``m = 1, 2, ...``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    NoFixedPointError,
    NotApplicableError,
    NotSturmianError,
    ParameterError,
)
from .morphisms import Morphism, adjacency_matrix, fixed_point, is_primitive
from .quadratic import QuadraticNumber, floor_linear, parse_linear, sqrt
from .sequences import HiccupParams

__all__ = [
    "GENERATORS",
    "GeneratorWord",
    "MechanicalParams",
    "BeattyParams",
    "generator_morphism",
    "compose",
    "sturmian_decomposition",
    "decompose_morphism",
    "transform",
    "transformation_fixed_point",
    "mechanical_word",
    "beatty_from_mechanical",
    "beatty_term",
    "beatty_terms",
    "hiccup_beatty",
    "format_beatty",
    "parse_beatty",
]

_BASE = {
    "E": Morphism({"0": "1", "1": "0"}),
    "L": Morphism({"0": "01", "1": "0"}),
    "R": Morphism({"0": "10", "1": "0"}),
}
GENERATORS: dict[str, Morphism] = {
    **_BASE,
    "G": _BASE["L"] @ _BASE["E"],
    "Gt": _BASE["R"] @ _BASE["E"],
}
GENERATORS["H"] = _BASE["E"] @ GENERATORS["Gt"]

_ALIASES = {"G~": "Gt", "G̃": "Gt", "~G": "Gt"}


def _name(g: str) -> str:
    g = _ALIASES.get(g, g)
    if g not in GENERATORS:
        raise ParameterError(f"unknown generator {g!r}; expected one of {sorted(GENERATORS)}")
    return g


def generator_morphism(g: str) -> Morphism:
    return GENERATORS[_name(g)]


@dataclass(frozen=True)
class GeneratorWord:
    """Product ``g1 ∘ g2 ∘ ... ∘ gk`` of Sturmian generators.

    ``seed`` optionally names the fixed point of the composite that is meant.
    """

    letters: tuple[str, ...]
    seed: str | None = None

    def __post_init__(self):
        letters = tuple(_name(g) for g in self.letters)
        if not letters:
            raise ParameterError("generator word must be nonempty")
        object.__setattr__(self, "letters", letters)

    def __iter__(self):
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        if not self.letters:
            return ""
        parts, prev, k = [], self.letters[0], 0
        for g in self.letters + ("",):
            if g == prev:
                k += 1
                continue
            parts.append(prev if k == 1 else f"{prev}^{k}")
            prev, k = g, 1
        return "∘".join(parts)


def compose(gs: Iterable[str] | GeneratorWord) -> Morphism:
    """``g1 ∘ g2 ∘ ... ∘ gk``: the rightmost generator is applied first."""
    names = list(gs.letters if isinstance(gs, GeneratorWord) else gs)
    if not names:
        raise ParameterError("empty generator word")
    out = generator_morphism(names[-1])
    for g in reversed(names[:-1]):
        out = generator_morphism(g) @ out
    return out


def sturmian_decomposition(params: HiccupParams) -> GeneratorWord:
    j, x, y, z = params
    if j != 0 or x < 1 or x > z or abs(y - z) != 1:
        raise NotSturmianError(f"{params}: need j = 0, 1 <= x <= z and |y - z| = 1")
    if y == z + 1:
        if x == 1:
            # no fixed point of the composite encodes the sequence; it is
            # a(1) = 1 followed by the terms of (0, z, y, z) plus one
            raise NotSturmianError(f"{params}: x = 1, y = z + 1 has no direct decomposition; use (0,{z},{y},{z})")
        return GeneratorWord(("G",) * (x - 1) + ("Gt",) * (z - x) + ("H",), seed="0")
    if x >= 2:
        return GeneratorWord(("G",) * (x - 2) + ("Gt",) * (z - x) + ("H", "E"), seed="0")
    if z < 2:
        raise NotSturmianError(f"{params}: x = 1, y = z - 1 requires z > 1")
    # same morphism as (0, 2, z-1, z), read from the other fixed point
    return GeneratorWord(("Gt",) * (z - 2) + ("H", "E"), seed="10")


# ---------------------------------------------------------------------------
# parameter maps

def decompose_morphism(m: Morphism, max_length: int = 16) -> GeneratorWord:
    """Shortest product of ``E``, ``G``, ``Gt`` equal to ``m`` (breadth first).

    Image lengths only grow under composition, so any partial product whose
    images exceed those of ``m`` is pruned.
    """
    target = (m("0"), m("1"))
    cap = max(map(len, target))
    layer = [((), ("0", "1"))]
    seen = {("0", "1")}
    for _ in range(max_length):
        nxt = []
        for word, (i0, i1) in layer:
            for g in ("E", "G", "Gt"):
                gm = GENERATORS[g]
                img = (gm(i0), gm(i1))
                if img == target:
                    return GeneratorWord((g,) + word)
                if max(map(len, img)) <= cap and img not in seen:
                    seen.add(img)
                    nxt.append(((g,) + word, img))
        layer = nxt
    raise NotSturmianError(f"{m} is not a product of at most {max_length} Sturmian generators")


def transform(g: str, alpha, beta) -> tuple[QuadraticNumber, QuadraticNumber]:
    """Parameters of ``g(s)`` for the mechanical word ``s`` with ``(alpha, beta)``.

    ``E`` also swaps floor and ceiling; the other generators keep the rounding.
    """
    a, b = QuadraticNumber.coerce(alpha), QuadraticNumber.coerce(beta)
    g = _name(g)
    if g == "E":
        return 1 - a, 1 - b
    if g == "G":
        return a / (1 + a), b / (1 + a)
    if g == "Gt":
        return a / (1 + a), (b + a) / (1 + a)
    if g == "L":
        return (1 - a) / (2 - a), (1 - b) / (2 - a)
    if g == "R":
        return (1 - a) / (2 - a), (2 - a - b) / (2 - a)
    if g == "H":
        return 1 / (1 + a), (1 - b) / (1 + a)
    raise AssertionError(g)


def _swaps(g: str) -> bool:
    return _name(g) in ("E", "L", "R", "H")


def composite_transform(gs: GeneratorWord, alpha, beta, rounding: str):
    a, b = alpha, beta
    for g in reversed(gs.letters):
        a, b = transform(g, a, b)
        if _swaps(g):
            rounding = "ceil" if rounding == "floor" else "floor"
    return a, b, rounding


@dataclass(frozen=True)
class MechanicalParams:
    alpha: QuadraticNumber
    beta: QuadraticNumber
    rounding: str = "floor"

    def __post_init__(self):
        object.__setattr__(self, "alpha", QuadraticNumber.coerce(self.alpha))
        object.__setattr__(self, "beta", QuadraticNumber.coerce(self.beta))
        if self.rounding not in ("floor", "ceil"):
            raise ParameterError("rounding is 'floor' or 'ceil'")
        if self.alpha.is_rational:
            raise ParameterError("alpha must be irrational")
        if not (0 < self.alpha < 1):
            raise ParameterError("alpha must lie in (0, 1)")


def _perron_density(m: Morphism) -> QuadraticNumber:
    """Frequency of ``1`` in fixed points of a primitive binary morphism."""
    M = adjacency_matrix(m, restrict_to_01=True)
    a, b, c, d = (int(v) for v in M.ravel())
    lam = (QuadraticNumber(a + d) + sqrt((a - d) ** 2 + 4 * b * c)) / 2
    # right eigenvector (f0, f1) of M: a*f0 + b*f1 = lam*f0
    ratio = (lam - a) / b
    return ratio / (1 + ratio)


def transformation_fixed_point(gs: GeneratorWord | Sequence[str], check_length: int = 256) -> MechanicalParams:
    """Exact ``(alpha, beta)`` of the fixed point of a primitive Sturmian product."""
    if not isinstance(gs, GeneratorWord):
        gs = GeneratorWord(tuple(gs))
    m = compose(gs)
    if not is_primitive(m):
        raise NoFixedPointError(f"{gs} is not primitive; no isolated fixed point")
    alpha = _perron_density(m)
    # beta map is affine: beta -> A*beta + B
    A, B = QuadraticNumber(1), QuadraticNumber(0)
    a = alpha
    for g in reversed(gs.letters):
        a1, b0 = transform(g, a, 0)
        _, b1 = transform(g, a, 1)
        slope = b1 - b0
        A, B = slope * A, slope * B + b0
        a = a1
    if a != alpha:
        raise NoFixedPointError(f"density {alpha} is not fixed by the composite map")
    beta = B / (1 - A)
    seed = gs.seed or next(iter(m.prolongable_letters()), None)
    if seed is None:
        raise NoFixedPointError(f"{m} has no prolongable letter")
    target = fixed_point(m, seed, check_length)
    for rounding in ("floor", "ceil"):
        if rounding == "floor" and beta == 1 or rounding == "ceil" and beta == 0:
            continue
        if not (0 <= beta <= 1):
            break
        mp = MechanicalParams(alpha, beta, rounding)
        if mechanical_word(mp, check_length) == target:
            return mp
    raise NoFixedPointError(f"fixed point of {gs} from {seed!r} is not mechanical with alpha={alpha}, beta={beta}")


def mechanical_word(mp: MechanicalParams, length: int) -> str:
    ns = np.arange(0, length + 1, dtype=np.int64)
    if mp.rounding == "floor":
        v = floor_linear(mp.alpha, mp.beta, ns)
    else:
        v = -floor_linear(-mp.alpha, -mp.beta, ns)
    diffs = np.diff(np.asarray(v, dtype=np.int64))
    return "".join("1" if t else "0" for t in diffs.tolist())


# ---------------------------------------------------------------------------
# Beatty sequences

@dataclass(frozen=True)
class BeattyParams:
    """``a(n) = R(slope*n + intercept)`` for ``n >= first_index``."""

    slope: QuadraticNumber
    intercept: QuadraticNumber
    rounding: str = "floor"
    first_index: int = 1

    def __post_init__(self):
        object.__setattr__(self, "slope", QuadraticNumber.coerce(self.slope))
        object.__setattr__(self, "intercept", QuadraticNumber.coerce(self.intercept))
        if self.rounding not in ("floor", "ceil"):
            raise ParameterError("rounding is 'floor' or 'ceil'")
        if self.slope.is_rational:
            raise ParameterError("rational slopes are not supported")

    def shifted(self, index_shift: int = 0, value_shift: int = 0) -> "BeattyParams":
        """``b(n) = a(n - index_shift) + value_shift``."""
        return BeattyParams(
            self.slope,
            self.intercept - self.slope * index_shift + value_shift,
            self.rounding,
            self.first_index + index_shift,
        )

    def _hits_integer(self) -> bool:
        s, c = self.slope, self.intercept
        if not c.is_rational and c.d != s.d:
            return False
        from fractions import Fraction

        n0 = -Fraction(c.q, c.r) / Fraction(s.q, s.r)
        if n0.denominator != 1 or n0 < self.first_index:
            return False
        v = s * int(n0) + c
        return v.is_rational and v.as_fraction().denominator == 1

    def to_floor(self) -> "BeattyParams":
        """Equivalent floor form; ``ceil(t) = floor(t) + 1`` away from integers."""
        if self.rounding == "floor":
            return self
        if self._hits_integer():
            raise ParameterError("slope*n + intercept is an integer for some n; no floor form")
        return BeattyParams(self.slope, self.intercept + 1, "floor", self.first_index)

    def to_ceil(self) -> "BeattyParams":
        if self.rounding == "ceil":
            return self
        if self._hits_integer():
            raise ParameterError("slope*n + intercept is an integer for some n; no ceiling form")
        return BeattyParams(self.slope, self.intercept - 1, "ceil", self.first_index)


def beatty_from_mechanical(mp: MechanicalParams) -> BeattyParams:
    """Beatty form of the positions of ``1`` in the mechanical word.

    Ceiling words give ``floor(n/alpha + 1 - beta/alpha)``; floor words give
    ``ceil(n/alpha - beta/alpha)``; in both cases ``n = 1, 2, ...``.
    """
    a, b = mp.alpha, mp.beta
    if mp.rounding == "ceil":
        if not (0 < b <= 1):
            raise ParameterError("ceiling mechanical words need beta in (0, 1]")
        return BeattyParams(1 / a, 1 - b / a, "floor")
    if not (0 <= b < 1):
        raise ParameterError("floor mechanical words need beta in [0, 1)")
    return BeattyParams(1 / a, -b / a, "ceil")


def beatty_terms(bp: BeattyParams, count: int, start: int | None = None) -> np.ndarray:
    """Values at ``n = start, ..., start + count - 1`` (default ``first_index``)."""
    start = bp.first_index if start is None else start
    ns = np.arange(start, start + count, dtype=np.int64)
    if bp.rounding == "floor":
        return floor_linear(bp.slope, bp.intercept, ns)
    return -floor_linear(-bp.slope, -bp.intercept, ns)


def beatty_term(bp: BeattyParams, n: int) -> int:
    t = bp.slope * n + bp.intercept
    return t.floor() if bp.rounding == "floor" else t.ceil()


def _term(x: QuadraticNumber) -> str:
    text = str(x)
    if x.q and x.p and x.r == 1:  # "1+sqrt(3)" needs brackets next to an operator
        return f"({text})"
    return text


def format_beatty(bp: BeattyParams) -> str:
    """Text form such as ``floor((1+sqrt(2))*n + 1 - 3*sqrt(2)/2)``."""
    body = f"{_term(bp.slope)}*n"
    c = bp.intercept
    rational = QuadraticNumber(c.p, 0, 1, c.r)
    irrational = c - rational
    for part in (rational, irrational):
        if part:
            body += f" - {-part}" if part < 0 else f" + {part}"
    return f"{bp.rounding}({body})"


def parse_beatty(text: str, first_index: int = 1) -> BeattyParams:
    text = text.strip()
    for rounding in ("floor", "ceil"):
        if text.startswith(rounding + "(") and text.endswith(")"):
            a, b = parse_linear(text[len(rounding) + 1:-1], "n")
            return BeattyParams(a, b, rounding, first_index)
    raise ParameterError(f"expected floor(...) or ceil(...), got {text!r}")


# ---------------------------------------------------------------------------
# hiccup sequences as Beatty sequences

def hiccup_beatty(params: HiccupParams) -> BeattyParams:
    """Beatty form, in floor form whenever ``slope*n + intercept`` avoids integers."""
    bp = _hiccup_beatty(params)
    try:
        return bp.to_floor()
    except ParameterError:
        return bp


def _hiccup_beatty(params: HiccupParams) -> BeattyParams:
    """Beatty form of a hiccup sequence with ``x <= z`` and ``|y - z| = 1``.

    The hypothesis is tested on the given parameters.  ``j > 0`` is reduced
    first when the reduced ``x`` stays at most ``z``; for ``j = x = 1``
    otherwise the pure ``j = 1`` morphism is decomposed directly.  For ``x = 1, y = z + 1`` and for ``x = 0`` the
    sequence is ``a(1)`` followed by ``b(n - 1) + 1`` for a sequence ``b``
    with larger ``x``; ``first_index`` is 2 when ``a(1)`` does not fit the
    resulting formula.
    """
    j, x, y, z = params
    if x > z or abs(y - z) != 1:
        raise NotApplicableError(f"{params}: Beatty form needs x <= z and |y - z| = 1")
    if y == 1:
        # eventually a(n) = n + const: rational density
        raise NotApplicableError(f"{params}: y = 1 gives an eventually arithmetic sequence")
    if j > 0 and x + j > z:
        if (j, x) != (1, 1):
            raise NotApplicableError(f"{params}: no Beatty derivation when x + j > z unless j = x = 1")
        m = Morphism({"0": "1" + "0" * (z - 1), "1": "1" + "0" * (y - 1)})
        gw = GeneratorWord(decompose_morphism(m).letters, seed="1")
        return beatty_from_mechanical(transformation_fixed_point(gw))
    if j > 0:
        reduced = HiccupParams(0, x + j, y, z)
        return _hiccup_beatty(reduced).shifted(0, -j)
    if x > z or abs(y - z) != 1:
        raise NotApplicableError(f"{params}: Beatty form needs x <= z and |y - z| = 1")
    if y == 1:
        # eventually a(n) = n + const: rational density
        raise NotApplicableError(f"{params}: y = 1 gives an eventually arithmetic sequence")
    if x >= 2 or y == z - 1 and x == 1:
        mp = transformation_fixed_point(sturmian_decomposition(params))
        return beatty_from_mechanical(mp)
    tail_params = HiccupParams(0, z, y, z) if x == 1 else HiccupParams(0, z - 1, y, z)
    bp = _hiccup_beatty(tail_params).shifted(1, 1)
    candidate = BeattyParams(bp.slope, bp.intercept, bp.rounding, bp.first_index - 1)
    if bp.first_index == 2 and beatty_term(candidate, 1) == x:
        return candidate
    return bp
