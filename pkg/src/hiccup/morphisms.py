"""Substitutions, their fixed points, and the morphisms of hiccup sequences.

Words are plain ``str`` objects over single-character letters.  The binary
letters are ``"0"`` and ``"1"``; ``"b"`` and ``"c"`` are the auxiliary initial
letters used to get the right starting term.
"""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .errors import (
    AlphabetError,
    AmbiguityError,
    ConjugationError,
    DegeneracyError,
    ProlongabilityError,
    ReduceFirstError,
)
from .sequences import HiccupParams, generate_hiccup

__all__ = [
    "Morphism",
    "Coding",
    "MorphicForm",
    "apply",
    "fixed_point",
    "hiccup_morphism",
    "cyclic_shift",
    "drop_special_letter",
    "ones_positions",
    "adjacency_matrix",
    "is_primitive",
]


@dataclass(frozen=True)
class Morphism:
    images: Mapping[str, str]

    def __post_init__(self):
        images = dict(self.images)
        if not images:
            raise AlphabetError("empty alphabet")
        for letter, image in images.items():
            if len(letter) != 1:
                raise AlphabetError(f"letters are single characters, got {letter!r}")
            if not image:
                raise AlphabetError(f"image of {letter!r} is empty")
            stray = set(image) - images.keys()
            if stray:
                raise AlphabetError(f"image of {letter!r} uses letters outside the alphabet: {sorted(stray)}")
        object.__setattr__(self, "images", images)

    @property
    def alphabet(self) -> tuple[str, ...]:
        return tuple(self.images)

    def __call__(self, word: str) -> str:
        return apply(self, word)

    def __matmul__(self, other: "Morphism") -> "Morphism":
        """Composition ``self ∘ other`` (apply ``other`` first)."""
        return Morphism({a: apply(self, w) for a, w in other.images.items()})

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        return self.images == other.images

    def __hash__(self):
        return hash(tuple(sorted(self.images.items())))

    def prolongable_letters(self) -> list[str]:
        return [a for a, w in self.images.items() if w[0] == a and len(w) > 1]

    @classmethod
    def parse(cls, text: str) -> "Morphism":
        """Parse ``"0->10, 1->100"``."""
        images = {}
        for rule in text.split(","):
            rule = rule.strip()
            if not rule:
                continue
            if "->" not in rule:
                raise AlphabetError(f"rule {rule!r} lacks '->'")
            lhs, rhs = (s.strip() for s in rule.split("->", 1))
            if lhs in images:
                raise AlphabetError(f"letter {lhs!r} defined twice")
            images[lhs] = rhs
        return cls(images)

    def __str__(self):
        return ", ".join(f"{a}->{w}" for a, w in self.images.items())

    def __repr__(self):
        return f"Morphism.parse({str(self)!r})"


@dataclass(frozen=True)
class Coding:
    """Letter-to-letter map onto ``{"0", "1"}``."""

    table: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "table", dict(self.table))
        bad = {v for v in self.table.values()} - {"0", "1"}
        if bad:
            raise AlphabetError(f"coding must land in {{0,1}}, got {sorted(bad)}")

    @classmethod
    def identity(cls, alphabet=("0", "1")) -> "Coding":
        return cls({a: a for a in alphabet})

    @property
    def is_identity(self) -> bool:
        return all(k == v for k, v in self.table.items())

    def covers(self, m: Morphism) -> bool:
        return set(m.alphabet) <= self.table.keys()

    def __call__(self, word: str) -> str:
        if self.is_identity:
            return word
        return word.translate(str.maketrans(self.table))

    def __str__(self):
        return ", ".join(f"{a}->{b}" for a, b in self.table.items())


def apply(m: Morphism, w: str) -> str:
    try:
        return "".join([m.images[c] for c in w])
    except KeyError as exc:
        raise AlphabetError(f"letter {exc.args[0]!r} is not in the alphabet {m.alphabet}") from None


def fixed_point(m: Morphism, seed: str, length: int) -> str:
    """First ``length`` letters of the fixed point of ``m`` that starts with ``seed``.

    ``seed`` is usually one letter.  A two-letter seed selects a fixed point
    whose first letter is not prolongable on its own (for instance
    ``0->001, 1->1`` from ``"10"``).
    """
    if not seed:
        raise ProlongabilityError("empty seed")
    if set(seed) - set(m.alphabet):
        raise AlphabetError(f"seed {seed!r} uses letters outside {m.alphabet}")
    if len(seed) == 1 and m.images[seed] == seed:
        raise AmbiguityError(f"{seed!r} is fixed by the morphism; give a two-letter seed")
    first = apply(m, seed)
    if not first.startswith(seed) or len(first) == len(seed):
        raise ProlongabilityError(f"{str(m)!r} is not prolongable from {seed!r}")
    # invariant: out == m(out[:i]) and out[:i] is a prefix of out
    images = m.images
    out = list(first)
    i = len(seed)
    while len(out) < length:
        if i >= len(out):
            raise ProlongabilityError(f"iterates of {seed!r} stop growing at length {len(out)}")
        out.extend(images[out[i]])
        i += 1
    return "".join(out[:length])


def ones_positions(w: str) -> list[int]:
    """1-indexed positions of ``"1"`` in ``w``."""
    out = []
    i = w.find("1")
    while i >= 0:
        out.append(i + 1)
        i = w.find("1", i + 1)
    return out


# ---------------------------------------------------------------------------
# hiccup morphisms

@dataclass(frozen=True)
class MorphicForm:
    """Coded fixed point that encodes a hiccup sequence.

    The positions of ``1`` in ``coding(fixed_point(morphism, seed))`` are the
    terms ``a(n) + shift`` for ``n > len(leading)``; ``leading`` holds initial
    terms that are not positions (``a(1) = 0`` when ``x = 0``).
    """

    params: HiccupParams
    morphism: Morphism
    coding: Coding
    seed: str
    shift: int = 0
    leading: tuple[int, ...] = ()
    rule: str = ""
    inner: "MorphicForm | None" = field(default=None, compare=False, repr=False)

    def __iter__(self) -> Iterator:
        return iter((self.morphism, self.coding, self.seed))

    @property
    def pure(self) -> bool:
        return self.coding.is_identity

    def word(self, length: int) -> str:
        return self.coding(fixed_point(self.morphism, self.seed, length))

    def terms(self, count: int) -> list[int]:
        """Decode ``a(1..count)`` from the fixed point."""
        need = count - len(self.leading)
        out = list(self.leading[:count])
        if need <= 0:
            return out
        length = max(16, 4 * need)
        while True:
            pos = ones_positions(self.word(length))
            if len(pos) >= need:
                return out + [p - self.shift for p in pos[:need]]
            length *= 2


def _zeros(k: int) -> str:
    return "0" * k


def hiccup_morphism(params: HiccupParams, prefer_pure: bool = True) -> MorphicForm:
    """Morphism, coding and seed whose coded fixed point encodes ``params``.

    With ``prefer_pure`` the cyclically permuted form without auxiliary
    letter is used whenever it has a fixed point that starts correctly.
    """
    j, x, y, z = params
    if params.degenerate:
        raise DegeneracyError(f"{params} is degenerate (x = z = 1)")
    if j >= 2:
        raise ReduceFirstError(f"j = {j}: reduce to j = 0 first")
    z0, y0 = _zeros(z - 1), _zeros(y - 1)
    if j == 1:
        if x == 1 and y > 1:
            m = Morphism({"0": "1" + z0, "1": "1" + y0})
            return MorphicForm(params, m, Coding.identity(), "1", rule="j=1, x=1")
        if x == 1:
            # y = 1 gives a(n) = n; reuse the j = 0 form of a(n) + 1
            reduced = HiccupParams(0, 2, y, z)
            inner = hiccup_morphism(reduced, prefer_pure)
            return MorphicForm(params, inner.morphism, inner.coding, inner.seed,
                               shift=inner.shift + 1, rule="j=1 via j-reduction", inner=inner)
        # the image of b ends with z-1 zeros: 1 is not a term when x > 1
        m = Morphism({"b": "b" + _zeros(x - 2) + "1" + z0, "0": "1" + z0, "1": "1" + y0})
        return MorphicForm(params, m, Coding({"b": "0", "0": "0", "1": "1"}), "b", rule="j=1, x>1")

    if x == 0:
        inner_params = HiccupParams(0, z - 1, y, z)
        inner = hiccup_morphism(inner_params, prefer_pure)
        images = {"c": "c", **inner.morphism.images}
        coding = Coding({"c": "0", **inner.coding.table})
        return MorphicForm(params, Morphism(images), coding, "c" + inner.seed,
                           shift=inner.shift, leading=(0,), rule="x=0 lift", inner=inner)
    if prefer_pure and x >= 2 and z - y + 1 <= x <= z:
        m = Morphism({"0": _zeros(x - 1) + "1" + _zeros(z - x), "1": _zeros(x + y - z - 1) + "1" + _zeros(z - x)})
        return MorphicForm(params, m, Coding.identity(), "0", rule="pure cyclic form")
    if x == 1 and y < z:
        m = Morphism({"0": _zeros(z - y) + "1" + y0, "1": "1" + y0})
        return MorphicForm(params, m, Coding.identity(), "10", rule="x=1, y<z")
    if x == 1:
        m = Morphism({"b": "b" + z0, "0": "1" + z0, "1": _zeros(y - z) + "1" + z0})
        return MorphicForm(params, m, Coding({"b": "1", "0": "0", "1": "1"}), "b", rule="x=1, y>z")
    if y < z:
        m = Morphism({"b": "b" + _zeros(x - 2) + "1" + y0, "0": _zeros(z - y) + "1" + y0, "1": "1" + y0})
    else:
        m = Morphism({"b": "b" + _zeros(x - 2) + "1" + z0, "0": "1" + z0, "1": _zeros(y - z) + "1" + z0})
    rule = "x>1, y<z" if y < z else "x>1, y>z"
    return MorphicForm(params, m, Coding({"b": "0", "0": "0", "1": "1"}), "b", rule=rule)


# ---------------------------------------------------------------------------
# conjugation

def _has_seed(m: Morphism) -> bool:
    letters = m.alphabet
    for a in letters:
        if m.images[a][0] == a and len(m.images[a]) > 1:
            return True
    for a in letters:
        for b in letters:
            try:
                fixed_point(m, a + b, 8)
                return True
            except (ProlongabilityError, AmbiguityError):
                continue
    return False


def cyclic_shift(m: Morphism) -> Morphism:
    """Move the common last letter of the images of 0 and 1 to their front.

    Auxiliary initial letters (``b``, ``c``) lose that last letter instead,
    which keeps the fixed point starting with them unchanged.
    """
    if not {"0", "1"} <= set(m.alphabet):
        raise ConjugationError("morphism must contain letters 0 and 1")
    last = m.images["0"][-1]
    if m.images["1"][-1] != last:
        raise ConjugationError("images of 0 and 1 end with different letters")
    images = {}
    for a, w in m.images.items():
        if a in "01":
            images[a] = last + w[:-1]
        else:
            if len(w) < 2 or w[-1] != last:
                raise ConjugationError(f"image of {a!r} cannot give up a trailing {last!r}")
            images[a] = w[:-1]
    out = Morphism(images)
    if not _has_seed(out):
        raise ConjugationError(f"{out} has no prolongable seed")
    return out


def drop_special_letter(m: Morphism, coding: Coding, letter: str = "b") -> Morphism:
    """Replace an auxiliary initial letter by its coded letter when the images agree."""
    if letter not in m.alphabet:
        raise ConjugationError(f"{letter!r} not in alphabet")
    target = coding.table[letter]
    image = m.images[letter]
    if image[0] != letter or letter in image[1:]:
        raise ConjugationError(f"{letter!r} must occur only as the first letter of its own image")
    if target + image[1:] != m.images[target]:
        raise ConjugationError(f"image of {letter!r} does not mirror the image of {target!r}")
    if any(letter in w for a, w in m.images.items() if a != letter):
        raise ConjugationError(f"{letter!r} occurs inside other images")
    return Morphism({a: w for a, w in m.images.items() if a != letter})


# ---------------------------------------------------------------------------
# adjacency

def adjacency_matrix(m: Morphism, restrict_to_01: bool = False) -> np.ndarray:
    """Entry ``[u, v]`` counts the letter ``u`` in the image of ``v``.

    Column ``v`` therefore sums to ``len(image(v))``.
    """
    letters = ("0", "1") if restrict_to_01 else m.alphabet
    out = np.zeros((len(letters), len(letters)), dtype=np.int64)
    for col, v in enumerate(letters):
        image = m.images[v]
        for row, u in enumerate(letters):
            out[row, col] = image.count(u)
    return out


def is_primitive(m: Morphism) -> bool:
    """Some power of the {0,1}-restricted adjacency matrix is entrywise positive."""
    a = (adjacency_matrix(m, restrict_to_01=True) > 0).astype(np.int64)
    n = a.shape[0]
    power = a.copy()
    for _ in range(n * n):
        if (power > 0).all():
            return True
        power = ((power @ a) > 0).astype(np.int64)
    return bool((power > 0).all())


def check_morphic(params: HiccupParams, count: int) -> int | None:
    """First ``n`` where the morphic decoding disagrees with the recursion, else ``None``."""
    form = hiccup_morphism(params)
    got = form.terms(count)
    want = generate_hiccup(params, count)
    for n, (g, w) in enumerate(zip(got, want), start=1):
        if g != w:
            return n
    return None
