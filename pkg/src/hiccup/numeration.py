"""Dumont–Thomas numeration systems built from prolongable morphisms.

Position ``n`` of the fixed point ``u = phi^inf(seed)`` is written by
descending through the iterated images of the seed.  For ``0->01, 1->0001``
the bases are 1, 2, 6, 16, 44, ... and digits run over ``{0, 1, 2, 3}``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    BoundViolationError,
    InvalidRepresentationError,
    ParameterError,
    ProlongabilityError,
)
from .morphisms import Morphism
from .quadratic import QuadraticNumber, sqrt
from .sequences import HiccupParams, generate_hiccup

__all__ = [
    "DFA",
    "NumerationSystem",
    "dumont_thomas",
    "a284753_system",
    "represent",
    "value",
    "accepts",
    "ShiftedPairReport",
    "verify_shifted_pair",
    "binet_check",
    "Extremum",
    "digit_extrema",
    "KimberlingBound",
    "kimberling_bound",
    "KimberlingScan",
    "kimberling_scan",
    "CAPTION_REGEX",
    "caption_language_check",
]

CAPTION_REGEX = r"(0*13*[012])*"


@dataclass(frozen=True)
class DFA:
    """Deterministic automaton over digit characters; missing edges reject."""

    states: tuple[str, ...]
    initial: str
    transitions: Mapping[tuple[str, str], str]
    accepting: frozenset[str]

    def step(self, state: str | None, digit: str) -> str | None:
        if state is None:
            return None
        return self.transitions.get((state, digit))

    def run(self, word: str, start: str | None = None) -> str | None:
        state = self.initial if start is None else start
        for ch in word:
            state = self.transitions.get((state, ch))
            if state is None:
                return None
        return state

    def accepts(self, word: str) -> bool:
        end = self.run(word)
        return end is not None and end in self.accepting

    @property
    def alphabet(self) -> list[str]:
        return sorted({d for (_, d) in self.transitions})

    def words(self, length: int, starts: Iterable[str] | None = None) -> Iterable[str]:
        """All words of the given length readable from ``starts`` (default: initial)."""
        starts = [self.initial] if starts is None else list(starts)
        seen = set()
        for s in starts:
            stack = [(s, "")]
            while stack:
                st, w = stack.pop()
                if len(w) == length:
                    if st in self.accepting and w not in seen:
                        seen.add(w)
                        yield w
                    continue
                for d in self.alphabet:
                    nxt = self.transitions.get((st, d))
                    if nxt is not None:
                        stack.append((nxt, w + d))

    def reachable(self) -> set[str]:
        out, todo = {self.initial}, [self.initial]
        while todo:
            s = todo.pop()
            for (src, _), dst in self.transitions.items():
                if src == s and dst not in out:
                    out.add(dst)
                    todo.append(dst)
        return out

    def to_dot(self, name: str = "recognizer") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=point, label=""];']
        for s in self.states:
            shape = "doublecircle" if s in self.accepting else "circle"
            lines.append(f'  "{s}" [shape={shape}];')
        lines.append(f'  __start -> "{self.initial}";')
        grouped: dict[tuple[str, str], list[str]] = {}
        for (src, d), dst in sorted(self.transitions.items()):
            grouped.setdefault((src, dst), []).append(d)
        for (src, dst), ds in grouped.items():
            lines.append(f'  "{src}" -> "{dst}" [label="{",".join(ds)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _charpoly(M: np.ndarray) -> list[int]:
    """Coefficients ``c_1..c_k`` with ``M^k = c_1 M^{k-1} + ... + c_k I`` (Faddeev–LeVerrier)."""
    k = M.shape[0]
    A = [[Fraction(int(v)) for v in row] for row in M]
    I = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    Mk = [row[:] for row in I]
    coeffs = []
    for m in range(1, k + 1):
        AM = [[sum(A[i][t] * Mk[t][j] for t in range(k)) for j in range(k)] for i in range(k)]
        c = -sum(AM[i][i] for i in range(k)) / m
        coeffs.append(c)
        Mk = [[AM[i][j] + c * I[i][j] for j in range(k)] for i in range(k)]
    return [int(-c) for c in coeffs]


@dataclass(frozen=True)
class NumerationSystem:
    morphism: Morphism
    seed: str
    recognizer: DFA
    recurrence: tuple[int, ...]
    _lengths: dict = field(default_factory=dict, repr=False, compare=False, hash=False)

    @property
    def digit_alphabet(self) -> tuple[int, ...]:
        return tuple(range(max(len(v) for v in self.morphism.images.values())))

    def image_length(self, letter: str, k: int) -> int:
        """``|phi^k(letter)|``."""
        key = (letter, k)
        if key not in self._lengths:
            if k == 0:
                self._lengths[key] = 1
            else:
                self._lengths[key] = sum(self.image_length(c, k - 1) for c in self.morphism(letter))
        return self._lengths[key]

    def base(self, i: int) -> int:
        """``B_i = |phi^(i-1)(seed)|`` for ``i >= 1``."""
        if i < 1:
            raise ParameterError("bases are indexed from 1")
        return self.image_length(self.seed, i - 1)

    def bases(self, count: int) -> list[int]:
        return [self.base(i) for i in range(1, count + 1)]

    def digit_weight(self, state: str, digit: int, position: int) -> int:
        """Weight of ``digit`` read in ``state`` at lsd position ``position`` (1-based)."""
        img = self.morphism(state)
        return sum(self.image_length(c, position - 1) for c in img[:digit])


def dumont_thomas(m: Morphism, seed: str) -> NumerationSystem:
    if seed not in m.images:
        raise ParameterError(f"seed {seed!r} is not in the alphabet")
    img = m(seed)
    if not img.startswith(seed) or len(img) < 2:
        raise ProlongabilityError(f"{m} is not prolongable at {seed!r}")
    states, todo = [seed], [seed]
    trans = {}
    while todo:
        s = todo.pop()
        for i, c in enumerate(m(s)):
            trans[(s, str(i))] = c
            if c not in states:
                states.append(c)
                todo.append(c)
    if max(len(v) for v in m.images.values()) > 10:
        raise ParameterError("digits above 9 are not supported")
    dfa = DFA(tuple(states), seed, trans, frozenset(states))
    M = np.array([[m(v).count(u) for v in states] for u in states], dtype=np.int64)
    return NumerationSystem(m, seed, dfa, tuple(_charpoly(M)))


def a284753_system() -> NumerationSystem:
    return dumont_thomas(Morphism({"0": "01", "1": "0001"}), "0")


def accepts(dfa: DFA, word: str) -> bool:
    return dfa.accepts(word)


def represent(ns: NumerationSystem, n: int) -> str:
    """Greedy msd-first representation; ``0`` is written ``"0"``."""
    if n < 0:
        raise ParameterError("n must be >= 0")
    if n == 0:
        return "0"
    k = 1
    while ns.base(k + 1) <= n:
        k += 1
    state, digits, rest = ns.seed, [], n
    for pos in range(k, 0, -1):
        img = ns.morphism(state)
        acc = 0
        for d, c in enumerate(img):
            w = ns.image_length(c, pos - 1)
            if rest < acc + w:
                break
            acc += w
        else:
            raise AssertionError("descent overflow")
        digits.append(str(d))
        rest -= acc
        state = c
    return "".join(digits).lstrip("0") or "0"


def value(ns: NumerationSystem, word: str) -> int:
    """Inverse of :func:`represent`; rejects words outside the recognizer."""
    if not word or not ns.recognizer.accepts(word):
        raise InvalidRepresentationError(f"{word!r} is not accepted by the recognizer")
    state, total = ns.seed, 0
    for i, ch in enumerate(word):
        pos = len(word) - i
        total += ns.digit_weight(state, int(ch), pos)
        state = ns.recognizer.step(state, ch)
    return total


def _accepts_all(dfa: DFA, words: np.ndarray, digits: str) -> np.ndarray:
    """Vectorised run over a ``(count, length)`` array of digit indices."""
    index = {s: i for i, s in enumerate(dfa.states)}
    dead = len(dfa.states)
    table = np.full((dead + 1, len(digits)), dead, dtype=np.int64)
    for (src, d), dst in dfa.transitions.items():
        if d in digits:
            table[index[src], digits.index(d)] = index[dst]
    state = np.full(words.shape[0], index[dfa.initial], dtype=np.int64)
    for col in range(words.shape[1]):
        state = table[state, words[:, col]]
    accepting = np.array([s in dfa.accepting for s in dfa.states] + [False])
    return accepting[state]


def caption_language_check(ns: NumerationSystem, max_length: int = 12, regex: str = CAPTION_REGEX) -> dict:
    """Compare recognizer language with ``regex`` on all digit words up to ``max_length``.

    Also compares with the prefix closure of the regex language, written
    ``(0|13*[012])*(13*)?``.  One alternation pattern classifies every word:
    group ``c`` is unset when the regex itself matches.
    """
    closure = r"(?:0|13*[012])*(?:13*)?"
    # one pass over newline-joined words; only matching lines reach Python
    pat = re.compile(f"^(?:(?:{regex})$|(?P<c>{closure})$)".encode(), re.MULTILINE)
    digits = "".join(str(d) for d in ns.digit_alphabet)
    k = len(digits)
    only_dfa, only_regex, closure_mismatch, total = [], [], [], 0
    accepted_not_matching = 0
    for L in range(max_length + 1):
        count = k ** L
        codes = np.arange(count, dtype=np.int64)
        cols = np.empty((count, L), dtype=np.uint8)
        for c in range(L - 1, -1, -1):
            cols[:, c] = codes % k
            codes //= k
        acc = _accepts_all(ns.recognizer, cols, digits)
        chars = np.frombuffer((digits + "\n").encode(), dtype=np.uint8)
        grid = np.full((count, L + 1), k, dtype=np.uint8)
        grid[:, :L] = cols
        text = chars[grid].tobytes()
        in_regex = np.zeros(count, dtype=bool)
        in_closure = np.zeros(count, dtype=bool)
        for m in pat.finditer(text):
            i, off = divmod(m.start(), L + 1)
            if off or i >= count:  # empty match after the final newline
                continue
            in_closure[i] = True
            in_regex[i] = m.group("c") is None
        word = lambda i: "".join(digits[v] for v in cols[i])
        only_dfa += [word(i) for i in np.flatnonzero(acc & ~in_regex)[:50]]
        only_regex += [word(i) for i in np.flatnonzero(in_regex & ~acc)[:50]]
        closure_mismatch += [word(i) for i in np.flatnonzero(acc != in_closure)[:50]]
        accepted_not_matching += int((acc & ~in_regex).sum())
        total += count
    key = lambda s: (len(s), s)
    return {
        "words_checked": total,
        "equal": not only_dfa and not only_regex,
        "regex_subset_of_recognizer": not only_regex,
        "accepted_not_matching": accepted_not_matching,
        "first_accepted_not_matching": min(only_dfa, key=key) if only_dfa else None,
        "first_matching_not_accepted": min(only_regex, key=key) if only_regex else None,
        "equal_to_prefix_closure": not closure_mismatch,
    }


# ---------------------------------------------------------------------------
# the (0w, w0) structure of A284753

@dataclass
class ShiftedPairReport:
    horizon: int
    test1: bool
    test2: bool
    test3: bool
    pairing: bool
    witnesses: dict[str, int | None]

    @property
    def passed(self) -> bool:
        return self.test1 and self.test2 and self.test3 and self.pairing

    def to_dict(self) -> dict:
        return {
            "horizon": self.horizon,
            "test1": self.test1,
            "test2": self.test2,
            "test3": self.test3,
            "pairing": self.pairing,
            "passed": self.passed,
            "witnesses": dict(self.witnesses),
        }


def verify_shifted_pair(
    ns: NumerationSystem,
    params: HiccupParams = HiccupParams(0, 2, 4, 2),
    horizon: int = 10_000,
    sequence: Sequence[int] | None = None,
) -> ShiftedPairReport:
    """Check gaps and ``rep(a(n)) = rep(n) + "0"`` for ``1 <= n <= horizon``.

    ``sequence`` overrides the generated terms (used for fault injection); it
    must contain at least ``horizon + 1`` terms.
    """
    seq = list(sequence) if sequence is not None else generate_hiccup(params, horizon + 1)
    if len(seq) < horizon + 1:
        raise ParameterError(f"need {horizon + 1} terms, got {len(seq)}")
    members = set(seq)
    wit: dict[str, int | None] = {"test1": None, "test2": None, "test3": None, "pairing": None}
    for n in range(1, horizon + 1):
        gap = seq[n] - seq[n - 1]
        if wit["test1"] is None and gap not in (2, 4):
            wit["test1"] = n
        inside = (n + 1) in members
        if wit["test2"] is None and inside and gap != 4:
            wit["test2"] = n
        if wit["test3"] is None and not inside and gap != 2:
            wit["test3"] = n
        if wit["pairing"] is None:
            w = represent(ns, n)
            if not (w.startswith("1") and represent(ns, seq[n - 1]) == w + "0"):
                wit["pairing"] = n
    return ShiftedPairReport(
        horizon,
        wit["test1"] is None,
        wit["test2"] is None,
        wit["test3"] is None,
        wit["pairing"] is None,
        wit,
    )


def _dominant_roots(ns: NumerationSystem) -> tuple[QuadraticNumber, QuadraticNumber]:
    if len(ns.recurrence) != 2:
        raise ParameterError("Binet form needs a second-order recurrence")
    c1, c2 = ns.recurrence
    disc = sqrt(c1 * c1 + 4 * c2)
    return (c1 + disc) / 2, (c1 - disc) / 2


def binet_check(ns: NumerationSystem, n_max: int) -> bool:
    """``B_n = (lam^n - lbar^n)/(lam - lbar)`` and ``B_{n+1} - lam*B_n = lbar^n``, exactly."""
    lam, lbar = _dominant_roots(ns)
    diff = lam - lbar
    lp, bp = QuadraticNumber(1), QuadraticNumber(1)
    for n in range(1, n_max + 1):
        lp, bp = lp * lam, bp * lbar
        if (lp - bp) / diff != ns.base(n):
            return False
        if ns.base(n + 1) - lam * ns.base(n) != bp:
            return False
    return True


# ---------------------------------------------------------------------------
# extremal digit sums

@dataclass(frozen=True)
class Extremum:
    word: str  # lsd first
    value: QuadraticNumber

    def rounded(self, places: int = 3) -> float:
        return round(float(self.value), places)


def _powers(lbar: QuadraticNumber, count: int) -> list[QuadraticNumber]:
    out, p = [], QuadraticNumber(1)
    for _ in range(count):
        p = p * lbar
        out.append(p)
    return out


def digit_extrema(lambda_bar, length: int, constraint: DFA) -> tuple[str, QuadraticNumber, str, QuadraticNumber]:
    """Extremes of ``sum d_i * lambda_bar**i`` over admissible lsd words of ``length`` digits.

    Admissible means the msd-first reversal can be read from some reachable
    state, i.e. it occurs as the low digits of an accepted representation.
    Ties go to the lexicographically smallest lsd word.
    """
    lbar = QuadraticNumber.coerce(lambda_bar)
    if length < 1 or length > 14:
        raise ParameterError("length must be in 1..14")
    pw = _powers(lbar, length)
    pwf = np.array([float(p) for p in pw])
    words = sorted(w[::-1] for w in constraint.words(length, constraint.reachable()))
    digits = np.array([[int(c) for c in w] for w in words], dtype=np.int64)
    approx = digits @ pwf
    exact = lambda i: sum((int(d) * p for d, p in zip(words[i], pw)), QuadraticNumber(0))

    def pick(idx_extreme, better):
        cands = np.flatnonzero(np.abs(approx - approx[idx_extreme]) < 1e-9)
        best = None
        for i in cands:  # words are sorted, so the first exact winner is lexicographically smallest
            v = exact(i)
            if best is None or better(v, best[1]):
                best = (words[i], v)
        return best

    lo = pick(int(np.argmin(approx)), lambda a, b: a < b)
    hi = pick(int(np.argmax(approx)), lambda a, b: a > b)
    return lo[0], lo[1], hi[0], hi[1]


def _inverse_edges(dfa: DFA) -> dict[str, list[tuple[str, int]]]:
    inv: dict[str, list[tuple[str, int]]] = {s: [] for s in dfa.states}
    for (src, d), dst in dfa.transitions.items():
        inv[dst].append((src, int(d)))
    return inv


def _solve_linear(A: list[list[QuadraticNumber]], b: list[QuadraticNumber]) -> list[QuadraticNumber]:
    n = len(b)
    A = [row[:] + [b[i]] for i, row in enumerate(A)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        inv = A[col][col].inverse()
        A[col] = [v * inv for v in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [v - f * w for v, w in zip(A[r], A[col])]
    return [A[i][n] for i in range(n)]


def _digit_sum_bounds(dfa: DFA, lbar: QuadraticNumber) -> tuple[QuadraticNumber, QuadraticNumber]:
    """Exact inf and sup of ``sum_{i>=1} d_i lbar^i`` over all representations.

    ``hi[s]``/``lo[s]`` bound the sum over words whose reading (msd first,
    from the initial state) ends in ``s``.  Reading one more low digit ``d``
    from ``t`` multiplies the old sum by ``lbar`` and adds ``d*lbar``, so with
    ``lbar < 0`` the equations couple ``hi`` with ``lo``.  Solved by policy
    iteration: float value iteration picks the maximising edges, the linear
    system for that policy is solved exactly, and optimality is re-checked
    exactly.
    """
    if not (-1 < lbar < 0):
        raise ParameterError("need -1 < lambda_bar < 0")
    inv = _inverse_edges(dfa)
    states = list(dfa.states)
    lf = float(lbar)
    hi = {s: 0.0 for s in states}
    lo = {s: 0.0 for s in states}
    for _ in range(400):
        nhi, nlo = {}, {}
        for s in states:
            opts_hi = [d * lf + lf * lo[t] for t, d in inv[s]]
            opts_lo = [d * lf + lf * hi[t] for t, d in inv[s]]
            if s == dfa.initial:
                opts_hi.append(0.0)
                opts_lo.append(0.0)
            nhi[s], nlo[s] = max(opts_hi), min(opts_lo)
        hi, lo = nhi, nlo

    def choices(kind):
        out = {}
        for s in states:
            opts = [(d * lf + lf * (lo if kind == "hi" else hi)[t], (t, d)) for t, d in inv[s]]
            if s == dfa.initial:
                opts.append((0.0, None))
            target = (hi if kind == "hi" else lo)[s]
            out[s] = min(opts, key=lambda o: abs(o[0] - target))[1]
        return out

    pol_hi, pol_lo = choices("hi"), choices("lo")
    # unknowns: hi[s] for s in states, then lo[s]
    idx = {("hi", s): i for i, s in enumerate(states)}
    idx.update({("lo", s): len(states) + i for i, s in enumerate(states)})
    N = 2 * len(states)
    zero, one = QuadraticNumber(0), QuadraticNumber(1)
    A = [[zero] * N for _ in range(N)]
    b = [zero] * N
    for kind, pol, other in (("hi", pol_hi, "lo"), ("lo", pol_lo, "hi")):
        for s in states:
            r = idx[(kind, s)]
            A[r][r] = one
            choice = pol[s]
            if choice is not None:
                t, d = choice
                A[r][idx[(other, t)]] = A[r][idx[(other, t)]] - lbar
                b[r] = lbar * d
    sol = _solve_linear(A, b)
    H = {s: sol[idx[("hi", s)]] for s in states}
    Lo = {s: sol[idx[("lo", s)]] for s in states}
    for s in states:
        for t, d in inv[s]:
            if lbar * d + lbar * Lo[t] > H[s] or lbar * d + lbar * H[t] < Lo[s]:
                raise BoundViolationError("policy iteration did not reach the optimum")
        if s == dfa.initial and (H[s] < 0 or Lo[s] > 0):
            raise BoundViolationError("policy iteration did not reach the optimum")
    return min(Lo.values()), max(H.values())


@dataclass(frozen=True)
class KimberlingBound:
    """Bounds for ``a(n) - lam*n`` on A284753.

    ``estimate_*`` add the geometric tails ``lbar^7/(1 - lbar^2)`` and
    ``lbar^8/(1 - lbar^2)`` to ``m6`` and ``M7`` taken at three decimals
    (giving -2.667 and 1.953).  They are estimates only: some ``n`` fall
    outside them.  ``certified_*`` are the exact infimum and supremum of the
    digit sums over all representations.
    """

    m6: QuadraticNumber
    M7: QuadraticNumber
    estimate_lower: QuadraticNumber
    estimate_upper: QuadraticNumber
    certified_lower: QuadraticNumber
    certified_upper: QuadraticNumber

    @property
    def lower(self) -> float:
        return round(float(self.estimate_lower), 3)

    @property
    def upper(self) -> float:
        return round(float(self.estimate_upper), 3)

    def __iter__(self):
        return iter((self.lower, self.upper))

    def to_dict(self) -> dict:
        return {
            "m6": round(float(self.m6), 6),
            "M7": round(float(self.M7), 6),
            "estimate": [self.lower, self.upper],
            "certified": [str(self.certified_lower), str(self.certified_upper)],
            "certified_float": [float(self.certified_lower), float(self.certified_upper)],
        }


def _round3(v: QuadraticNumber) -> QuadraticNumber:
    return QuadraticNumber.coerce(Fraction(round(float(v) * 1000), 1000))


def kimberling_bound(ns: NumerationSystem) -> KimberlingBound:
    lam, lbar = _dominant_roots(ns)
    _, m6, _, _ = digit_extrema(lbar, 6, ns.recognizer)
    _, _, _, M7 = digit_extrema(lbar, 7, ns.recognizer)
    geo = 1 - lbar * lbar
    est_lo = _round3(m6) + lbar ** 7 / geo
    est_hi = _round3(M7) + lbar ** 8 / geo
    cert_lo, cert_hi = _digit_sum_bounds(ns.recognizer, lbar)
    if not (cert_lo >= -3 and cert_hi <= 2):
        raise BoundViolationError(f"certified bounds ({cert_lo}, {cert_hi}) leave (-3, 2)")
    return KimberlingBound(m6, M7, est_lo, est_hi, cert_lo, cert_hi)


@dataclass
class KimberlingScan:
    horizon: int
    within: bool
    min_n: int
    min_value: float
    max_n: int
    max_value: float
    below_estimate: list[int]
    above_estimate: list[int]

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def kimberling_scan(horizon: int = 10**6, bound: KimberlingBound | None = None) -> KimberlingScan:
    """Exact check of ``-3 < a(n) - (1+sqrt 3)n < 2`` for ``n <= horizon`` on A284753.

    Comparisons are done in integers: ``X > n*sqrt(3)`` iff ``X > 0`` and
    ``X^2 > 3n^2``.  Also records the ``n`` where the rounded estimates from
    :func:`kimberling_bound` are exceeded.
    """
    a = np.asarray(generate_hiccup(HiccupParams(0, 2, 4, 2), horizon), dtype=np.int64)
    n = np.arange(1, horizon + 1, dtype=np.int64)
    three_n2 = 3 * n * n

    def gt_sqrt3n(X):  # X > n*sqrt(3)
        return (X > 0) & (X * X > three_n2)

    def lt_sqrt3n(X):  # X < n*sqrt(3)
        return (X <= 0) | (X * X < three_n2)

    lower_ok = gt_sqrt3n(a - n + 3)  # a - n - n*sqrt3 > -3
    upper_ok = lt_sqrt3n(a - n - 2)  # a - n - n*sqrt3 < 2
    diff = a - n * (1 + np.sqrt(3.0))
    below, above = [], []
    if bound is not None:
        below = [int(k) for k in np.flatnonzero(diff < float(bound.estimate_lower) - 1e-9)[:20] + 1]
        above = [int(k) for k in np.flatnonzero(diff > float(bound.estimate_upper) + 1e-9)[:20] + 1]
    i_min, i_max = int(np.argmin(diff)), int(np.argmax(diff))
    return KimberlingScan(
        horizon,
        bool(lower_ok.all() and upper_ok.all()),
        i_min + 1,
        float(diff[i_min]),
        i_max + 1,
        float(diff[i_max]),
        below,
        above,
    )
