"""Exact arithmetic in real quadratic fields.

A :class:`QuadraticNumber` is ``(p + q*sqrt(d)) / r`` with integers ``p, q``,
``r > 0`` and squarefree ``d > 1`` (``d == 1`` only for rationals).  Signs,
comparisons, floors and ceilings are decided with integer arithmetic only.
"""
from __future__ import annotations

import ast
import math
from fractions import Fraction
from numbers import Rational

import numpy as np

__all__ = [
    "QuadraticNumber",
    "sqrt",
    "golden_ratio",
    "floor_linear",
    "parse_quadratic",
]


def _squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(k, m)`` with ``n == k*k*m`` and ``m`` squarefree."""
    if n <= 0:
        raise ValueError("radicand must be positive")
    k, m = 1, n
    f = 2
    while f * f <= m:
        while m % (f * f) == 0:
            m //= f * f
            k *= f
        f += 1
    return k, m


def _floor_q_sqrt(q: int, d: int) -> int:
    """Exact floor of ``q*sqrt(d)``."""
    if q == 0:
        return 0
    s = q * q * d
    if q > 0:
        return math.isqrt(s)
    root = math.isqrt(s)
    return -root if root * root == s else -(root + 1)


class QuadraticNumber:
    """Element ``(p + q*sqrt(d)) / r`` of ``Q(sqrt(d))``."""

    __slots__ = ("p", "q", "d", "r")

    def __init__(self, p: int = 0, q: int = 0, d: int = 1, r: int = 1):
        p, q, d, r = int(p), int(q), int(d), int(r)
        if r == 0:
            raise ZeroDivisionError("denominator is zero")
        if q != 0:
            k, d = _squarefree_split(d)
            q *= k
            if d == 1:
                p, q = p + q, 0
        if q == 0:
            d = 1
        if r < 0:
            p, q, r = -p, -q, -r
        g = math.gcd(math.gcd(p, q), r)
        self.p, self.q, self.d, self.r = p // g, q // g, d, r // g

    # -- construction -----------------------------------------------------
    @classmethod
    def coerce(cls, value) -> "QuadraticNumber":
        if isinstance(value, QuadraticNumber):
            return value
        if isinstance(value, int):
            return cls(value)
        if isinstance(value, Rational):
            f = Fraction(value)
            return cls(f.numerator, 0, 1, f.denominator)
        raise TypeError(f"cannot convert {type(value).__name__} to QuadraticNumber")

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def as_fraction(self) -> Fraction:
        if self.q:
            raise ValueError(f"{self} is irrational")
        return Fraction(self.p, self.r)

    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber(self.p, -self.q, self.d, self.r)

    def norm(self) -> Fraction:
        return Fraction(self.p * self.p - self.q * self.q * self.d, self.r * self.r)

    # -- arithmetic -------------------------------------------------------
    def _common(self, other):
        other = QuadraticNumber.coerce(other)
        if self.q and other.q and self.d != other.d:
            raise ValueError(f"mixed fields Q(sqrt({self.d})) and Q(sqrt({other.d}))")
        return other, (self.d if self.q else other.d)

    def __add__(self, other):
        try:
            other, d = self._common(other)
        except TypeError:
            return NotImplemented
        return QuadraticNumber(
            self.p * other.r + other.p * self.r,
            self.q * other.r + other.q * self.r,
            d,
            self.r * other.r,
        )

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.p, -self.q, self.d, self.r)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            return self + (-QuadraticNumber.coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other, d = self._common(other)
        except TypeError:
            return NotImplemented
        return QuadraticNumber(
            self.p * other.p + self.q * other.q * d,
            self.p * other.q + self.q * other.p,
            d,
            self.r * other.r,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadraticNumber":
        n = self.p * self.p - self.q * self.q * self.d
        if n == 0:
            raise ZeroDivisionError("division by zero")
        # 1/((p+q√d)/r) = r(p-q√d)/(p²-q²d)
        return QuadraticNumber(self.r * self.p, -self.r * self.q, self.d, n)

    def __truediv__(self, other):
        try:
            other = QuadraticNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return QuadraticNumber.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = QuadraticNumber(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- order --------------------------------------------------------------
    def sign(self) -> int:
        p, q = self.p, self.q
        if q == 0:
            return (p > 0) - (p < 0)
        if p >= 0 and q > 0:
            return 1
        if p <= 0 and q < 0:
            return -1
        # opposite signs: compare p² with q²d
        lhs, rhs = p * p, q * q * self.d
        if p > 0:
            return 1 if lhs > rhs else -1
        return 1 if rhs > lhs else -1

    def __eq__(self, other):
        try:
            other = QuadraticNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return (self.p, self.q, self.d, self.r) == (other.p, other.q, other.d, other.r)

    def __hash__(self):
        if self.q == 0:
            return hash(Fraction(self.p, self.r))
        return hash((self.p, self.q, self.d, self.r))

    def _cmp(self, other) -> int:
        return (self - other).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return self.p != 0 or self.q != 0

    def __floor__(self) -> int:
        return (self.p + _floor_q_sqrt(self.q, self.d)) // self.r

    def __ceil__(self) -> int:
        return -math.floor(-self)

    def floor(self) -> int:
        return math.floor(self)

    def ceil(self) -> int:
        return math.ceil(self)

    def __float__(self) -> float:
        return (self.p + self.q * math.sqrt(self.d)) / self.r

    def to_mpf(self, ctx=None):
        """Value in an mpmath context (``mpmath.mp`` or ``mpmath.iv``)."""
        if ctx is None:
            import mpmath

            ctx = mpmath.mp
        return (ctx.mpf(self.p) + ctx.mpf(self.q) * ctx.sqrt(self.d)) / self.r

    # -- text -------------------------------------------------------------
    def __repr__(self):
        return f"QuadraticNumber({self.p}, {self.q}, {self.d}, {self.r})"

    def __str__(self):
        if self.q == 0:
            return str(self.p) if self.r == 1 else f"{self.p}/{self.r}"
        rad = f"sqrt({self.d})"
        aq = abs(self.q)
        surd = rad if aq == 1 else f"{aq}*{rad}"
        if self.p == 0:
            num = surd if self.q > 0 else f"-{surd}"
            return num if self.r == 1 else f"{num}/{self.r}"
        num = f"{self.p}{'+' if self.q > 0 else '-'}{surd}"
        return num if self.r == 1 else f"({num})/{self.r}"


def sqrt(n: int) -> QuadraticNumber:
    """Exact square root of a non-negative integer."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return QuadraticNumber(0)
    root = math.isqrt(n)
    if root * root == n:
        return QuadraticNumber(root)
    return QuadraticNumber(0, 1, n, 1)


def golden_ratio() -> QuadraticNumber:
    return QuadraticNumber(1, 1, 5, 2)


# ---------------------------------------------------------------------------
# expression parsing (used for formula round trips)

_ALLOWED_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)


class _Linear:
    """``a*n + b`` with quadratic coefficients; ``n`` is the formula variable."""

    __slots__ = ("a", "b")

    def __init__(self, a, b):
        self.a, self.b = QuadraticNumber.coerce(a), QuadraticNumber.coerce(b)


def _eval(node, variable):
    if isinstance(node, ast.Expression):
        return _eval(node.body, variable)
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return _Linear(0, node.value)
    if isinstance(node, ast.Name) and variable is not None and node.id == variable:
        return _Linear(1, 0)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand, variable)
        return v if isinstance(node.op, ast.UAdd) else _Linear(-v.a, -v.b)
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id == "sqrt":
        if len(node.args) != 1:
            raise ValueError("sqrt takes one argument")
        v = _eval(node.args[0], variable)
        if v.a or not v.b.is_rational or v.b.as_fraction().denominator != 1:
            raise ValueError("sqrt argument must be an integer constant")
        return _Linear(0, sqrt(v.b.p))
    if isinstance(node, ast.BinOp) and isinstance(node.op, _ALLOWED_BINOPS):
        lhs, rhs = _eval(node.left, variable), _eval(node.right, variable)
        if isinstance(node.op, ast.Add):
            return _Linear(lhs.a + rhs.a, lhs.b + rhs.b)
        if isinstance(node.op, ast.Sub):
            return _Linear(lhs.a - rhs.a, lhs.b - rhs.b)
        if isinstance(node.op, ast.Mult):
            if lhs.a and rhs.a:
                raise ValueError("expression is not linear in the variable")
            return _Linear(lhs.a * rhs.b + rhs.a * lhs.b, lhs.b * rhs.b)
        if isinstance(node.op, ast.Div):
            if rhs.a:
                raise ValueError("cannot divide by the variable")
            return _Linear(lhs.a / rhs.b, lhs.b / rhs.b)
        if isinstance(node.op, ast.Pow):
            if lhs.a or rhs.a or not rhs.b.is_rational:
                raise ValueError("unsupported power")
            e = rhs.b.as_fraction()
            if e.denominator != 1:
                raise ValueError("unsupported power")
            return _Linear(0, lhs.b ** int(e))
    raise ValueError(f"unsupported syntax: {ast.dump(node)}")


def parse_linear(text: str, variable: str = "n") -> tuple[QuadraticNumber, QuadraticNumber]:
    """Parse ``text`` as ``a*variable + b`` and return ``(a, b)`` exactly."""
    v = _eval(ast.parse(text.strip(), mode="eval"), variable)
    return v.a, v.b


def parse_quadratic(text: str) -> QuadraticNumber:
    a, b = parse_linear(text, variable=None)
    return b


# ---------------------------------------------------------------------------
# vectorised exact floors

_INT64_SAFE = 1 << 62


def _isqrt_array(v: np.ndarray) -> np.ndarray:
    s = np.floor(np.sqrt(v.astype(np.float64))).astype(np.int64)
    for _ in range(4):
        too_big = s * s > v
        if not too_big.any():
            break
        s[too_big] -= 1
    for _ in range(4):
        too_small = (s + 1) * (s + 1) <= v
        if not too_small.any():
            break
        s[too_small] += 1
    return s


def floor_linear(slope, intercept, ns) -> np.ndarray:
    """Exact ``floor(slope*n + intercept)`` for every ``n`` in ``ns``.

    Vectorised over int64 when every intermediate fits; otherwise falls back
    to Python integers.
    """
    a, b = QuadraticNumber.coerce(slope), QuadraticNumber.coerce(intercept)
    if a.q and b.q and a.d != b.d:
        raise ValueError("slope and intercept lie in different fields")
    d = a.d if a.q else b.d
    R = a.r * b.r // math.gcd(a.r, b.r)
    P1, Q1 = a.p * (R // a.r), a.q * (R // a.r)
    P0, Q0 = b.p * (R // b.r), b.q * (R // b.r)
    ns = np.asarray(ns, dtype=object if np.asarray(ns).dtype == object else np.int64)
    if ns.size == 0:
        return np.zeros(0, dtype=np.int64)
    nmax = int(np.max(np.abs(ns.astype(object)))) if ns.dtype == object else int(np.abs(ns).max())
    qmax = abs(Q1) * nmax + abs(Q0)
    pmax = abs(P1) * nmax + abs(P0)
    if ns.dtype != object and qmax * qmax * d < _INT64_SAFE and pmax + qmax * math.isqrt(d) + 2 < _INT64_SAFE:
        n = ns.astype(np.int64)
        P = P1 * n + P0
        Q = Q1 * n + Q0
        if d == 1:
            F = Q
        else:
            S = Q * Q * d
            root = _isqrt_array(S)
            exact = root * root == S
            F = np.where(Q >= 0, root, np.where(exact, -root, -(root + 1)))
        return np.floor_divide(P + F, R)
    out = [(P1 * int(n) + P0 + _floor_q_sqrt(Q1 * int(n) + Q0, d)) // R for n in ns.tolist()]
    return np.array(out, dtype=object)
