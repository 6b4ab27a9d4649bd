"""Exact arithmetic over Q and the real quadratic field Q(sqrt(d)).

Rationals are plain ``fractions.Fraction`` (arbitrary precision, always
normalized with positive denominator).  ``QuadExt`` represents a + b*sqrt(d)
for a fixed square-free radicand d >= 2; one radicand is shared per context,
and values with zero surd part embed the rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction


def is_square_free(d: int) -> bool:
    if d < 2:
        return False
    p = 2
    while p * p <= d:
        if d % (p * p) == 0:
            return False
        p += 1
    return True


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot coerce {x!r} to a rational")


def parse_rational(s: str) -> Fraction:
    """Parse "p/q" or "p" (q omitted when 1)."""
    s = s.strip()
    if "/" in s:
        p, q = s.split("/")
        return Fraction(int(p), int(q))
    return Fraction(int(s))


def format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class QuadExt:
    """a + b*sqrt(d) with a, b rational and d a fixed square-free radicand."""

    a: Fraction
    b: Fraction
    d: int

    @classmethod
    def make(cls, a, b=0, d=2) -> "QuadExt":
        if not is_square_free(d):
            raise ValueError(f"radicand {d} is not square-free and >= 2")
        return cls(_as_fraction(a), _as_fraction(b), d)

    @classmethod
    def rational(cls, a, d=2) -> "QuadExt":
        return cls.make(a, 0, d)

    @property
    def is_rat(self) -> bool:
        return self.b == 0

    def _coerce(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            if other.b == 0 or self.b == 0 or other.d == self.d:
                return QuadExt(other.a, other.b, self.d if other.b == 0 else other.d)
            raise ValueError(f"mixed radicands {self.d} and {other.d}")
        return QuadExt(_as_fraction(other), Fraction(0), self.d)

    def _unify_d(self, other: "QuadExt") -> int:
        if self.b == 0 and other.b != 0:
            return other.d
        return self.d

    def __add__(self, other):
        o = self._coerce(other)
        return QuadExt(self.a + o.a, self.b + o.b, self._unify_d(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        d = self._unify_d(o)
        return QuadExt(self.a * o.a + d * self.b * o.b,
                       self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        denom = self.a * self.a - self.d * self.b * self.b
        if denom == 0:
            if self.a == 0 and self.b == 0:
                raise ZeroDivisionError("inverse of zero")
            # a^2 = d b^2 with d square-free forces a = b = 0
            raise ZeroDivisionError("inverse of zero")
        return QuadExt(self.a / denom, -self.b / denom, self.d)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b)) if self.b == 0 else hash((self.a, self.b, self.d))

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def to_float(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self):
        if self.b == 0:
            return format_rational(self.a)
        return f"{format_rational(self.a)}+{format_rational(self.b)}*sqrt({self.d})"

    def to_json(self) -> list:
        return [format_rational(self.a), format_rational(self.b)]

    @classmethod
    def from_json(cls, pair, d: int) -> "QuadExt":
        return cls.make(parse_rational(str(pair[0])), parse_rational(str(pair[1])), d)


def qext_sign(x: QuadExt) -> int:
    """Exact sign of a + b*sqrt(d)."""
    sa = (x.a > 0) - (x.a < 0)
    sb = (x.b > 0) - (x.b < 0)
    if sb == 0:
        return sa
    if sa == 0:
        return sb
    if sa == sb:
        return sa
    # opposite signs: |a| vs |b|*sqrt(d), i.e. a^2 vs d*b^2, a's sign decides
    lhs = x.a * x.a
    rhs = x.d * x.b * x.b
    if lhs == rhs:
        return 0
    return sa if lhs > rhs else sb


def qext_ceil(x: QuadExt) -> int:
    """Smallest integer >= x, exactly."""
    c = math.ceil(x.to_float())
    # correct for float rounding in either direction
    while qext_sign(x - c) > 0:
        c += 1
    while qext_sign(x - (c - 1)) <= 0:
        c -= 1
    return c


@dataclass(frozen=True)
class ExactMatrix:
    """Rectangular matrix over Q(sqrt(d)); rationals embed with zero surd part."""

    entries: tuple
    d: int

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise ValueError("matrix dimensions must be positive")
        w = len(self.entries[0])
        if any(len(r) != w for r in self.entries):
            raise ValueError("matrix must be rectangular")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @classmethod
    def from_rows(cls, rows, d=2) -> "ExactMatrix":
        conv = []
        for r in rows:
            conv.append(tuple(e if isinstance(e, QuadExt) else QuadExt.rational(e, d)
                              for e in r))
        return cls(tuple(conv), d)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(tuple(zip(*self.entries)), self.d)

    def mul_vector(self, v):
        zero = QuadExt.rational(0, self.d)
        out = []
        for row in self.entries:
            s = zero
            for e, x in zip(row, v):
                s = s + e * x
            out.append(s)
        return out


def _eliminate(rows, d):
    """Forward elimination; returns (reduced rows, pivot column list)."""
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    pr = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(pr, len(rows)):
            if not rows[i][col].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[pr], rows[pivot_row] = rows[pivot_row], rows[pr]
        inv = rows[pr][col].inverse()
        rows[pr] = [e * inv for e in rows[pr]]
        for i in range(len(rows)):
            if i != pr and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [e - f * p for e, p in zip(rows[i], rows[pr])]
        pivots.append(col)
        pr += 1
        if pr == len(rows):
            break
    return rows, pivots


def exact_rank(M: ExactMatrix) -> int:
    _, pivots = _eliminate(M.entries, M.d)
    return len(pivots)


def exact_kernel(M: ExactMatrix) -> list:
    """Basis of the right null space; M.v = 0 exactly for every basis vector."""
    rows, pivots = _eliminate(M.entries, M.d)
    d = M.d
    zero = QuadExt.rational(0, d)
    one = QuadExt.rational(1, d)
    free = [c for c in range(M.cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * M.cols
        v[fc] = one
        for pr, pc in enumerate(pivots):
            v[pc] = -rows[pr][fc]
        basis.append(v)
    return basis


def exact_solve(M: ExactMatrix, b) -> list | None:
    """One exact solution of M.x = b, or None if inconsistent."""
    d = M.d
    b = [e if isinstance(e, QuadExt) else QuadExt.rational(e, d) for e in b]
    aug = [tuple(row) + (be,) for row, be in zip(M.entries, b)]
    rows, pivots = _eliminate(aug, d)
    if M.cols in pivots:
        return None
    zero = QuadExt.rational(0, d)
    x = [zero] * M.cols
    for pr, pc in enumerate(pivots):
        x[pc] = rows[pr][M.cols]
    return x
