"""Exact arithmetic in a real quadratic field Q(sqrt d).

``QuadraticSurd(x, y, d)`` is ``x + y*sqrt(d)`` with rational ``x``, ``y``
and squarefree ``d > 1``. It interoperates with ints and Fractions so the
graph engine can run unchanged over Q, Q(sqrt d) or floats.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational


def _squarefree_split(n: int) -> tuple[int, int]:
    """Write n = k**2 * d with d squarefree; return (k, d)."""
    k = 1
    p = 2
    m = n
    while p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
            k *= p
        p += 1
    return k, m


class QuadraticSurd:
    __slots__ = ("x", "y", "d")

    def __init__(self, x=0, y=0, d: int = 2):
        if d < 2:
            raise ValueError("d must be at least 2")
        k, core = _squarefree_split(d)
        self.x = Fraction(x)
        self.y = Fraction(y) * k
        self.d = core if core > 1 else d
        if core == 1:
            # sqrt(d) was a perfect square
            self.x += self.y
            self.y = Fraction(0)
            self.d = 2

    @classmethod
    def sqrt(cls, n) -> "QuadraticSurd":
        n = Fraction(n)
        if n < 0:
            raise ValueError("negative radicand")
        # sqrt(p/q) = sqrt(p*q)/q
        k, d = _squarefree_split(n.numerator * n.denominator)
        if d == 1:
            return cls(Fraction(k, n.denominator), 0)
        return cls(0, Fraction(k, n.denominator), d)

    def _lift(self, other):
        if isinstance(other, QuadraticSurd):
            if other.y != 0 and self.y != 0 and other.d != self.d:
                raise ValueError("mixing different quadratic fields")
            return other
        if isinstance(other, Rational):
            return QuadraticSurd(Fraction(other), 0, self.d)
        return None

    def _field(self, other: "QuadraticSurd") -> int:
        return self.d if self.y != 0 else other.d

    def __float__(self):
        return float(self.x) + float(self.y) * math.sqrt(self.d)

    def is_rational(self) -> bool:
        return self.y == 0

    def __add__(self, other):
        if isinstance(other, float):
            return float(self) + other
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadraticSurd(self.x + o.x, self.y + o.y, self._field(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd(-self.x, -self.y, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, float):
            return float(self) - other
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, float):
            return float(self) * other
        o = self._lift(other)
        if o is None:
            return NotImplemented
        d = self._field(o)
        return QuadraticSurd(self.x * o.x + self.y * o.y * d, self.x * o.y + self.y * o.x, d)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadraticSurd":
        return QuadraticSurd(self.x, -self.y, self.d)

    def norm(self) -> Fraction:
        return self.x * self.x - self.y * self.y * self.d

    def __truediv__(self, other):
        if isinstance(other, float):
            return float(self) / other
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero surd")
        num = self * o.conjugate()
        return QuadraticSurd(num.x / n, num.y / n, num.d)

    def __rtruediv__(self, other):
        if isinstance(other, float):
            return other / float(self)
        return QuadraticSurd(Fraction(other), 0, self.d) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return float(self) ** n
        base = self if n >= 0 else 1 / self
        out = QuadraticSurd(1, 0, self.d)
        for _ in range(abs(n)):
            out = out * base
        return out

    def sign(self) -> int:
        sx = (self.x > 0) - (self.x < 0)
        sy = (self.y > 0) - (self.y < 0)
        if sy == 0:
            return sx
        if sx == 0 or sx == sy:
            return sy
        # opposite signs: compare magnitudes squared
        lhs, rhs = self.x * self.x, self.y * self.y * self.d
        if lhs == rhs:
            return 0
        return sx if lhs > rhs else sy

    def _cmp(self, other):
        if isinstance(other, float):
            a = float(self)
            return (a > other) - (a < other)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return (self - o).sign()

    def __eq__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c == 0

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __hash__(self):
        if self.y == 0:
            return hash(self.x)
        return hash((self.x, self.y, self.d))

    def __repr__(self):
        return f"QuadraticSurd({self})"

    def __str__(self):
        return format_surd(self.x, self.y, self.d)


def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_surd(x: Fraction, y: Fraction, d: int) -> str:
    """Render ``x + y*sqrt(d)`` with the radical term first, e.g. ``10√2-13``."""
    if y == 0:
        return _frac(x)
    root = f"√{d}"
    if y == 1:
        head = root
    elif y == -1:
        head = "-" + root
    elif y.denominator == 1:
        head = f"{y.numerator}{root}"
    else:
        head = f"({_frac(y)}){root}"
    if x == 0:
        return head
    return f"{head}+{_frac(x)}" if x > 0 else f"{head}-{_frac(-x)}"


_TERM = re.compile(
    r"""\s*([+-]?)\s*
        (?:
          (?P<coef>\d+(?:/\d+)?)?\s*\*?\s*(?:√|sqrt)\(?(?P<rad>\d+)\)?
        | (?P<num>\d+(?:\.\d+)?(?:/\d+)?)
        )""",
    re.VERBOSE,
)


def parse_exact(text: str):
    """Parse ``"3/2"``, ``"sqrt2"``, ``"1+√2"`` or ``"10*sqrt(2)-13"``.

    Returns a Fraction when no radical occurs, else a QuadraticSurd.
    Decimal literals are converted exactly (``"0.5"`` is 1/2).
    """
    s = text.strip().replace("−", "-")
    pos = 0
    x = Fraction(0)
    y = Fraction(0)
    d = None
    if not s:
        raise ValueError("empty number")
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse number {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        if m.group("rad"):
            coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
            r = QuadraticSurd.sqrt(int(m.group("rad")))
            if r.y == 0:
                x += sign * coef * r.x
            else:
                if d is not None and d != r.d:
                    raise ValueError("only one radical is supported")
                d = r.d
                y += sign * coef * r.y
        else:
            x += sign * Fraction(m.group("num"))
        pos = m.end()
        if pos < len(s) and s[pos:].strip() and s[pos:].lstrip()[0] not in "+-":
            raise ValueError(f"cannot parse number {text!r}")
    if d is None or y == 0:
        return x
    return QuadraticSurd(x, y, d)
