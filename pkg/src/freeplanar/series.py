"""Truncated formal power series with exact coefficients.

A series carries its truncation order explicitly: ``FormalSeries([c0..cN])``
knows coefficients up to ``z**N`` and nothing beyond. Every operation
returns the largest order it can guarantee.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .errors import NonInvertible


def _c(x):
    if isinstance(x, bool):
        raise TypeError("boolean coefficient")
    return Fraction(x) if isinstance(x, int) else x


def _is_zero(x) -> bool:
    return x == 0


class FormalSeries:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence, order: int | None = None):
        cs = [_c(x) for x in coeffs]
        if order is not None:
            if order < 0:
                raise ValueError("order must be nonnegative")
            cs = (cs + [Fraction(0)] * (order + 1))[: order + 1]
        if not cs:
            raise ValueError("a series needs at least its constant term")
        self.coeffs = tuple(cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int):
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    @classmethod
    def constant(cls, value, order: int) -> "FormalSeries":
        return cls([value], order)

    @classmethod
    def z(cls, order: int) -> "FormalSeries":
        return cls([0, 1], order)

    def truncate(self, order: int) -> "FormalSeries":
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        return FormalSeries(self.coeffs[: order + 1])

    def _pair(self, other):
        if not isinstance(other, FormalSeries):
            other = FormalSeries.constant(other, self.order)
        n = min(self.order, other.order)
        return other, n

    def __add__(self, other):
        other, n = self._pair(other)
        return FormalSeries([self.coeffs[k] + other.coeffs[k] for k in range(n + 1)])

    __radd__ = __add__

    def __neg__(self):
        return FormalSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        other, _ = self._pair(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        """Cauchy product."""
        if not isinstance(other, FormalSeries):
            return self.scale(other)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n + 1):
            acc = Fraction(0)
            for i in range(k + 1):
                if not _is_zero(a[i]) and not _is_zero(b[k - i]):
                    acc = acc + a[i] * b[k - i]
            out.append(acc)
        return FormalSeries(out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "FormalSeries":
        c = _c(c)
        return FormalSeries([x * c for x in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, FormalSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def close_to(self, other: "FormalSeries", tol: float) -> bool:
        n = min(self.order, other.order)
        return all(abs(self.coeffs[k] - other.coeffs[k]) <= tol for k in range(n + 1))

    def mul_z(self) -> "FormalSeries":
        return FormalSeries([Fraction(0)] + list(self.coeffs))

    def div_z(self) -> "FormalSeries":
        if not _is_zero(self.coeffs[0]):
            raise NonInvertible("constant term must vanish to divide by z")
        if self.order == 0:
            raise ValueError("nothing is known after dividing an order-0 series by z")
        return FormalSeries(self.coeffs[1:])

    def inverse(self) -> "FormalSeries":
        """Multiplicative inverse; needs a nonzero constant term."""
        a = self.coeffs
        if _is_zero(a[0]):
            raise NonInvertible("constant term is zero")
        inv0 = 1 / a[0]
        out = [inv0]
        for k in range(1, len(a)):
            acc = Fraction(0)
            for i in range(1, k + 1):
                acc = acc + a[i] * out[k - i]
            out.append(-acc * inv0)
        return FormalSeries(out)

    def __truediv__(self, other):
        if isinstance(other, FormalSeries):
            return self * other.inverse()
        return self.scale(1 / _c(other))

    def sqrt(self) -> "FormalSeries":
        """Square root with positive constant term.

        The constant term's root is exact when it is a rational square and
        a float otherwise.
        """
        a = self.coeffs
        r0 = _sqrt_scalar(a[0])
        if _is_zero(r0):
            raise NonInvertible("square root needs a nonzero constant term")
        out = [r0]
        for k in range(1, len(a)):
            acc = a[k]
            for i in range(1, k):
                acc = acc - out[i] * out[k - i]
            out.append(acc / (2 * r0))
        return FormalSeries(out)

    def compose(self, g: "FormalSeries") -> "FormalSeries":
        """``self(g(z))``; g must have zero constant term."""
        if not _is_zero(g.coeffs[0]):
            raise NonInvertible("inner series must have zero constant term")
        n = min(self.order, g.order)
        g = g.truncate(n)
        result = FormalSeries.constant(self.coeffs[n], n)
        for k in range(n - 1, -1, -1):
            result = result * g + self.coeffs[k]
        return result

    def reversion(self) -> "FormalSeries":
        """Compositional inverse by Lagrange inversion.

        Needs ``c0 == 0`` and ``c1 != 0``; the result has the same order.
        """
        a = self.coeffs
        if not _is_zero(a[0]):
            raise NonInvertible("series to invert must have zero constant term")
        if self.order < 1 or _is_zero(a[1]):
            raise NonInvertible("series to invert needs a nonzero linear term")
        n = self.order
        h = FormalSeries(a[1:])          # self = z * h, order n-1
        hinv = h.inverse()
        out = [Fraction(0)]
        power = FormalSeries.constant(1, n - 1)
        for k in range(1, n + 1):
            power = power * hinv
            out.append(power.coeffs[k - 1] / k)
        return FormalSeries(out)

    def evaluate(self, z):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __repr__(self):
        return f"FormalSeries({[str(c) for c in self.coeffs]})"


def _sqrt_scalar(x):
    if isinstance(x, Fraction) and x >= 0:
        n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
        if n * n == x.numerator and d * d == x.denominator:
            return Fraction(n, d)
    return math.sqrt(float(x))
