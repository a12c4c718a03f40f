"""Exact loop-weight bookkeeping.

A :class:`ScalarPoly` is a finite linear combination of Laurent monomials
``delta_a**i * delta_b**j * ...`` with rational (or float) coefficients.
Closed loops of color ``c`` multiply a coefficient by ``delta_c``; division
by loop parameters, needed for normalized traces and cup embeddings, gives
negative exponents.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

Coeff = Union[Fraction, float]
Monomial = tuple  # sorted tuple of (color, exponent) with exponent != 0


def as_coeff(value) -> Coeff:
    """Coerce *value* to an exact Fraction when possible."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, float):
        return value
    raise TypeError(f"unsupported coefficient {value!r}")


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for color, e in m2:
        exps[color] = exps.get(color, 0) + e
    return tuple(sorted((c, e) for c, e in exps.items() if e))


class ScalarPoly:
    """Immutable Laurent polynomial in the loop parameters."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean: dict[Monomial, Coeff] = {}
        if terms:
            for mono, c in terms.items():
                c = as_coeff(c)
                if c != 0:
                    clean[mono] = c
        self._terms = clean
        self._hash = None

    # construction helpers
    @classmethod
    def const(cls, value) -> "ScalarPoly":
        return cls({(): value})

    @classmethod
    def delta(cls, color: str, power: int = 1) -> "ScalarPoly":
        return cls({((color, power),) if power else (): 1})

    @classmethod
    def loops(cls, counts: Mapping[str, int]) -> "ScalarPoly":
        mono = tuple(sorted((c, e) for c, e in counts.items() if e))
        return cls({mono: 1})

    @property
    def terms(self) -> dict[Monomial, Coeff]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(m == () for m in self._terms)

    def constant(self) -> Coeff:
        return self._terms.get((), Fraction(0))

    def colors(self) -> set[str]:
        return {c for m in self._terms for c, _ in m}

    # arithmetic
    @staticmethod
    def coerce(other) -> "ScalarPoly":
        if isinstance(other, ScalarPoly):
            return other
        return ScalarPoly.const(other)

    def __add__(self, other):
        try:
            other = ScalarPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return ScalarPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return ScalarPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = ScalarPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return ScalarPoly.coerce(other) - self

    def __mul__(self, other):
        try:
            other = ScalarPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[Monomial, Coeff] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return ScalarPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers only for monomials; use delta()")
        result = ScalarPoly.const(1)
        for _ in range(n):
            result = result * self
        return result

    def scale(self, c) -> "ScalarPoly":
        c = as_coeff(c)
        return ScalarPoly({m: v * c for m, v in self._terms.items()})

    # comparison
    def __eq__(self, other):
        if isinstance(other, (int, Fraction, float)):
            other = ScalarPoly.const(other)
        if not isinstance(other, ScalarPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def close_to(self, other, tol: float) -> bool:
        diff = self - ScalarPoly.coerce(other)
        return all(abs(c) <= tol for _, c in diff.items())

    # evaluation
    def evaluate(self, deltas: Mapping[str, object]):
        """Substitute numeric loop parameters.

        Colors missing from *deltas* stay symbolic, so the result is a
        ScalarPoly unless every color is assigned, in which case a plain
        number is returned.
        """
        out: dict[Monomial, object] = {}
        for mono, c in self._terms.items():
            value = c
            rest = []
            for color, e in mono:
                if color in deltas and deltas[color] is not None:
                    d = deltas[color]
                    value = value * (d ** e if e > 0 else 1 / (d ** -e))
                else:
                    rest.append((color, e))
            key = tuple(rest)
            out[key] = out.get(key, 0) + value
        if all(k == () for k in out):
            return out.get((), Fraction(0))
        return ScalarPoly(out)

    def __repr__(self):
        return f"ScalarPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mono in sorted(self._terms, key=_mono_sort_key):
            c = self._terms[mono]
            factors = []
            for color, e in mono:
                name = f"d_{color}"
                factors.append(name if e == 1 else f"{name}^{e}")
            body = "*".join(factors)
            if not body:
                parts.append(format_number(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{format_number(c)}*{body}")
        text = " + ".join(parts)
        return text.replace("+ -", "- ")


def _mono_sort_key(mono: Monomial):
    degree = sum(e for _, e in mono)
    return (-degree, tuple((c, -e) for c, e in mono))


def format_number(x) -> str:
    """Canonical string for a rational or float."""
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        return f"{x:.9g}"
    return str(x)


def poly_sum(polys: Iterable[ScalarPoly]) -> ScalarPoly:
    out: dict[Monomial, Coeff] = {}
    for p in polys:
        for m, c in p.items():
            out[m] = out.get(m, 0) + c
    return ScalarPoly(out)


ZERO = ScalarPoly()
ONE = ScalarPoly.const(1)
