"""String rendering shared by reports and the CLI."""

from __future__ import annotations

import math
from fractions import Fraction

from .surd import QuadraticSurd


def is_infinite(x) -> bool:
    return isinstance(x, float) and math.isinf(x)


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, QuadraticSurd))


def exact_str(x) -> str:
    """Canonical exact string, or 9 significant digits for floats."""
    if is_infinite(x):
        return "∞" if x > 0 else "-∞"
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, QuadraticSurd):
        return str(x)
    if isinstance(x, float):
        return f"{x:.9g}"
    return str(x)


def float_str(x) -> str:
    if is_infinite(x):
        return exact_str(x)
    return f"{float(x):.9g}"


def value_str(x) -> str:
    """Exact rendering plus an approximation when the exact form is not a plain integer."""
    if isinstance(x, QuadraticSurd) and not x.is_rational():
        return f"{exact_str(x)} ≈ {float_str(x)}"
    if isinstance(x, Fraction) and x.denominator != 1:
        return f"{exact_str(x)} ≈ {float_str(x)}"
    return exact_str(x)


def free_group_str(t) -> str:
    if is_infinite(t):
        return "L(F_∞)"
    if isinstance(t, QuadraticSurd) and t.is_rational():
        t = t.x
    if isinstance(t, (int, Fraction)) and Fraction(t).denominator == 1:
        return f"L(F_{int(t)})"
    if isinstance(t, float) and t.is_integer():
        return f"L(F_{int(t)})"
    return f"L(F({exact_str(t)}))"


def json_value(x):
    """JSON-friendly value: ints stay ints, other exact values become strings."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else exact_str(x)
    if isinstance(x, QuadraticSurd):
        return json_value(x.x) if x.is_rational() else exact_str(x)
    if isinstance(x, float):
        return exact_str(x) if math.isinf(x) else x
    return x
