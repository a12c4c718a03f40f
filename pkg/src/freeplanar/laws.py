"""Moment sequences, free Poisson laws and the S-transform pipeline.

The S-transform convention: with ``M(z) = sum m_n z^n`` and
``psi = M - 1``, let ``chi`` be the compositional inverse of ``psi``; then
``S(z) = (1 + z) chi(z) / z``. Free multiplicative convolution multiplies
S-transforms as power series.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from scipy import integrate

from .config import tolerance
from .errors import (BranchAmbiguity, BudgetExceeded, InsufficientMoments, NonInvertible,
                     NumericFailure)
from .series import FormalSeries


def _num(x):
    if isinstance(x, bool):
        raise TypeError("boolean is not a number")
    return Fraction(x) if isinstance(x, int) else x


@dataclass(frozen=True)
class MomentSeries:
    m: tuple

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(_num(x) for x in self.m))
        if not self.m or self.m[0] != 1:
            raise ValueError("moment series must start with m[0] = 1")

    @property
    def order(self) -> int:
        return len(self.m) - 1

    def __getitem__(self, k):
        return self.m[k]

    def __len__(self):
        return len(self.m)

    def __iter__(self):
        return iter(self.m)

    def as_series(self) -> FormalSeries:
        return FormalSeries(self.m)

    def scaled(self, c) -> "MomentSeries":
        """Moments of c times the variable."""
        c = _num(c)
        return MomentSeries(tuple(x * c ** n for n, x in enumerate(self.m)))


# ---------------------------------------------------------------- free Poisson

def fp_moments(alpha, N: int) -> MomentSeries:
    """m_n = (alpha - 1) m_{n-1} + sum_k m_k m_{n-1-k}."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    alpha = _num(alpha)
    m = [Fraction(1)]
    for n in range(1, N + 1):
        acc = (alpha - 1) * m[n - 1]
        for k in range(n):
            acc = acc + m[k] * m[n - 1 - k]
        m.append(acc)
    return MomentSeries(tuple(m))


def fp_mgf_series(alpha, N: int) -> FormalSeries:
    """Taylor coefficients of the branch of phi with phi(0) = 1.

    phi solves z phi^2 + ((alpha - 1) z - 1) phi + 1 = 0, so
    phi = (1 - (alpha-1) z - sqrt((1 - (alpha-1) z)^2 - 4 z)) / (2 z).
    """
    alpha = _num(alpha)
    order = N + 1
    lin = FormalSeries([1, -(alpha - 1)], order)
    radicand = lin * lin - FormalSeries.z(order).scale(4)
    numerator = lin - radicand.sqrt()
    return numerator.div_z().scale(Fraction(1, 2))


# ---------------------------------------------------------------- Cauchy transforms

@dataclass(frozen=True)
class QuadraticMGF:
    """A moment generating function given as a root of A phi^2 + B phi + C = 0.

    ``A``, ``B``, ``C`` are callables of z.
    """

    A: Callable[[complex], complex]
    B: Callable[[complex], complex]
    C: Callable[[complex], complex]
    support: tuple[float, float] | None = None


def free_poisson_mgf(alpha) -> QuadraticMGF:
    a = float(alpha)
    lo, hi = fp_support(a)
    return QuadraticMGF(lambda z: z, lambda z: (a - 1) * z - 1, lambda z: 1.0 + 0j, (lo, hi))


class CauchyTransform:
    """Evaluator z -> G(z) = z^-1 phi(1/z)."""

    def __init__(self, phi, terms: int | None = None):
        self.phi = phi
        self.terms = terms

    def __call__(self, z: complex) -> complex:
        z = complex(z)
        if isinstance(self.phi, FormalSeries):
            n = self.phi.order if self.terms is None else min(self.terms, self.phi.order)
            w = 1 / z
            acc = 0j
            for c in reversed(self.phi.coeffs[: n + 1]):
                acc = acc * w + float(c)
            return acc * w
        return self._closed_form(z)

    def _closed_form(self, z: complex) -> complex:
        u = 1 / z
        A, B, C = self.phi.A(u), self.phi.B(u), self.phi.C(u)
        disc = cmath.sqrt(B * B - 4 * A * C)
        if A == 0:
            roots = [-C / B]
        else:
            roots = [(-B + disc) / (2 * A), (-B - disc) / (2 * A)]
        gs = [u * r for r in roots]
        if len(gs) == 1:
            return gs[0]
        if z.imag != 0:
            want = -1 if z.imag > 0 else 1
            ok = [g for g in gs if (g.imag > 0) - (g.imag < 0) == want]
            if len(ok) != 1:
                raise BranchAmbiguity(f"sign test does not single out a branch at z={z}")
            return ok[0]
        if any(abs(g.imag) > 1e-14 * max(1.0, abs(g)) for g in gs):
            raise BranchAmbiguity(f"real point {z} lies on the support")
        gs.sort(key=abs)
        if abs(abs(gs[0]) - abs(gs[1])) <= 1e-14 * abs(gs[1]):
            raise BranchAmbiguity(f"both branches have equal size at z={z}")
        return gs[0]


def cauchy_from_mgf(phi, terms: int | None = None) -> CauchyTransform:
    """Cauchy transform from a series (partial sums) or a QuadraticMGF (branch test)."""
    return CauchyTransform(phi, terms)


def stieltjes_density(G: Callable[[complex], complex], x: float,
                      y_seq: Sequence[float] = (1e-3, 1e-4, 1e-5), tol: float | None = None) -> float:
    """-(1/pi) Im G(x + iy), extrapolated to y = 0.

    Richardson extrapolation assumes an error linear in y; the two
    first-level estimates are combined at second level and must agree to
    within *tol* (relative to max(1, |value|)).
    """
    tol = tolerance(1e-3) if tol is None else tol
    ys = list(y_seq)
    vals = [-G(complex(x, y)).imag / math.pi for y in ys]
    if len(ys) == 1:
        return vals[0]
    level = [(vals[i + 1] * ys[i] - vals[i] * ys[i + 1]) / (ys[i] - ys[i + 1]) for i in range(len(ys) - 1)]
    if len(level) == 1:
        return level[0]
    spread = max(level) - min(level)
    if not all(math.isfinite(v) for v in level) or spread > tol * max(1.0, abs(level[-1])):
        raise NumericFailure(f"density extrapolation at x={x} does not settle (spread {spread:.3g})")
    if len(level) == 2:
        r = ys[1] / ys[2] if ys[2] else 10.0
        q = ys[0] / ys[1]
        # second level for an error term quadratic in y
        ratio = q * r
        return (ratio * level[1] - level[0]) / (ratio - 1)
    return level[-1]


# ---------------------------------------------------------------- laws

def fp_support(alpha) -> tuple[float, float]:
    s = math.sqrt(float(alpha))
    return (s - 1) ** 2, (s + 1) ** 2


def fp_density(alpha, x: float) -> float:
    """sqrt(4x - ((alpha-1) - x)^2) / (2 pi x) on the support, 0 elsewhere."""
    a = float(alpha)
    lo, hi = fp_support(a)
    if x <= 0 or x < lo or x > hi:
        return 0.0
    rad = 4 * x - ((a - 1) - x) ** 2
    return math.sqrt(max(rad, 0.0)) / (2 * math.pi * x)


@dataclass
class Law:
    density: Callable[[float], float]
    support: tuple[float, float]
    atoms: list[tuple[float, float]] = field(default_factory=list)

    def _quad(self, f) -> float:
        lo, hi = self.support
        if hi <= lo:
            return 0.0
        value, _ = integrate.quad(f, lo, hi, limit=400, epsabs=1e-13, epsrel=1e-12)
        return value

    def total_mass(self) -> float:
        return self._quad(self.density) + sum(m for _, m in self.atoms)

    def mean(self) -> float:
        return self._quad(lambda x: x * self.density(x)) + sum(x * m for x, m in self.atoms)

    def sample(self, xs: Sequence[float]) -> list[tuple[float, float]]:
        return [(x, self.density(x)) for x in xs]


def fp_law(alpha) -> Law:
    a = float(alpha)
    atoms = [(0.0, 1 - a)] if a < 1 else []
    return Law(lambda x: fp_density(a, x), fp_support(a), atoms)


def edge_law_alpha(mu_v, mu_w):
    """Parameter alpha = mu_small / mu_big of the edge law on the heavier vertex."""
    big, small = (mu_v, mu_w) if mu_v >= mu_w else (mu_w, mu_v)
    return _num(small) / _num(big)


def atom_in_pair_compression(mu_v, mu_w):
    """Atom at 0 seen inside p_v + p_w: (mu_v - mu_w) / (mu_v + mu_w)."""
    mu_v, mu_w = _num(mu_v), _num(mu_w)
    return (mu_v - mu_w) / (mu_v + mu_w)


def atom_in_vertex_compression(tr_pv, tr_pw):
    """Atom at 0 seen inside the heavier projection: (Tr p_w - Tr p_v) / Tr p_w."""
    tr_pv, tr_pw = _num(tr_pv), _num(tr_pw)
    return (tr_pw - tr_pv) / tr_pw


# ---------------------------------------------------------------- S-transform

def s_transform(m: MomentSeries) -> FormalSeries:
    if m.order < 1 or m[1] == 0:
        raise NonInvertible("S-transform needs a nonzero first moment")
    psi = FormalSeries(m.m) - 1
    chi = psi.reversion()
    return chi.div_z() * FormalSeries([1, 1], chi.order - 1)


def s_multiply(Sx: FormalSeries, Sy: FormalSeries) -> FormalSeries:
    """Product of S-transforms as power series (Cauchy product)."""
    return Sx * Sy


def moments_from_s(S: FormalSeries, N: int | None = None) -> MomentSeries:
    """Invert the pipeline: chi = z S / (1 + z), psi = reversion of chi, M = 1 + psi."""
    if S[0] == 0:
        raise NonInvertible("S-transform with zero constant term")
    top = S.order + 1
    N = top if N is None else N
    if N > top:
        raise InsufficientMoments(f"order {S.order} S-transform gives moments up to {top}")
    chi = (S * FormalSeries([1, 1], S.order).inverse()).mul_z()
    psi = chi.reversion()
    return MomentSeries((Fraction(1),) + tuple(psi.coeffs[1: N + 1]))


# ---------------------------------------------------------------- free products

def free_joint_moment(mA: MomentSeries, mB: MomentSeries, pattern) -> object:
    """tau of a word in two free variables, e.g. ``"abab"``.

    Adjacent equal letters are merged; the value follows from expanding
    every factor as (centered part + mean) and dropping alternating
    products of centered parts.
    """
    word = [ch for ch in pattern]
    if any(ch not in "ab" for ch in word):
        raise ValueError("pattern letters must be 'a' or 'b'")
    factors = []
    for ch in word:
        if factors and factors[-1][0] == ch:
            factors[-1] = (ch, factors[-1][1] + 1)
        else:
            factors.append((ch, 1))
    if len(factors) > 1 and factors[0][0] == factors[-1][0]:
        # cyclic merge keeps the recursion short; tau is tracial
        ch, k = factors.pop()
        factors[0] = (ch, factors[0][1] + k)
    need = {"a": 0, "b": 0}
    for ch, k in factors:
        need[ch] = max(need[ch], k)
    for ch, mom in (("a", mA), ("b", mB)):
        if need[ch] > mom.order:
            raise InsufficientMoments(f"need moment {need[ch]} of {ch}")
    polys = tuple((ch, _monomial(k)) for ch, k in factors)
    return _JointMoments(mA.m, mB.m).value(polys)


def _monomial(k: int) -> tuple:
    return tuple([Fraction(0)] * k + [Fraction(1)])


class _JointMoments:
    def __init__(self, ma, mb):
        self.mom = {"a": ma, "b": mb}
        self.value = lru_cache(maxsize=None)(self._value)

    def tau1(self, ch: str, poly: tuple):
        mom = self.mom[ch]
        if len(poly) - 1 >= len(mom):
            raise InsufficientMoments(f"need moment {len(poly) - 1} of {ch}")
        return sum((c * mom[k] for k, c in enumerate(poly)), Fraction(0))

    def _value(self, polys: tuple):
        n = len(polys)
        if n == 0:
            return Fraction(1)
        if n == 1:
            return self.tau1(*polys[0])
        means = [self.tau1(ch, p) for ch, p in polys]
        centered = [(ch, (p[0] - mu,) + p[1:]) for (ch, p), mu in zip(polys, means)]
        total = Fraction(0)
        for mask in range(1, 1 << n):
            coeff = Fraction(1)
            rest = []
            for i in range(n):
                if mask >> i & 1:
                    coeff = coeff * means[i]
                else:
                    rest.append(centered[i])
            if coeff == 0:
                continue
            total = total + coeff * self.value(_merge(rest))
        return total


def _poly_mul(p: tuple, q: tuple) -> tuple:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return tuple(out)


def _merge(factors: list) -> tuple:
    out: list = []
    for ch, p in factors:
        if out and out[-1][0] == ch:
            out[-1] = (ch, _poly_mul(out[-1][1], p))
        else:
            out.append((ch, p))
    if len(out) > 1 and out[0][0] == out[-1][0]:
        ch, p = out.pop()
        out[0] = (ch, _poly_mul(p, out[0][1]))
    return tuple(out)


def product_moments_free(mA: MomentSeries, mB: MomentSeries, N: int) -> MomentSeries:
    """tau((ab)^n) for n = 0..N, a and b free."""
    return MomentSeries((Fraction(1),) + tuple(free_joint_moment(mA, mB, "ab" * n) for n in range(1, N + 1)))


# ---------------------------------------------------------------- Fuss-Catalan cup

CUP_BUDGET = 6


def fc_cup_moments(delta_a=None, delta_b=None, N: int = 4):
    """Traces of powers of the a-over-b double cup by closure enumeration.

    With numeric loop parameters the result is a MomentSeries; with
    ``None`` for both the exact polynomials are returned as a list.
    """
    if N > CUP_BUDGET:
        raise BudgetExceeded(f"closure enumeration is limited to N <= {CUP_BUDGET}")
    from .graded import double_cup, moments
    polys = moments(double_cup("a", "b"), N)
    deltas = {k: _num(v) for k, v in (("a", delta_a), ("b", delta_b)) if v is not None}
    if len(deltas) < 2:
        return polys
    return MomentSeries(tuple(p.evaluate(deltas) for p in polys))


def fc_cup_s_transforms(delta_a, delta_b, N: int) -> dict[str, FormalSeries]:
    """S-transforms of the two free factors y and r, and of their product x."""
    da, db = _num(delta_a), _num(delta_b)
    y = fp_moments(1 / da, N).scaled(da)
    r = fp_moments(db, N)
    Sy, Sr = s_transform(y), s_transform(r)
    return {"y": Sy, "r": Sr, "x": s_multiply(Sy, Sr)}


def fc_cup_moments_s_route(delta_a, delta_b, N: int) -> MomentSeries:
    """Cup moments from the S-transform product; m_n = delta_a tau(x^n) for n >= 1."""
    da = _num(delta_a)
    Sx = fc_cup_s_transforms(delta_a, delta_b, N)["x"]
    tau = moments_from_s(Sx, N)
    return MomentSeries((Fraction(1),) + tuple(da * t for t in tau.m[1:]))


def printed_s_x(delta_a, delta_b, order: int) -> FormalSeries:
    """Series of (z+1)^2 (z-1)(da z-1) / (((db-1) z + db)((da-1) z + 1))."""
    da, db = _num(delta_a), _num(delta_b)
    one_z = FormalSeries([1, 1], order)
    num = one_z * one_z * FormalSeries([-1, 1], order) * FormalSeries([-1, da], order)
    den = FormalSeries([db, db - 1], order) * FormalSeries([1, da - 1], order)
    return num / den


def my_relation_check(delta_a, N: int) -> dict:
    """Compare both forms of the relation between y and the single-color cup.

    Corrected: M_y = (M_cup + delta_a - 1) / delta_a.
    As printed: M_y = M_cup delta_a + (delta_a - 1) / delta_a.
    """
    da = _num(delta_a)
    cup = fp_moments(da, N)
    y = fp_moments(1 / da, N).scaled(da)
    corrected = [(cup[0] + da - 1) / da] + [c / da for c in cup.m[1:]]
    printed = [cup[0] * da + (da - 1) / da] + [c * da for c in cup.m[1:]]
    return {
        "y_moments": list(y.m),
        "corrected": corrected,
        "printed": printed,
        "corrected_matches": corrected == list(y.m),
        "printed_matches": printed == list(y.m),
    }
