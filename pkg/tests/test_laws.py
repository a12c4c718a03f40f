import math
import random
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from freeplanar.errors import (BranchAmbiguity, BudgetExceeded, InsufficientMoments,
                               NonInvertible, NumericFailure)
from freeplanar.laws import (MomentSeries, atom_in_pair_compression, atom_in_vertex_compression,
                             cauchy_from_mgf, edge_law_alpha, fc_cup_moments,
                             fc_cup_moments_s_route, fc_cup_s_transforms, fp_density, fp_law,
                             fp_mgf_series, fp_moments, fp_support, free_joint_moment,
                             free_poisson_mgf, moments_from_s, my_relation_check, printed_s_x,
                             product_moments_free, s_multiply, s_transform, stieltjes_density)
from freeplanar.series import FormalSeries

import oracles


def test_fp_moment_examples():
    assert list(fp_moments(1, 4)) == [1, 1, 2, 5, 14]
    assert list(fp_moments(0, 4)) == [1, 0, 0, 0, 0]
    a = F(5, 3)
    m = fp_moments(a, 3)
    assert m[1] == a and m[2] == a ** 2 + a and m[3] == a ** 3 + 3 * a ** 2 + a


@pytest.mark.parametrize("alpha", [F(1), F(3, 2), F(2), F(1, 3)])
def test_fp_moments_count_noncrossing_partitions(alpha):
    assert list(fp_moments(alpha, 7)) == [oracles.free_poisson_moment(alpha, n) for n in range(8)]


@pytest.mark.parametrize("alpha", [F(1), F(3, 2), F(2), F(7, 2)])
def test_mgf_series_matches_recurrence(alpha):
    assert list(fp_mgf_series(alpha, 10).coeffs) == list(fp_moments(alpha, 10))


def test_cauchy_normalization_at_infinity():
    G = cauchy_from_mgf(free_poisson_mgf(1))
    z = 1e6
    # z G(z) = 1 + m1/z + O(z^-2)
    assert abs(z * G(z) - 1) <= 2 / z
    assert abs(z * G(z) - (1 + 1 / z)) <= 1e-8


def test_cauchy_branch_sign():
    G = cauchy_from_mgf(free_poisson_mgf(1))
    assert G(2 + 0.01j).imag < 0
    assert G(2 - 0.01j).imag > 0
    with pytest.raises(BranchAmbiguity):
        G(2.0)


@pytest.mark.parametrize("alpha", [F(1), F(3, 2), F(2)])
def test_cauchy_partial_sums(alpha):
    G = cauchy_from_mgf(free_poisson_mgf(alpha))
    R = fp_support(alpha)[1]
    for z in [10, -10, 10j, 10 * np.exp(0.7j)]:
        r = abs(z)
        bound = (R / r) ** 13 / (r - R)
        assert abs(cauchy_from_mgf(fp_mgf_series(alpha, 12))(z) - G(z)) <= bound
    assert abs(cauchy_from_mgf(fp_mgf_series(alpha, 40))(10 + 1j) - G(10 + 1j)) <= 1e-10


def test_stieltjes_examples():
    G = cauchy_from_mgf(free_poisson_mgf(1))
    assert stieltjes_density(G, 2.0) == pytest.approx(1 / (2 * math.pi), abs=1e-3)
    assert abs(stieltjes_density(G, 5.0)) <= 1e-6
    assert abs(stieltjes_density(G, -1.0)) <= 1e-6


def test_stieltjes_reports_bad_extrapolation():
    G = cauchy_from_mgf(free_poisson_mgf(1))
    with pytest.raises(NumericFailure):
        stieltjes_density(G, 0.0)


@pytest.mark.parametrize("alpha", [F(1), F(3, 2), F(2)])
def test_stieltjes_grid(alpha):
    G = cauchy_from_mgf(free_poisson_mgf(alpha))
    lo, hi = fp_support(alpha)
    for x in np.linspace(lo, hi, 103)[1:-1]:
        assert abs(stieltjes_density(G, x) - fp_density(alpha, x)) <= 1e-3


def test_density_examples():
    assert fp_support(1) == (0, 4)
    assert fp_support(4) == pytest.approx((1, 9))
    assert fp_density(1, 2) == pytest.approx(1 / (2 * math.pi))
    law = fp_law(F(1, 2))
    assert law.atoms == [(0.0, 0.5)]
    assert law.total_mass() - 0.5 == pytest.approx(0.5, abs=1e-6)


@pytest.mark.parametrize("alpha", [F(1), F(3, 2), F(2), F(1, 2), F(4)])
def test_law_mass_and_mean(alpha):
    law = fp_law(alpha)
    assert abs(law.total_mass() - 1) <= 1e-6
    assert abs(law.mean() - float(alpha)) <= 1e-6


@pytest.mark.parametrize("alpha", [1, 2])
def test_s_transform_free_poisson(alpha):
    S = s_transform(fp_moments(alpha, 5))
    assert S == FormalSeries([1], 4) / FormalSeries([alpha, 1], 4)


def test_s_transform_point_mass():
    c = F(3, 2)
    S = s_transform(MomentSeries(tuple(c ** n for n in range(6))))
    assert S == FormalSeries([1 / c], 4)


def test_s_transform_needs_mean():
    with pytest.raises(NonInvertible):
        s_transform(MomentSeries((1, 0, 1, 0, 2)))


def test_moments_from_s_order():
    S = s_transform(fp_moments(2, 6))
    with pytest.raises(InsufficientMoments):
        moments_from_s(S, 9)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=2, max_size=10))
def test_s_round_trip(values):
    if values[0] == 0:
        values[0] = F(1)
    m = MomentSeries((F(1),) + tuple(values))
    assert moments_from_s(s_transform(m)) == m


def test_s_multiply_identity():
    S = s_transform(fp_moments(F(3, 2), 6))
    assert s_multiply(S, FormalSeries([1], S.order)) == S


def test_free_joint_moment_examples():
    A, B = fp_moments(F(2), 6), fp_moments(F(3), 6)
    assert free_joint_moment(A, B, "ab") == A[1] * B[1]
    assert free_joint_moment(A, B, "abab") == A[1] ** 2 * B[2] + A[2] * B[1] ** 2 - A[1] ** 2 * B[1] ** 2
    centered_a = MomentSeries((1, 0, 2, 1, 5))
    centered_b = MomentSeries((1, 0, 3, 2, 4))
    for word in ["ab", "abab"]:
        assert free_joint_moment(centered_a, centered_b, word) == 0
    with pytest.raises(InsufficientMoments):
        free_joint_moment(MomentSeries((1, 1)), B, "aab")


def test_product_of_two_free_poissons():
    A = fp_moments(1, 8)
    via_s = moments_from_s(s_multiply(s_transform(A), s_transform(A)), 4)
    assert list(via_s)[:3] == [1, 1, 3]
    assert list(via_s) == [oracles.fuss_catalan(n) for n in range(5)]


def test_multiplicativity_oracle():
    rng = random.Random(8)
    pairs = [(fp_moments(F(3, 2), 6), fp_moments(F(2), 6))]
    for _ in range(4):
        pairs.append(tuple(MomentSeries((1,) + tuple(F(rng.randint(1, 9), rng.randint(1, 3)) for _ in range(6)))
                           for _ in range(2)))
    for A, B in pairs:
        via_s = moments_from_s(s_multiply(s_transform(A), s_transform(B)), 4)
        assert via_s == product_moments_free(A, B, 4)


def test_fc_cup_examples():
    m = fc_cup_moments(2, 3, 2)
    assert list(m) == [1, 6, 36 + 18 + 6]
    assert list(fc_cup_moments(2, 2, 3)) == [1, 4, 28, 252]
    with pytest.raises(BudgetExceeded):
        fc_cup_moments(2, 2, 7)


@pytest.mark.parametrize("da,db", [(2, 2), (3, 2), (F(5, 2), 4)])
def test_fc_cup_routes_agree(da, db):
    assert fc_cup_moments_s_route(da, db, 5) == fc_cup_moments(da, db, 5)


def test_fc_cup_brute_force():
    deltas = {"a": F(2), "b": F(2)}
    assert list(fc_cup_moments(2, 2, 3)) == [oracles.fc_cup_trace(n, deltas) for n in range(4)]


def test_fc_cup_s_factors():
    S = fc_cup_s_transforms(F(3), F(2), 5)
    assert S["y"] == FormalSeries([1], 4) / FormalSeries([1, 3], 4)
    assert S["r"] == FormalSeries([1], 4) / FormalSeries([2, 1], 4)


def test_printed_s_x_diverges():
    Sx = fc_cup_s_transforms(2, 2, 5)["x"]
    printed = printed_s_x(2, 2, 4)
    assert printed[0] == Sx[0]
    assert printed != Sx
    tau = [m / 2 for m in fc_cup_moments(2, 2, 5).m[1:]]
    assert list(moments_from_s(printed).m[1:]) != tau


def test_my_relation():
    rep = my_relation_check(F(3), 5)
    assert rep["corrected_matches"]
    assert not rep["printed_matches"]


def test_atom_helpers():
    assert edge_law_alpha(F(3), F(1)) == F(1, 3)
    # both helpers describe the atom 1 - alpha, in different normalizations
    assert atom_in_vertex_compression(F(1), F(3)) == 1 - edge_law_alpha(F(3), F(1))
    assert atom_in_pair_compression(F(3), F(1)) == (1 - edge_law_alpha(F(3), F(1))) * F(3, 4)
