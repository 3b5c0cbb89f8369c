from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from logconcavity.arith import FamilyKind, FamilySpec, alpha, g_value
from logconcavity.oracle import composition_q
from logconcavity.series import CoefficientTable, SeriesKind, exp_series, geo_series, p_table, product_series, q_table

from oracles import chebyshev_u_at_three_halves, fibonacci, integer_power_product, partitions_pentagonal

FAMILIES = [FamilyKind.SIGMA, FamilyKind.PSI]
sigma0 = lambda n: g_value(FamilySpec.sigma(0), n)
sigma1 = lambda n: g_value(FamilySpec.sigma(1), n)


def test_exp_series_examples():
    assert list(exp_series(lambda n: 1, 5).coeffs) == [1] * 6
    assert list(exp_series(sigma1, 6).coeffs) == partitions_pentagonal(6) == [1, 1, 2, 3, 5, 7, 11]
    assert list(exp_series(sigma0, 4).coeffs) == [1, 1, F(3, 2), F(11, 6), F(59, 24)]


@pytest.mark.parametrize("scaled", [True, False])
def test_exp_paths_agree(scaled):
    ref = exp_series(sigma0, 60, scaled=False)
    assert exp_series(sigma0, 60, scaled=scaled) == ref
    assert ref.coeffs[4] == F(59, 24)


def test_scaled_path_needs_integer_weights():
    with pytest.raises(ValueError):
        exp_series(lambda n: F(1, 2), 3, scaled=True)


def test_exp_series_resumes_from_prefix():
    whole = exp_series(sigma0, 80)
    assert exp_series(sigma0, 80, prefix=whole.coeffs[:31]) == whole
    assert exp_series(sigma0, 80, scaled=False, prefix=whole.coeffs[:31]) == whole


def test_order_zero_and_negative():
    assert exp_series(sigma0, 0).coeffs == (1,)
    assert geo_series(sigma0, 0).coeffs == (1,)
    with pytest.raises(ValueError):
        exp_series(sigma0, -1)


def test_geo_series_examples():
    assert list(geo_series(sigma0, 6).coeffs) == [1, 1, 3, 7, 18, 43, 108]
    assert list(geo_series(lambda n: n, 4).coeffs) == [1, 1, 3, 8, 21]
    assert list(geo_series(lambda n: 1, 5).coeffs) == [1, 1, 2, 4, 8, 16]


def test_geo_series_with_rational_weights():
    table = geo_series({1: F(1, 2), 2: F(1, 3)}, 2)
    assert list(table.coeffs) == [1, F(1, 2), F(1, 4) + F(1, 3)]


def test_product_series_examples():
    assert list(product_series(lambda n: 1, 6).coeffs) == [1, 1, 2, 3, 5, 7, 11]
    assert list(product_series(lambda n: n, 5).coeffs) == [1, 1, 3, 6, 13, 24]
    assert list(product_series(lambda n: 1 if n == 1 else 0, 3).coeffs) == [1, 1, 1, 1]


def test_product_series_against_binomial_expansion():
    for exponent in (lambda n: n, lambda n: n * n, lambda n: n % 3, lambda n: 2):
        assert list(product_series(exponent, 25).coeffs) == integer_power_product(exponent, 25)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=7), min_size=1, max_size=12))
def test_product_of_two_factors_multiplies(exps):
    # (1-t^n)^-a (1-t^n)^-b = (1-t^n)^-(a+b): exponents add under products
    N = len(exps)
    half = product_series(lambda n: exps[n - 1] / 2, N).coeffs
    whole = product_series(lambda n: exps[n - 1], N).coeffs
    square = [sum(half[i] * half[m - i] for i in range(m + 1)) for m in range(N + 1)]
    assert list(whole) == square


def test_p_table_examples():
    assert list(p_table(FamilySpec.sigma(2), 5).coeffs) == [1, 1, 3, 6, 13, 24]
    assert list(p_table(FamilySpec.psi(0), 4).coeffs) == [1] * 5
    a = p_table(FamilySpec.sigma(1), 30).coeffs
    assert a[26] ** 2 - a[25] * a[27] >= 0


def test_p_table_partitions_and_plane_partitions():
    assert p_table(FamilySpec.sigma(1), 300).integers() == partitions_pentagonal(300)
    assert p_table(FamilySpec.sigma(2), 60).integers() == integer_power_product(lambda n: n, 60)


def test_q_table_examples():
    assert q_table(FamilySpec.psi(1), 5).integers() == [1, 1, 3, 8, 21, 55]
    assert q_table(FamilySpec.sigma(0), 6).integers() == [1, 1, 3, 7, 18, 43, 108]
    psi2 = q_table(FamilySpec.psi(2), 4).integers()
    assert psi2 == [1] + [composition_q(FamilySpec.psi(2), n) for n in range(1, 5)]
    assert psi2 == [1, 1, 5, 18, 63]


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("d", range(7))
def test_exp_equals_euler_product(family, d):
    spec = FamilySpec(family, d)
    prod = product_series(lambda n: F(alpha(spec, n), n), 40)
    assert p_table(spec, 40).coeffs == prod.coeffs


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("d", range(5))
def test_geometric_equals_composition_sum(family, d):
    spec = FamilySpec(family, d)
    q = q_table(spec, 14).integers()
    assert q[1:] == [composition_q(spec, n) for n in range(1, 15)]


@pytest.mark.parametrize("family", FAMILIES)
def test_positivity(family):
    for d in range(9):
        spec = FamilySpec(family, d)
        for table in (p_table(spec, 200), q_table(spec, 200)):
            assert table[0] == 1
            assert all(c > 0 for c in table.coeffs)


def test_integrality():
    for family in FAMILIES:
        for d in (0, 3, 6):
            q_table(FamilySpec(family, d), 100).integers()
    # integer Euler-product exponents n^(d-1) for sigma_d, d >= 1
    for spec in (FamilySpec.sigma(1), FamilySpec.sigma(2), FamilySpec.sigma(3)):
        p_table(spec, 100).integers()
    # psi_1 has exponents phi(n)/n and sigma_0 has 1/n: both are rational
    assert p_table(FamilySpec.psi(1), 2)[2] == F(3, 2)
    assert p_table(FamilySpec.sigma(0), 4)[2].denominator == 2


def test_fibonacci_and_chebyshev():
    q = q_table(FamilySpec.psi(1), 500).integers()
    fib = fibonacci(1000)
    U = chebyshev_u_at_three_halves(499)
    for n in range(1, 501):
        assert q[n] == fib[2 * n] == U[n - 1]


def test_powers_of_two():
    q = q_table(FamilySpec.psi(0), 500).integers()
    assert all(q[n] == 2 ** (n - 1) for n in range(1, 501))


def test_table_shape_checks():
    table = q_table(FamilySpec.psi(0), 5)
    assert table.kind is SeriesKind.GEOMETRIC and table.order == 5 and len(table) == 6
    assert table.truncate(2).coeffs == (1, 1, 2)
    with pytest.raises(ValueError):
        table.truncate(6)
    with pytest.raises(IndexError):
        table[6]
    with pytest.raises(ValueError):
        CoefficientTable(None, SeriesKind.GEOMETRIC, 3, (F(1),))
    with pytest.raises(ValueError):
        p_table(FamilySpec.sigma(0), 3).integers()
