import cmath
import itertools

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pod2exact.qseries import (
    IntSeries,
    PartitionConstraint,
    eta_quotient,
    eval_mock_num,
    eval_product_exp,
    eval_product_num,
    f_mock_series,
    omega_mock_series,
    partition_series,
    pochhammer_series,
    pod2_count_oracle,
    pod2_count_table,
    pod2_series_decomposition,
    pod2_series_identity,
    rho_omega_product_side,
    rho_series,
    series_inv,
    series_mul,
    zeta1_series,
    zeta2_series,
)


def brute_pod2(n):
    # enumerate partitions as weakly decreasing tuples
    def parts(rem, cap):
        if rem == 0:
            yield ()
            return
        for p in range(min(rem, cap), 0, -1):
            for rest in parts(rem - p, p):
                yield (p,) + rest

    count = 0
    for lam in parts(n, n):
        if lam and lam[0] % 2:
            continue
        if any(lam.count(p) > 2 for p in set(lam) if p % 2):
            continue
        count += 1
    return count


def naive_product(r, N):
    c = [1] + [0] * N
    for j in range(1, N // r + 1):
        step = r * j
        for i in range(N, step - 1, -1):
            c[i] -= c[i - step]
    return c


def test_pochhammer_examples():
    assert list(pochhammer_series(1, 7)) == [1, -1, -1, 0, 0, 1, 0, 1]
    assert list(pochhammer_series(2, 2)) == [1, 0, -1]
    assert list(pochhammer_series(1, 0)) == [1]


@pytest.mark.parametrize("r", [1, 2, 3, 6])
def test_pochhammer_matches_naive_product(r):
    assert list(pochhammer_series(r, 60)) == naive_product(r, 60)


def test_partition_examples():
    assert list(partition_series(1, 6)) == [1, 1, 2, 3, 5, 7, 11]
    assert list(partition_series(3, 2)) == [1, 0, 0]
    assert list(partition_series(1, 0)) == [1]


def test_series_mul_and_inv_examples():
    assert list(series_mul(IntSeries.from_list([1, 1]), IntSeries.from_list([1, -1]))) == [1, 0]
    assert list(series_inv(IntSeries.from_list([1, -1], order=8))) == [1] * 9
    N = 30
    prod = series_mul(pochhammer_series(1, N), partition_series(1, N))
    assert list(prod) == [1] + [0] * N


def test_inverse_rejects_bad_constant_term():
    with pytest.raises(ValueError):
        series_inv(IntSeries.from_list([2, 1]))
    with pytest.raises(ValueError):
        series_inv(IntSeries.from_list([0, 1]))


def test_arithmetic_keeps_min_order():
    a = IntSeries.from_list(range(1, 6))
    b = IntSeries.from_list([1, 2, 3])
    assert (a + b).order == 2
    assert (a * b).order == 2


series_st = st.lists(st.integers(-20, 20), min_size=9, max_size=9).map(lambda c: IntSeries.from_list([1] + c))


@given(series_st, series_st, series_st)
@settings(max_examples=50, deadline=None)
def test_mul_commutative_associative(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)


@given(series_st)
@settings(max_examples=50, deadline=None)
def test_double_inverse(a):
    assert series_inv(series_inv(a)) == a
    assert list(a * series_inv(a)) == [1] + [0] * a.order


def test_mock_theta_prefixes():
    assert list(rho_series(3))[:2] == [1, -1]
    assert list(omega_mock_series(8)) == [1, 2, 3, 4, 6, 8, 10, 14, 18]
    assert list(f_mock_series(8)) == [1, 1, -2, 3, -3, 3, -5, 7, -6]


def test_zeta_prefixes():
    assert zeta1_series(5)[0] == 1 and zeta1_series(5)[1] == 1
    assert zeta2_series(5)[0] == 1


def test_zeta_match_product_definition():
    N = 40
    P = lambda r: partition_series(r, N)
    assert zeta1_series(N) == P(6) * P(1) * series_inv(P(3))
    assert zeta2_series(N) == P(3) * P(2) * P(1) * series_inv(P(6) ** 3)


def test_eta_quotient_pow():
    assert eta_quotient({1: 1}, 20) == pochhammer_series(1, 20)
    assert eta_quotient({2: -3}, 20) == partition_series(2, 20) ** 3


def test_pod2_prefix_two_routes():
    assert list(pod2_series_identity(6)) == [1, 0, 1, 1, 3, 2, 5]
    assert list(pod2_series_decomposition(6)) == [1, 0, 1, 1, 3, 2, 5]


def test_identities_to_200():
    N = 200
    oracle = pod2_count_table(N)
    assert list(pod2_series_identity(N)) == oracle
    assert list(pod2_series_decomposition(N)) == oracle
    assert 2 * rho_series(N) + omega_mock_series(N) == rho_omega_product_side(N)


def test_oracle_examples():
    assert pod2_count_oracle(0) == 1
    assert pod2_count_oracle(1) == 0
    assert pod2_count_oracle(4) == 3
    assert pod2_count_oracle(5) == 2


def test_oracle_against_enumeration():
    for n in range(0, 23):
        assert pod2_count_oracle(n) == brute_pod2(n), n


def test_table_matches_per_n_oracle():
    table = pod2_count_table(80)
    assert table == [pod2_count_oracle(n) for n in range(81)]


def test_even_n_positive():
    table = pod2_count_table(200)
    assert all(table[n] >= 1 for n in range(2, 201, 2))


def test_unconstrained_oracle_gives_partitions():
    c = PartitionConstraint(largest_part_even=False, odd_multiplicity_cap=None)
    assert [pod2_count_oracle(n, c) for n in range(15)] == list(partition_series(1, 14))


def test_eval_product_num():
    direct = 1.0
    for j in range(1, 60):
        direct *= 1 - 0.1**j
    assert abs(eval_product_num(1, 0.1) - 1 / direct) < 1e-15
    assert eval_product_num(1, 0) == 1
    with pytest.raises(ValueError):
        eval_product_num(1, 1.0)


def test_eval_product_conjugation():
    t = 0.3 + 0.4j
    assert abs(eval_product_num(2, t.conjugate()) - eval_product_num(2, t).conjugate()) < 1e-14


def test_eval_product_matches_series():
    t = 0.35
    coeffs = partition_series(3, 80)
    assert abs(eval_product_num(3, t) - sum(c * t**i for i, c in enumerate(coeffs))) < 1e-13


def test_eval_product_exp_branch():
    # q^r with the exponent attached to w, not to the principal log of q
    w = 2.5 + 0.3j
    r = 0.5
    expected = eval_product_num(1, cmath.exp(2j * cmath.pi * r * w))
    assert abs(eval_product_exp(r, w) - expected) < 1e-15
    with mpmath.workdps(30):
        v = eval_product_exp(r, mpmath.mpc(2.5, 0.3))
        assert abs(complex(v) - expected) < 1e-14


@pytest.mark.parametrize("name,series", [("rho", rho_series), ("omega", omega_mock_series), ("f", f_mock_series)])
def test_mock_numeric_matches_series(name, series):
    q = 0.2 + 0.15j
    coeffs = series(120)
    assert abs(eval_mock_num(name, q) - sum(c * q**i for i, c in enumerate(coeffs))) < 1e-12


def test_mock_numeric_rejects_outside_disc():
    with pytest.raises(ValueError):
        eval_mock_num("omega", 1.0)
    with pytest.raises(ValueError):
        eval_mock_num("phi", 0.1)
