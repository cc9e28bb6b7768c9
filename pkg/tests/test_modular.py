import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from pod2exact.modular import (
    UnitPhase,
    canonical_inverse,
    dedekind_sum,
    eta_phase,
    farey_neighbors,
    farey_sequence,
    inverse_modulus,
    kronecker_symbol,
    omega_multiplier,
)


def test_kronecker_examples():
    assert kronecker_symbol(0, 1) == 1
    assert kronecker_symbol(-1, 3) == -1
    assert kronecker_symbol(2, 7) == 1


def test_kronecker_against_sympy():
    for a in range(-30, 31):
        for n in range(-30, 31):
            assert kronecker_symbol(a, n) == sympy.kronecker_symbol(a, n), (a, n)


def test_dedekind_examples():
    assert dedekind_sum(1, 2) == 0
    assert dedekind_sum(1, 3) == Fraction(1, 18)
    assert dedekind_sum(5, 1) == 0
    with pytest.raises(ValueError):
        dedekind_sum(2, 4)


def test_dedekind_reciprocity():
    for k in range(2, 30):
        for h in range(1, 30):
            if math.gcd(h, k) == 1:
                lhs = dedekind_sum(h, k) + dedekind_sum(k, h)
                assert lhs == Fraction(-1, 4) + Fraction(h * h + k * k + 1, 12 * h * k)


def test_unit_phase_normalized():
    assert UnitPhase(Fraction(5, 4)).r == Fraction(1, 4)
    assert UnitPhase(Fraction(-1, 3)).r == Fraction(2, 3)
    assert UnitPhase.of_sign(-1).r == Fraction(1, 2)
    assert UnitPhase.from_pi_multiple(1).r == Fraction(1, 2)
    assert UnitPhase(Fraction(1, 12)).order == 12
    assert abs(UnitPhase(Fraction(1, 4)).value() - 1j) < 1e-16


phase_st = st.fractions(min_value=-5, max_value=5, max_denominator=200).map(UnitPhase)


@given(phase_st, phase_st, phase_st)
@settings(max_examples=100, deadline=None)
def test_unit_phase_group_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert (a / b) * b == a
    assert a * a.conjugate() == UnitPhase()
    assert a**3 == a * a * a
    assert abs(complex(a * b) - complex(a) * complex(b)) < 1e-14


def test_unit_phase_mp_value():
    p = UnitPhase(Fraction(7, 36))
    assert abs(complex(p.value(40)) - p.value()) < 1e-15


def test_omega_examples():
    assert omega_multiplier(0, 1) == UnitPhase()
    assert omega_multiplier(1, 2) == UnitPhase()
    assert omega_multiplier(1, 3) == UnitPhase(Fraction(1, 36))


def test_omega_equals_dedekind_oracle():
    for k in range(1, 61):
        for h in range(k):
            if math.gcd(h, k) == 1:
                w = omega_multiplier(h, k)
                assert w == eta_phase(h, k), (h, k)
                assert (24 * k) % w.order == 0


def test_omega_depends_on_h_mod_k():
    for k in (5, 12, 25):
        for h in range(1, k):
            if math.gcd(h, k) == 1:
                assert omega_multiplier(h, k) == omega_multiplier(h + 7 * k, k)


def test_omega_rejects_noncoprime():
    with pytest.raises(ValueError):
        omega_multiplier(2, 4)


def test_canonical_inverse_examples():
    inv = canonical_inverse(0, 1, 1)
    assert (inv.h_prime, inv.k_prime) == (0, -1)
    inv = canonical_inverse(1, 2, 2)
    assert (inv.h_prime, inv.k_prime) == (15, -8)
    inv = canonical_inverse(1, 6, 6)
    assert (inv.h_prime, inv.k_prime) == (215, -36)


def test_canonical_inverse_class_mismatch():
    with pytest.raises(ValueError):
        canonical_inverse(1, 6, 2)


@given(st.integers(1, 300), st.integers(0, 299))
@settings(max_examples=300, deadline=None)
def test_canonical_inverse_conditions(k, h):
    h %= k
    if math.gcd(h, k) != 1:
        return
    inv = canonical_inverse(h, k)
    hp, kp = inv.h_prime, inv.k_prime
    assert h * hp + k * kp == -1
    cls = math.gcd(k, 6)
    assert 0 <= hp < inverse_modulus(k, cls)
    if cls == 6:
        assert (h * hp + 1) % (36 * k) == 0 and kp % 36 == 0
    elif cls == 2:
        assert (h * hp + 1) % (4 * k) == 0 and kp % 4 == 0 and hp % 3 == 0
    elif cls == 3:
        assert hp % 2 == 0
    else:
        assert hp % 6 == 0
    # smallest: nothing below satisfies the same conditions
    for smaller in range(hp):
        assert not _admissible(h, k, smaller)
    shifted = inv.shifted(2)
    assert _admissible(h, k, shifted.h_prime)
    assert h * shifted.h_prime + k * shifted.k_prime == -1


def _admissible(h, k, hp):
    cls = math.gcd(k, 6)
    if cls == 6:
        return (h * hp + 1) % (36 * k) == 0
    if cls == 2:
        return (h * hp + 1) % (4 * k) == 0 and hp % 3 == 0
    return (h * hp + 1) % k == 0 and hp % (2 if cls == 3 else 6) == 0


def test_farey_three():
    assert farey_sequence(3) == tuple(Fraction(a, b) for a, b in [(0, 1), (1, 3), (1, 2), (2, 3), (1, 1)])
    nb = farey_neighbors(1, 2, 3)
    assert (nb.k1, nb.k2) == (3, 3)
    assert nb.theta_minus == Fraction(1, 10)


def test_farey_matches_brute_force():
    for N in range(1, 30):
        brute = sorted({Fraction(h, k) for k in range(1, N + 1) for h in range(k + 1)})
        assert list(farey_sequence(N)) == brute


def test_farey_invariants_exhaustive():
    for N in range(1, 51):
        F = farey_sequence(N)
        for a, b in zip(F, F[1:]):
            assert b.numerator * a.denominator - a.numerator * b.denominator == 1
        for x in F:
            h, k = x.numerator, x.denominator
            nb = farey_neighbors(h, k, N)
            assert h * nb.k1 - nb.h1 * k == 1
            assert h * nb.k2 - k * nb.h2 == -1
            assert Fraction(1, k + nb.k1) <= Fraction(1, N + 1)
            assert Fraction(1, k + nb.k2) <= Fraction(1, N + 1)
            if k > 1:
                # with h h' == -1 (mod k) the determinant identities force k1 == -h', k2 == h'
                hp = -pow(h, -1, k)
                assert (nb.k1 + hp) % k == 0
                assert (nb.k2 - hp) % k == 0
            idx = F.index(x)
            if 0 < idx:
                assert F[idx - 1] == Fraction(nb.h1, nb.k1)
            if idx < len(F) - 1:
                assert F[idx + 1] == Fraction(nb.h2, nb.k2)


def test_farey_rejects_outside():
    with pytest.raises(ValueError):
        farey_neighbors(1, 5, 4)
    with pytest.raises(ValueError):
        farey_neighbors(2, 4, 5)
