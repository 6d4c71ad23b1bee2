"""Partial-sum constants, L(1, chi) evaluation, scans, convolution squares."""
import math

import numpy as np
import pytest

from pntap.characters import character_group, real_character_census
from pntap.exceptions import CapacityError
from pntap.siegel import (
    convolution_partial_sums,
    eta_constants,
    hyperbola_direct,
    hyperbola_partial,
    l1_digamma,
    l1_series,
    make_convolution_triple,
    partial_sum_identity_check,
    power_sum_main,
    power_sum_main_log,
    siegel_scan,
    zerol1_hypothesis_check,
)

STIELTJES_1 = -0.0728158454836767
# frozen from the q <= 300 scan; the minimum of sqrt(q)L(1,chi) sits at q = 5
SCAN300_MIN_SQRTQ_L = 0.962424
SCAN300_MIN_L = 0.246069


def test_gamma_constants_against_known_values():
    c = eta_constants(0.0)
    assert abs(c.gamma - np.euler_gamma) <= 1e-9
    assert abs(c.gamma_log - STIELTJES_1) <= 1e-8
    assert abs(c.gamma - np.euler_gamma) <= c.accuracy
    assert c.accuracy < 1e-8


def test_gamma_log_em_rederivation():
    # independent Euler-Maclaurin estimate of the first Stieltjes constant
    B = 10**5
    L = math.log(B)
    s = math.fsum(math.log(n) / n for n in range(1, B + 1))
    em = s - L * L / 2 - L / (2 * B)
    assert abs(eta_constants(0.0).gamma_log - em) <= 1e-8


def test_eta_domain():
    with pytest.raises(ValueError):
        eta_constants(-0.01)
    with pytest.raises(ValueError):
        eta_constants(0.06)
    with pytest.raises(ValueError):
        eta_constants(0.02, panels=50)


def test_power_sum_mains_continuous_at_zero():
    B = 12345.0
    assert power_sum_main(0.0, B) == math.log(B)
    assert abs(power_sum_main(1e-12, B) - math.log(B)) <= 1e-9
    assert power_sum_main_log(0.0, B) == 0.5 * math.log(B) ** 2
    assert abs(power_sum_main_log(1e-9, B) - 0.5 * math.log(B) ** 2) <= 1e-5


def test_partial_sum_identity_grid():
    for eta in (0.0, 0.01, 0.05):
        rows = partial_sum_identity_check(eta, (100, 10**4, 10**6))
        for r in rows:
            assert r.ok
            assert abs(r.err) <= 0.1 * r.bound
            assert abs(r.err_log) <= 0.1 * r.bound_log
    with pytest.raises(ValueError):
        partial_sum_identity_check(0.01, (1,))


def test_hyperbola_split_invariance():
    chi = character_group(3).character_by_index(1)
    x, eta = 3000, 0.02
    direct = hyperbola_direct(chi, x, eta)
    vals = [hyperbola_partial(chi, x, eta, s) for s in (math.sqrt(x), x ** (1 / 3), 50.0)]
    for v in vals:
        assert abs(v - direct) <= 1e-12
    with pytest.raises(ValueError):
        hyperbola_partial(chi, x, eta, 0.5)
    with pytest.raises(ValueError):
        hyperbola_partial(chi, x, eta, x + 1.0)


def test_hyperbola_complex_character():
    chi = character_group(5).character_by_index(1)
    assert not chi.is_real
    x, eta = 800, 0.0
    direct = hyperbola_direct(chi, x, eta)
    got = hyperbola_partial(chi, x, eta, math.sqrt(x))
    assert abs(got - direct) <= 1e-10


def test_l1_closed_forms():
    v3 = l1_series(character_group(3).character_by_index(1))
    assert abs(v3.value.real - math.pi / (3 * math.sqrt(3))) <= 1e-14
    assert abs(v3.value.imag) <= 1e-15
    assert v3.remainder < 1e-13
    v4 = l1_series(character_group(4).character_by_index(1))
    assert abs(v4.value.real - math.pi / 4) <= 1e-14


def test_l1_digamma_sweep():
    for q in range(3, 31):
        for chi in character_group(q).characters():
            if chi.is_principal:
                continue
            assert abs(l1_series(chi).value - l1_digamma(chi)) <= 1e-12


def test_l1_parameterization_and_refusals():
    chi = character_group(3).character_by_index(1)
    a = l1_series(chi, head_multiple=32, tail_terms=10)
    b = l1_series(chi, head_multiple=50, tail_terms=8)
    assert abs(a.value - b.value) <= 1e-13
    with pytest.raises(ValueError):
        l1_series(character_group(3).principal)
    with pytest.raises(ValueError):
        l1_digamma(character_group(4).principal)
    with pytest.raises(ValueError):
        l1_series(chi, head_multiple=1)
    with pytest.raises(ValueError):
        l1_series(chi, tail_terms=0)


def test_siegel_scan_structure():
    scan = siegel_scan(100)
    want_rows = sum(real_character_census(q)[0] - 1 for q in range(3, 101))
    assert len(scan.rows) == want_rows
    assert all(r.l_value > 0.0 for r in scan.rows)
    assert all(r.conductor <= r.modulus <= 100 for r in scan.rows)
    assert abs(scan.fitted_exponent) < 0.5
    with pytest.raises(ValueError):
        siegel_scan(2)
    with pytest.raises(CapacityError):
        siegel_scan(20_000)


def test_siegel_scan_frozen_minima():
    scan = siegel_scan(300)
    assert scan.min_sqrtq_l == pytest.approx(SCAN300_MIN_SQRTQ_L, abs=1e-4)
    assert scan.min_l == pytest.approx(SCAN300_MIN_L, abs=1e-4)
    assert scan.min_sqrtq_l >= 0.4


def test_siegel_scan_primitive_only():
    scan = siegel_scan(300, primitive_only=True, tail_terms=4)
    assert len(scan.rows) == 184
    assert all(r.conductor == r.modulus for r in scan.rows)
    # class-number-1 landmark: the deepest L(1) value is pi/sqrt(163)
    assert scan.min_l == pytest.approx(math.pi / math.sqrt(163), abs=1e-6)
    # min of sqrt(q)*L sits at the quadratic character mod 5, whose L-value
    # is 2*log((1+sqrt 5)/2)/sqrt 5 (regulator of the golden ratio)
    assert scan.min_sqrtq_l == pytest.approx(
        2.0 * math.log((1.0 + math.sqrt(5.0)) / 2.0), abs=1e-6
    )
    # primitive rows are exactly the conductor == modulus rows of the full scan
    full = siegel_scan(120, tail_terms=4)
    prim = siegel_scan(120, primitive_only=True, tail_terms=4)
    assert {(r.modulus, r.chi_index) for r in full.rows if r.conductor == r.modulus} == {
        (r.modulus, r.chi_index) for r in prim.rows
    }


def test_convolution_partial_sums(tables_med):
    chi3 = character_group(3).character_by_index(1)
    chi4 = character_group(4).character_by_index(1)
    rep = convolution_partial_sums(chi3, chi4, 10**5, tables_med)
    assert rep.bound_ok and rep.worst_ratio <= 0.06
    assert rep.checkpoints[0][0] == 10
    same = convolution_partial_sums(chi3, chi3, 10**5, tables_med)
    assert same.bound_ok and same.worst_ratio <= 0.06
    with pytest.raises(ValueError):
        convolution_partial_sums(
            chi3, character_group(5).character_by_index(1), 1000, tables_med
        )


def test_convolution_prefix_against_double_loop(tables_small):
    chi3 = character_group(3).character_by_index(1)
    chi4 = character_group(4).character_by_index(1)
    rep = convolution_partial_sums(chi3, chi4, 10**4, tables_small)
    acc = 0
    for n in range(1, 11):
        for d in range(1, n + 1):
            if n % d == 0:
                acc += int(chi3(d).real) * int(chi4(n // d).real)
    assert rep.checkpoints[0] == (10, acc)


def test_zerol1_nonneg_and_ceiling(tables_small):
    chi3 = character_group(3).character_by_index(1)
    chi4 = character_group(4).character_by_index(1)
    chi5 = character_group(5).character_by_index(2)
    for a, b in [(chi3, chi4), (chi3, chi3), (chi3, chi5)]:
        rep = zerol1_hypothesis_check(a, b, 10**4, tables_small)
        assert rep.nonneg_ok and rep.ceiling_ok
        assert rep.min_value == 0
        assert rep.series_value > 0.0
    with pytest.raises(ValueError):
        zerol1_hypothesis_check(chi3, chi4, 10**4, tables_small, sigma=0.8)
    with pytest.raises(ValueError):
        zerol1_hypothesis_check(
            chi3, character_group(5).character_by_index(1), 100, tables_small
        )


def test_zerol1_local_factor_oracle(tables_small):
    # at p coprime to both moduli: f(p) = (1 + chi1(p))(1 + chi2(p)),
    # f(p^2) = h_2 of the four local roots {1, c1, c2, c1c2}
    chi3 = character_group(3).character_by_index(1)
    chi4 = character_group(4).character_by_index(1)
    f = make_convolution_triple(chi3, chi4, 10**4, tables_small)
    assert f[1] == 1
    for p in (5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61):
        c1 = int(chi3(p).real)
        c2 = int(chi4(p).real)
        roots = [1, c1, c2, c1 * c2]
        assert f[p] == sum(roots)
        s1, s2 = sum(roots), sum(r * r for r in roots)
        assert f[p * p] == (s1 * s1 + s2) // 2
    # multiplicativity across coprime arguments
    for m, n in [(5, 7), (11, 13), (7, 11)]:
        assert f[m * n] == f[m] * f[n]
