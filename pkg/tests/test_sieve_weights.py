"""Brun weights: support structure, pointwise sandwich, mean values."""
import math

import numpy as np
import pytest

from pntap.exceptions import CapacityError
from pntap.sieve_weights import build_weights, mean_value, sandwich_check

CONFIGS = [(y, u) for y in (5.0, 10.0, 30.0) for u in (2.0, 3.0, 4.0)]


def test_tiny_support_hand_case(tables_small):
    w = build_weights(3.0, 2.0, tables_small)
    assert w.m == 1 and w.D == 9.0
    assert list(w.d) == [1, 2, 3, 6]
    assert list(w.lambda_plus) == [1, -1, -1, 1]
    assert list(w.lambda_minus) == [1, -1, -1, 0]
    mv = mean_value(w, tables_small)
    # nu-cap 2 covers every subset of {2,3}: upper sum is the exact product
    assert mv.plus_sum == pytest.approx(1.0 / 3.0, abs=1e-15)
    assert mv.minus_sum == pytest.approx(1.0 / 6.0, abs=1e-15)
    assert mv.product_main == pytest.approx(1.0 / 3.0, abs=1e-15)


def test_default_truncation_index(tables_small):
    assert build_weights(5.0, 2.0, tables_small).m == 1
    assert build_weights(5.0, 3.0, tables_small).m == 1
    assert build_weights(5.0, 4.0, tables_small).m == 2
    assert build_weights(5.0, 5.0, tables_small).m == 2
    assert build_weights(5.0, 7.5, tables_small).m == 3


def test_support_structure(tables_med):
    w = build_weights(30.0, 4.0, tables_med)
    assert w.d[0] == 1 and w.support_size == 386
    assert not w.truncation_bites
    for d, nu, lp, lm in zip(w.d, w.nu, w.lambda_plus, w.lambda_minus):
        d = int(d)
        mu = int(tables_med.mobius[d])
        assert mu != 0  # squarefree
        assert d == 1 or tables_med.gpf[d] <= 30
        assert d <= w.D
        assert nu == len(tables_med.factor(d).factors)
        assert lp == (mu if nu <= 2 * w.m else 0)
        assert lm == (mu if nu <= 2 * w.m - 1 else 0)


def test_sandwich_all_acceptance_configs(tables_med):
    for y, u in CONFIGS:
        w = build_weights(y, u, tables_med)
        assert not w.truncation_bites
        rep = sandwich_check(w, 10**4, tables_med)
        assert rep.pointwise_ok and rep.violations == 0
        assert rep.lower_total <= rep.indicator_total <= rep.upper_total
        assert rep.sifted_equality_ok and rep.sifted_count > 0
        # sifted set = {1} ∪ {primes/prime products > y}; count grows as y shrinks
        assert rep.sifted_count >= 10**4 // int(2 * y)


def test_full_inclusion_exclusion_is_exact(tables_med):
    # y=5, u=4: nu-cap 4 > pi(5) = 3, so both weights are full Moebius
    w = build_weights(5.0, 4.0, tables_med)
    rep = sandwich_check(w, 10**5, tables_med)
    assert rep.lower_total == rep.indicator_total == rep.upper_total
    mv = mean_value(w, tables_med)
    assert mv.plus_sum == pytest.approx(mv.product_main, abs=1e-15)
    assert mv.minus_sum == pytest.approx(mv.product_main, abs=1e-15)


def test_pointwise_against_gcd_oracle(tables_small):
    w = build_weights(10.0, 3.0, tables_small)
    P = 2 * 3 * 5 * 7
    support = [(int(d), int(lp), int(lm)) for d, lp, lm in
               zip(w.d, w.lambda_plus, w.lambda_minus)]
    for n in range(1, 2001):
        ind = 1 if math.gcd(n, P) == 1 else 0
        lo = sum(lm for d, lp, lm in support if n % d == 0)
        hi = sum(lp for d, lp, lm in support if n % d == 0)
        assert lo <= ind <= hi
    rep = sandwich_check(w, 2000, tables_small)
    assert rep.pointwise_ok


def test_forced_deep_truncation_bites(tables_small):
    w = build_weights(10.0, 2.0, tables_small, m=3)
    assert w.truncation_bites
    # 2*3*5*7 = 210 > D = 100 was pruned despite omega-admissibility
    assert 210 not in set(int(d) for d in w.d)


def test_validation_errors(tables_small):
    with pytest.raises(ValueError):
        build_weights(10.0, 1.5, tables_small)
    with pytest.raises(ValueError):
        build_weights(1.5, 3.0, tables_small)
    with pytest.raises(ValueError):
        build_weights(10.0, 3.0, tables_small, m=0)
    with pytest.raises(ValueError):
        build_weights(2 * 10**5, 2.0, tables_small)  # y beyond limit


def test_capacity_refusal(tables_small):
    with pytest.raises(CapacityError):
        build_weights(5000.0, 24.0, tables_small)


def test_mean_value_bracket_and_decay(tables_med):
    for y, u in CONFIGS:
        mv = mean_value(build_weights(y, u, tables_med), tables_med)
        # exact-arithmetic bracket, binary64 slack
        assert mv.minus_sum <= mv.product_main + 1e-12
        assert mv.product_main <= mv.plus_sum + 1e-12
    shallow = mean_value(build_weights(30.0, 2.0, tables_med), tables_med)
    deep = mean_value(build_weights(30.0, 4.0, tables_med), tables_med)
    assert deep.rel_plus < shallow.rel_plus
    assert deep.rel_minus < shallow.rel_minus


def test_mean_value_custom_density(tables_med):
    w = build_weights(10.0, 4.0, tables_med)
    g = lambda p: 2.0 / p if p > 2 else 0.4
    mv = mean_value(w, tables_med, g=g)
    want = 0.6 * (1 - 2 / 3) * (1 - 2 / 5) * (1 - 2 / 7)
    assert mv.product_main == pytest.approx(want, abs=1e-15)
    assert mv.minus_sum <= mv.product_main + 1e-12
    assert mv.product_main <= mv.plus_sum + 1e-12
    with pytest.raises(ValueError):
        mean_value(w, tables_med, g=lambda p: 1.0)
