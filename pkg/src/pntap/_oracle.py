"""Trial-division reference implementations (numba-compiled).

Deliberately independent of the sieve code path: every n is factored on its
own by trial division and μ, φ, Λ, τ_r are rebuilt from the exponents.
Used by the verification suites and the tests as the ground truth.
"""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _trial_tables(nmax):  # pragma: no cover - compiled
    mob = np.zeros(nmax + 1, np.int64)
    phi = np.zeros(nmax + 1, np.int64)
    mang_p = np.zeros(nmax + 1, np.int64)
    mang_k = np.zeros(nmax + 1, np.int64)
    tau2 = np.zeros(nmax + 1, np.int64)
    tau3 = np.zeros(nmax + 1, np.int64)
    spf = np.zeros(nmax + 1, np.int64)
    gpf = np.zeros(nmax + 1, np.int64)
    for n in range(2, nmax + 1):
        m = n
        mu = 1
        ph = 1
        t2 = 1
        t3 = 1
        distinct = 0
        first_p = 0
        last_p = 0
        single_p = 0
        single_k = 0
        d = 2
        while d * d <= m:
            if m % d == 0:
                e = 0
                pe_over_p = 1
                while m % d == 0:
                    m //= d
                    e += 1
                    if e > 1:
                        pe_over_p *= d
                ph *= (d - 1) * pe_over_p
                mu = 0 if e > 1 else -mu
                t2 *= e + 1
                t3 *= (e + 1) * (e + 2) // 2
                distinct += 1
                if first_p == 0:
                    first_p = d
                last_p = d
                single_p = d
                single_k = e
            d += 1 if d == 2 else 2
        if m > 1:
            ph *= m - 1
            mu = 0 if mu == 0 else -mu
            t2 *= 2
            t3 *= 3
            distinct += 1
            if first_p == 0:
                first_p = m
            last_p = m
            single_p = m
            single_k = 1
        mob[n] = mu
        phi[n] = ph
        tau2[n] = t2
        tau3[n] = t3
        spf[n] = first_p
        gpf[n] = last_p
        if distinct == 1:
            mang_p[n] = single_p
            mang_k[n] = single_k
    mob[1] = 1
    phi[1] = 1
    tau2[1] = 1
    tau3[1] = 1
    gpf[1] = 1
    return mob, phi, mang_p, mang_k, tau2, tau3, spf, gpf


def trial_division_tables(nmax: int):
    """All reference tables on [1, nmax]; spf[1] = 0 here (caller-aware)."""
    return _trial_tables(int(nmax))


def ordered_factorizations(n: int, r: int) -> int:
    """Count ordered r-tuples (d_1, …, d_r) with d_1⋯d_r = n, brute force."""
    if r == 1:
        return 1
    total = 0
    for d in range(1, n + 1):
        if n % d == 0:
            total += ordered_factorizations(n // d, r - 1)
    return total
