"""Truncated inclusion-exclusion (Brun) sieve weights and their sandwich.

For a sifting level y and a truncation parameter u ≥ 2, put m = max(1, ⌊u/2⌋)
and D = y^u.  The weights live on squarefree y-smooth d ≤ D:

    λ⁺(d) = μ(d) for ω(d) ≤ 2m,      λ⁻(d) = μ(d) for ω(d) ≤ 2m − 1,

zero otherwise.  Bonferroni gives, pointwise in n,

    Σ_{d|n} λ⁻(d) ≤ 1[P⁻(n) > y] ≤ Σ_{d|n} λ⁺(d),

PROVIDED the support cut at D removes nothing below the ω-cap.  With the
default m this is automatic: ω(d) ≤ 2m ≤ u distinct primes ≤ y multiply to
less than y^u, so ``truncation_bites`` is structurally False.  Forcing a
deeper m can make the D-cut bite, which the flag reports — the sandwich is
then no longer guaranteed and is not asserted.

The mean-value report compares Σ λ±(d) g(d) for a multiplicative density
0 ≤ g(p) < 1 against the exact product Π_{p ≤ y} (1 − g(p)); the relative
error is scored against e^{−u} as a fitted constant, report-grade.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import ArithmeticTables
from .exceptions import CapacityError

_SUPPORT_CAP = 2_000_000


@dataclass
class SieveWeights:
    y: float
    u: float
    m: int
    D: float
    d: np.ndarray  # support, ascending, d[0] = 1
    nu: np.ndarray  # distinct-prime counts on the support
    lambda_plus: np.ndarray
    lambda_minus: np.ndarray
    truncation_bites: bool

    @property
    def support_size(self) -> int:
        return len(self.d)


def build_weights(
    y: float, u: float, tables: ArithmeticTables, m: int | None = None
) -> SieveWeights:
    """Enumerate the support by DFS over primes ≤ y and attach μ-weights."""
    if u < 2:
        raise ValueError("truncation parameter u must be >= 2")
    if y < 2:
        raise ValueError("sifting level y must be >= 2")
    if y > tables.limit:
        raise ValueError("y beyond table limit")
    if m is None:
        m = max(1, math.floor(u / 2.0))
    if m < 1:
        raise ValueError("truncation index m must be >= 1")
    primes = [int(p) for p in tables.primes_between(1, y)]
    cap_nu = 2 * m
    est = sum(math.comb(len(primes), j) for j in range(min(cap_nu, len(primes)) + 1))
    if est > _SUPPORT_CAP:
        raise CapacityError(
            f"support estimate {est} exceeds {_SUPPORT_CAP}; lower u or y"
        )
    D = float(y) ** u
    rows: list[tuple[int, int]] = [(1, 0)]
    bites = False

    def dfs(d: int, start: int, nu: int):
        nonlocal bites
        if nu == cap_nu:
            return
        for i in range(start, len(primes)):
            nd = d * primes[i]
            if nd > D:
                bites = True  # an omega-admissible d was D-pruned
                continue
            rows.append((nd, nu + 1))
            dfs(nd, i + 1, nu + 1)

    dfs(1, 0, 0)
    rows.sort()
    d = np.array([r[0] for r in rows], dtype=np.int64)
    nu = np.array([r[1] for r in rows], dtype=np.int64)
    mu = np.where(nu % 2 == 0, 1, -1).astype(np.int64)
    lam_plus = np.where(nu <= 2 * m, mu, 0)
    lam_minus = np.where(nu <= 2 * m - 1, mu, 0)
    return SieveWeights(
        y=float(y),
        u=float(u),
        m=m,
        D=D,
        d=d,
        nu=nu,
        lambda_plus=lam_plus,
        lambda_minus=lam_minus,
        truncation_bites=bites,
    )


@dataclass
class SandwichReport:
    x: int
    pointwise_ok: bool
    violations: int
    lower_total: int
    indicator_total: int
    upper_total: int
    sifted_count: int
    sifted_equality_ok: bool


def _weight_sums(weights: SieveWeights, x: int, which: np.ndarray) -> np.ndarray:
    out = np.zeros(x + 1, dtype=np.int64)
    for d, lam in zip(weights.d, which):
        if lam and d <= x:
            out[d::d] += int(lam)
    return out


def sandwich_check(
    weights: SieveWeights, x: int, tables: ArithmeticTables
) -> SandwichReport:
    """Pointwise Σλ⁻|n ≤ 1[P⁻(n) > y] ≤ Σλ⁺|n over 1 ≤ n ≤ x, exact ints.

    On the sifted set {n : P⁻(n) > y} the only divisor of n in the weight
    support is d = 1, so both convolutions must equal λ±(1) = 1 exactly;
    ``sifted_equality_ok`` records that identity.
    """
    x = int(x)
    tables.check_range(x)
    lower = _weight_sums(weights, x, weights.lambda_minus)
    upper = _weight_sums(weights, x, weights.lambda_plus)
    ind = (tables.spf[: x + 1] > weights.y).astype(np.int64)
    ind[0] = lower[0] = upper[0] = 0
    bad = int(np.count_nonzero(lower > ind) + np.count_nonzero(ind > upper))
    sifted = ind == 1
    equality = bool(
        np.all(lower[sifted] == 1) and np.all(upper[sifted] == 1)
    )
    return SandwichReport(
        x=x,
        pointwise_ok=bad == 0,
        violations=bad,
        lower_total=int(lower.sum()),
        indicator_total=int(ind.sum()),
        upper_total=int(upper.sum()),
        sifted_count=int(np.count_nonzero(sifted)),
        sifted_equality_ok=equality,
    )


@dataclass
class MeanValueReport:
    plus_sum: float
    minus_sum: float
    product_main: float
    rel_plus: float
    rel_minus: float
    e_minus_u: float
    fitted_c: float


def mean_value(
    weights: SieveWeights, tables: ArithmeticTables, g=None
) -> MeanValueReport:
    """Σ λ±(d) g(d) against Π_{p≤y}(1 − g(p)) for multiplicative density g.

    g maps primes to [0, 1); default g(p) = 1/p.  The sandwich
    minus_sum ≤ product_main ≤ plus_sum holds whenever the D-cut is silent.
    """
    if g is None:
        g = lambda p: 1.0 / p
    primes = [int(p) for p in tables.primes_between(1, weights.y)]
    gp = {}
    for p in primes:
        v = float(g(p))
        if not 0.0 <= v < 1.0:
            raise ValueError(f"density g(p) must be in [0,1); g({p}) = {v}")
        gp[p] = v
    main = math.prod(1.0 - gp[p] for p in primes)
    # support entries are squarefree and y-smooth by construction, so they
    # factor over `primes` directly — d may exceed the table range (d ≤ y^u)
    gd = np.empty(len(weights.d), dtype=np.float64)
    for i, d in enumerate(weights.d):
        acc, m = 1.0, int(d)
        for p in primes:
            if m % p == 0:
                acc *= gp[p]
                m //= p
        gd[i] = acc
    plus = float(np.dot(weights.lambda_plus.astype(np.float64), gd))
    minus = float(np.dot(weights.lambda_minus.astype(np.float64), gd))
    rel_plus = (plus - main) / main if main else math.inf
    rel_minus = (main - minus) / main if main else math.inf
    e_mu = math.exp(-weights.u)
    fitted = max(rel_plus, rel_minus) / e_mu
    return MeanValueReport(
        plus_sum=plus,
        minus_sum=minus,
        product_main=main,
        rel_plus=rel_plus,
        rel_minus=rel_minus,
        e_minus_u=e_mu,
        fitted_c=fitted,
    )
