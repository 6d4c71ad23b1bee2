"""Sifted Dirichlet series, their derivatives, and the log-derivative layer.

For a unit-disc multiplicative f and a sifting level y,

    L_y(s, f) = Σ_{P⁻(n) > y} f(n) / n^s        (σ = Re s > 1),

with the k-th derivative obtained by the weight (−log n)^k.  Truncation at
N carries an honest certificate

    Σ_{n > N} (log n)^k n^{−σ} ≤ ∫_N^∞ (log u)^k u^{−σ} du + (log N)^k N^{−σ},

the integral in closed form via the upper incomplete gamma function.  The
certificate ignores both the sifting density and any oscillation in f, so
near σ = 1 it is deliberately pessimistic: callers requesting a hard
tolerance get a NonconvergenceError carrying the best achievable value,
while the monitoring layers evaluate best-effort and record the
certificate.

The log-derivative layer turns a bundle F, F′, …, F^{(k)} into

    (F′/F)^{(k−1)}(s) = −k! Σ_{a_1+2a_2+⋯+ka_k=k}
        ((−1 + a_1 + ⋯ + a_k)! / (a_1! ⋯ a_k!)) ∏_j (−F^{(j)}/(j! F))^{a_j},

with the companion ceiling (k!/2)(2M/min{|F(s)|, 1})^k for any M ≥ 1 with
|F^{(j)}(s)| ≤ j! M^j.  The ceiling is purely algebraic — it holds for
whatever numbers the bundle contains — which is exactly what makes it a
useful cross-check on the combinatorics.

The slowly-growing weight used throughout the monitors is

    V_t = exp{(log(3+|t|))^{2/3} (log log(3+|t|))^{1/3}},

pinned down by 1.5 ≤ V_0 ≤ V_t ≤ V_1 < 3 for |t| ≤ 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import gammaincc

from ._util import cfsum, fsum
from .arith import ArithmeticTables
from .characters import DirichletCharacter
from .exceptions import NonconvergenceError, ZeroDenominatorError
from .multfunc import CharacterFunction, MultiplicativeFunction

SIGMA_GRID = tuple(
    sorted({1.0 + 1.0 / math.log(10.0**k) for k in range(2, 7)} | {1.01, 1.1, 1.5})
)
T_GRID = (0.0, 0.1, -0.1, 1.0, -1.0, 5.0, -5.0, 20.0, -20.0)


def vt(t: float) -> float:
    """exp{(log(3+|t|))^{2/3} (log log(3+|t|))^{1/3}}."""
    a = math.log(3.0 + abs(t))
    return math.exp(a ** (2.0 / 3.0) * math.log(a) ** (1.0 / 3.0))


def euler_factor(y: float, tables: ArithmeticTables, coprime_to: int = 1) -> float:
    """Π_{p ≤ y, p ∤ coprime_to} (1 − 1/p)."""
    primes = tables.primes_between(1, min(y, tables.limit))
    out = 1.0
    for p in primes:
        if coprime_to % int(p) != 0:
            out *= 1.0 - 1.0 / float(p)
    return out


@dataclass
class SeriesValue:
    value: complex
    certificate: float
    cutoff: int


class SeriesContext:
    """(f, y, tables) with cached sifted arrays; immutable once built."""

    def __init__(self, f: MultiplicativeFunction, y: float, tables: ArithmeticTables):
        if y < 1.5:
            raise ValueError("sifting level y must be >= 1.5")
        self.f = f
        self.y = float(y)
        self.tables = tables
        self._cache: dict = {}

    def arrays(self, cutoff: int):
        """(n, log n, f(n)) over sifted n ≤ cutoff (cached at max cutoff)."""
        cutoff = int(cutoff)
        if cutoff > self.tables.limit:
            raise ValueError(f"cutoff {cutoff} beyond table limit {self.tables.limit}")
        have = self._cache.get("cutoff", 0)
        if cutoff > have:
            mask = self.tables.spf[: cutoff + 1] > self.y
            n = np.nonzero(mask)[0].astype(np.int64)  # n = 1 included: sentinel
            logn = np.log(n.astype(np.float64))
            fv = np.asarray(self.f.values_up_to(cutoff, self.tables))[n]
            self._cache.update(cutoff=cutoff, n=n, logn=logn, fv=fv)
        n, logn, fv = self._cache["n"], self._cache["logn"], self._cache["fv"]
        if cutoff == self._cache["cutoff"]:
            return n, logn, fv
        hi = np.searchsorted(n, cutoff, side="right")
        return n[:hi], logn[:hi], fv[:hi]


def tail_certificate(cutoff: int, sigma: float, k: int) -> float:
    """Σ_{n>N} (log n)^k n^{−σ} ≤ Γ(k+1, (σ−1)log N)/(σ−1)^{k+1} + (log N)^k N^{−σ}."""
    if sigma <= 1.0:
        return math.inf
    z = (sigma - 1.0) * math.log(cutoff)
    integral = float(gammaincc(k + 1, z)) * math.factorial(k) / (sigma - 1.0) ** (k + 1)
    return integral + math.log(cutoff) ** k * cutoff ** (-sigma)


def evaluate_series(
    ctx: SeriesContext,
    s: complex,
    k: int = 0,
    tol: float | None = None,
    nmax: int | None = None,
) -> SeriesValue:
    """Truncated L_y^{(k)}(s, f)·(−1)^k … i.e. Σ f(n)(−log n)^k n^{−s}.

    With ``tol`` the cutoff is grown until the certificate fits, else a
    NonconvergenceError carries the best value.  Without ``tol`` the sum is
    taken at the full available cutoff and the certificate just reported.
    """
    s = complex(s)
    if s.real <= 1.0:
        raise ValueError("evaluate_series needs Re s > 1")
    if k < 0:
        raise ValueError("derivative order k must be >= 0")
    cap = min(nmax or ctx.tables.limit, ctx.tables.limit)
    if tol is not None:
        cutoff = 1024
        while cutoff < cap and tail_certificate(cutoff, s.real, k) > tol:
            cutoff *= 2
        cutoff = min(cutoff, cap)
        if tail_certificate(cutoff, s.real, k) > tol:
            best = _sum_at(ctx, s, k, cap)
            raise NonconvergenceError(
                f"certificate {best.certificate:.3g} > tol {tol:.3g} at cutoff {cap}",
                value=best.value,
                certificate=best.certificate,
                cutoff=cap,
            )
        return _sum_at(ctx, s, k, cutoff)
    return _sum_at(ctx, s, k, cap)


def _sum_at(ctx: SeriesContext, s: complex, k: int, cutoff: int) -> SeriesValue:
    n, logn, fv = ctx.arrays(cutoff)
    w = fv * np.exp(-s * logn)
    if k:
        w = w * (-logn) ** k
    return SeriesValue(cfsum(w), tail_certificate(cutoff, s.real, k), cutoff)


@dataclass
class DerivativeBundle:
    """F^{(j)}(s) for j = 0..k plus the normalising bound M ≥ 1."""

    s: complex
    k: int
    values: list[complex]
    certificates: list[float] = field(default_factory=list)

    @property
    def normalising_bound(self) -> float:
        m = 1.0
        for j in range(1, len(self.values)):
            vj = abs(self.values[j]) / math.factorial(j)
            if vj > 0:
                m = max(m, vj ** (1.0 / j))
        return m


def derivative_bundle(
    ctx: SeriesContext, s: complex, k: int, tol=None, nmax=None
) -> DerivativeBundle:
    values, certs = [], []
    for j in range(k + 1):
        sv = evaluate_series(ctx, s, j, tol=tol, nmax=nmax)
        values.append(sv.value)
        certs.append(sv.certificate)
    return DerivativeBundle(s=complex(s), k=k, values=values, certificates=certs)


@lru_cache(maxsize=64)
def _partition_multiplicities(k: int) -> tuple[tuple[int, ...], ...]:
    """All (a_1, …, a_k) with Σ j·a_j = k."""
    out: list[tuple[int, ...]] = []

    def rec(j: int, remaining: int, acc: list[int]):
        if j > k:
            if remaining == 0:
                out.append(tuple(acc))
            return
        top = remaining // j
        for a in range(top + 1):
            rec(j + 1, remaining - j * a, acc + [a])

    rec(1, k, [])
    return tuple(out)


def ordered_partition_count(k: int) -> int:
    """Σ over partitions of k of the multinomial (a_1+⋯+a_k)!/(a_1!⋯a_k!).

    Counts compositions, so the value is 2^{k−1}; computed by enumeration
    so the identity can be *checked*, not assumed.
    """
    if not 1 <= k <= 62:
        raise ValueError("k must be in [1, 62] (int64-safe downstream)")
    total = 0
    for mult in _partition_multiplicities(k):
        a = sum(mult)
        term = math.factorial(a)
        for aj in mult:
            term //= math.factorial(aj)
        total += term
    return total


def faa_log_derivative(
    bundle: DerivativeBundle, zero_floor: float = 1e-12
) -> tuple[complex, float]:
    """((F′/F)^{(k−1)}(s), ceiling) from the derivative bundle.

    ceiling = (k!/2)·(2M/min{|F(s)|, 1})^k with M the bundle's normalising
    bound; |result| ≤ ceiling holds algebraically.
    """
    k = bundle.k
    if k < 1:
        raise ValueError("need k >= 1 derivatives in the bundle")
    F = bundle.values[0]
    if abs(F) < zero_floor:
        raise ZeroDenominatorError(f"|F(s)| = {abs(F):.3g} below floor {zero_floor:.3g}")
    D = [None] + [
        -bundle.values[j] / (math.factorial(j) * F) for j in range(1, k + 1)
    ]
    total = 0j
    for mult in _partition_multiplicities(k):
        a = sum(mult)
        coef = math.factorial(a - 1)
        for aj in mult:
            coef /= math.factorial(aj)
        prod = complex(coef)
        for j, aj in enumerate(mult, start=1):
            if aj:
                prod *= D[j] ** aj
        total += prod
    value = -math.factorial(k) * total
    M = bundle.normalising_bound
    ceiling = (math.factorial(k) / 2.0) * (2.0 * M / min(abs(F), 1.0)) ** k
    return value, ceiling


def quotient_rule_log_derivative(bundle: DerivativeBundle) -> complex:
    """(F′/F)^{(k−1)}(s) by the explicit Leibniz recursion on F·G = F′.

    Independent of the partition identity — the cross-check oracle.
    """
    k = bundle.k
    F = bundle.values[0]
    if F == 0:
        raise ZeroDenominatorError("F(s) = 0")
    G = [bundle.values[1] / F]
    for m in range(1, k):
        acc = bundle.values[m + 1]
        for j in range(1, m + 1):
            acc -= math.comb(m, j) * bundle.values[j] * G[m - j]
        G.append(acc / F)
    return G[k - 1]


# ---------------------------------------------------------------------------
# Monitors


@dataclass
class L1Row:
    f_label: str
    y: float
    x: float
    t: float
    sigma: float
    log_abs_l: float
    prime_sum: float
    residual: float
    certificate: float


@dataclass
class L1Report:
    rows: list[L1Row]

    @property
    def sup_residual(self) -> float:
        return max(r.residual for r in self.rows)


def l1_residual(
    f: MultiplicativeFunction,
    x_grid,
    t_grid,
    y: float,
    tables: ArithmeticTables,
    nmax: int | None = None,
) -> L1Report:
    """Residuals |log|L_y(1 + 1/log x + it, f)| − Σ_{y<p≤x} Re(f(p)p^{−it})/p|.

    Best-effort series evaluation at the full cutoff; certificates recorded
    per row.  The residual is the O(1) the first-moment lemma promises.
    """
    ctx = SeriesContext(f, y, tables)
    cap = min(nmax or tables.limit, tables.limit)
    n, logn, fv = ctx.arrays(cap)
    twists = {t: np.exp(-1j * t * logn) if t else None for t in t_grid}

    rows = []
    for x in x_grid:
        if x > tables.limit:
            raise ValueError(f"x={x} beyond table limit")
        sigma = 1.0 + 1.0 / math.log(x)
        base = fv * np.exp(-sigma * logn)
        primes = tables.primes_between(y, x)
        pf = np.asarray(f.prime_values(primes))
        pinv = 1.0 / primes.astype(np.float64)
        logp = np.log(primes.astype(np.float64))
        cert = tail_certificate(cap, sigma, 0)
        for t in t_grid:
            tw = twists[t]
            value = cfsum(base * tw if tw is not None else base)
            prime_sum = fsum((pf * np.exp(-1j * t * logp)).real * pinv) if t else fsum(
                pf.real * pinv
            )
            log_abs = math.log(abs(value)) if value != 0 else -math.inf
            rows.append(
                L1Row(
                    f_label=f.label,
                    y=y,
                    x=float(x),
                    t=float(t),
                    sigma=sigma,
                    log_abs_l=log_abs,
                    prime_sum=prime_sum,
                    residual=abs(log_abs - prime_sum),
                    certificate=cert,
                )
            )
    return L1Report(rows)


@dataclass
class LchiRow:
    sigma: float
    t: float
    k: int
    lhs_derivative: float
    shape_derivative: float
    ratio_derivative: float
    abs_l_window: float
    lhs_logderiv: float
    shape_logderiv: float
    ratio_logderiv: float


@dataclass
class LchiReport:
    modulus: int
    chi_index: int
    y: float
    rows: list[LchiRow]

    @property
    def ratio_sup_derivative(self) -> float:
        return max(r.ratio_derivative for r in self.rows)

    @property
    def ratio_sup_logderiv(self) -> float:
        return max(r.ratio_logderiv for r in self.rows)

    @property
    def window_min(self) -> float:
        return min(r.abs_l_window for r in self.rows)

    @property
    def window_max(self) -> float:
        return max(r.abs_l_window for r in self.rows)


def lchi_bound_monitor(
    chi: DirichletCharacter,
    k: int,
    y: float,
    tables: ArithmeticTables,
    sigma_grid=SIGMA_GRID,
    t_grid=(0.0, 1.0, -1.0, 5.0),
    nmax: int | None = None,
    zero_floor: float = 1e-12,
) -> LchiReport:
    """Ratio monitor for the character-series derivative and log-derivative
    growth shapes, plus the |L| window at sifting level q·V_t.

    Everything here is report-grade: the assertable properties are
    finiteness and grid stability, not the ratios themselves.
    """
    q = chi.modulus
    delta = chi.delta
    f = CharacterFunction(chi)
    ctx_y = SeriesContext(f, y, tables)
    ctx_full = SeriesContext(f, 1.5, tables)
    cap = min(nmax or tables.limit, tables.limit)
    rows = []
    for t in t_grid:
        v = vt(t)
        window_ctx = SeriesContext(f, max(1.5, q * v), tables)
        for sigma in sigma_grid:
            s = complex(sigma, t)
            # derivative shape at level y
            sv = evaluate_series(ctx_y, s, k, nmax=cap)
            lhs1 = sv.value
            if delta:
                pole = (
                    (-1.0) ** (k + 1)
                    * math.factorial(k)
                    / (s - 1.0) ** (k + 1)
                    * (tables.totient[q] / q if q > 1 else 1.0)
                    * euler_factor(y, tables, coprime_to=q)
                )
                lhs1 = lhs1 + pole
            shape1 = (
                math.factorial(k) * math.log(y * q * v) ** (k + 1) / math.log(y)
            )
            # |L| at the q·V_t window
            window = abs(evaluate_series(window_ctx, s, 0, nmax=cap).value)
            # log-derivative shape on the full series
            bundle = derivative_bundle(ctx_full, s, max(k, 1), nmax=cap)
            try:
                logder, _ceiling = faa_log_derivative(bundle, zero_floor=zero_floor)
            except ZeroDenominatorError:
                logder = complex(math.inf)
            kk = max(k, 1)
            lhs3 = logder + (
                delta * (-1.0) ** (kk - 1) * math.factorial(kk - 1) / (s - 1.0) ** kk
            )
            denom = delta + (1 - delta) * window
            shape3 = (kk * math.log(max(q * v, 2.0)) / max(denom, 1e-300)) ** kk
            rows.append(
                LchiRow(
                    sigma=sigma,
                    t=t,
                    k=k,
                    lhs_derivative=abs(lhs1),
                    shape_derivative=shape1,
                    ratio_derivative=abs(lhs1) / shape1,
                    abs_l_window=window,
                    lhs_logderiv=abs(lhs3),
                    shape_logderiv=shape3,
                    ratio_logderiv=abs(lhs3) / shape3,
                )
            )
    return LchiReport(modulus=q, chi_index=chi.index, y=y, rows=rows)
