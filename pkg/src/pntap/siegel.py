"""Lower-bound machinery for L(1, χ): partial-sum constants, accelerated
L-values, positivity scans, and nonnegative convolution squares.

Partial sums of the mildly-twisted harmonic series obey, for 0 ≤ η ≤ 1/20
and integer B ≥ 2,

    Σ_{n ≤ B} n^{η−1}        = (B^η − 1)/η + γ_η       + O(B^{η−1}),
    Σ_{n ≤ B} n^{η−1} log n  = ∂_η[(B^η − 1)/η] + γ'_η + O(B^{η−1} log B),

with γ_η = 1 − (1−η)∫_1^∞ {u} u^{η−2} du and γ'_η its η-derivative; at
η = 0 these are the Euler–Mascheroni constant and the first Stieltjes
constant.  The integrals are evaluated in closed form on unit panels with
a certified tail: replacing {u} by 1/2 beyond U leaves a remainder driven
by the sawtooth antiderivative ({u}² − {u})/2 ∈ [−1/8, 0], giving
|R| ≤ U^{η−2}/8 (plain) and ≤ U^{η−2}(log U + 2)/8 (log-weighted).

L(1, χ) for non-principal χ mod q is computed as a head Σ_{n ≤ Jq} χ(n)/n
plus the expansion of the tail in Hurwitz zetas,

    Σ_{n > Jq} χ(n)/n = Σ_{i ≥ 1} (−1)^i A_i q^{−(i+1)} ζ(i+1, J),
    A_i = Σ_{a=1}^{q} χ(a) a^i,

the i = 0 term vanishing by Σ_a χ(a) = 0.  Truncating at i < m leaves at
most (1/J + 1/m)·J^{−m}·J/(J−1), far below 1e−12 at the defaults.  The
independent oracle is the digamma formula L(1,χ) = −(1/q) Σ_a χ(a) ψ(a/q).

For real χ₁, χ₂ the convolution f = 1 ∗ χ₁ ∗ χ₂ ∗ χ₁χ₂ has nonnegative
values bounded by τ₄, by inspection of the Euler local factors (including
χ₁ = χ₂, where the square of a local zero doubles); the check is run in
exact integer arithmetic.  Series of f are only evaluated for σ > 4/5.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import digamma
from scipy.special import zeta as hurwitz_zeta

from ._util import cfsum, fsum
from .arith import ArithmeticTables, dirichlet_convolve
from .characters import DirichletCharacter, character_group
from .exceptions import CapacityError

_ETA_MAX = 0.05
_DEFAULT_PANELS = 40_000


@dataclass
class EtaConstants:
    eta: float
    gamma: float
    gamma_log: float
    accuracy: float


def _panel_sums(eta: float, U: int) -> tuple[float, float]:
    """(∫_1^U {u}u^{η−2}du, ∫_1^U {u}u^{η−2}log u du) on exact unit panels.

    Panel [k, k+1): ∫(u−k)u^{η−2}du = ΔP − k·ΔQ with P = u^η/η, Q = u^{η−1}/(η−1);
    log-weighted uses Pl = u^η(η log u − 1)/η², Ql = u^{η−1}((η−1)log u − 1)/(η−1)².
    The η → 0 limits are log u and log²u/2.
    """
    u = np.arange(1, U + 1, dtype=np.float64)
    logu = np.log(u)
    k = u[:-1]
    if eta == 0.0:
        dP = logu[1:] - logu[:-1]
        Pl = 0.5 * logu * logu
    else:
        # stable u^eta differences: e^{eta log k}·expm1(eta·Δlog)/eta
        dP = np.exp(eta * logu[:-1]) * np.expm1(eta * (logu[1:] - logu[:-1])) / eta
        Pl = (np.exp(eta * logu) * (eta * logu - 1.0) + 1.0) / (eta * eta)
    a = eta - 1.0
    Q = np.exp(a * logu) / a
    Ql = np.exp(a * logu) * (a * logu - 1.0) / (a * a)
    plain = fsum(dP - k * (Q[1:] - Q[:-1]))
    logw = fsum((Pl[1:] - Pl[:-1]) - k * (Ql[1:] - Ql[:-1]))
    return plain, logw


def eta_constants(eta: float, panels: int = _DEFAULT_PANELS) -> EtaConstants:
    """γ_η and γ'_η with a certified quadrature-accuracy bound."""
    if not 0.0 <= eta <= _ETA_MAX:
        raise ValueError(f"eta must lie in [0, {_ETA_MAX}]")
    U = int(panels)
    if U < 100:
        raise ValueError("need at least 100 panels")
    plain, logw = _panel_sums(eta, U)
    # tails: {u} -> 1/2 exactly, remainder certified via the sawtooth
    tail_plain = 0.5 * U ** (eta - 1.0) / (1.0 - eta)
    tail_log = 0.5 * U ** (eta - 1.0) * (
        math.log(U) / (1.0 - eta) + 1.0 / (1.0 - eta) ** 2
    )
    rem_plain = U ** (eta - 2.0) / 8.0
    rem_log = U ** (eta - 2.0) * (math.log(U) + 2.0) / 8.0
    I = plain + tail_plain
    Ilog = logw + tail_log
    gamma = 1.0 - (1.0 - eta) * I
    gamma_log = I - (1.0 - eta) * Ilog
    return EtaConstants(
        eta=eta,
        gamma=gamma,
        gamma_log=gamma_log,
        accuracy=(1.0 - eta) * (rem_plain + rem_log) + 1e-9,
    )


def power_sum_main(eta: float, B: float) -> float:
    """(B^η − 1)/η, continued to log B at η = 0; expm1-stable."""
    L = math.log(B)
    return L if eta == 0.0 else math.expm1(eta * L) / eta


def power_sum_main_log(eta: float, B: float) -> float:
    """∂_η[(B^η − 1)/η] = (ηB^η log B − B^η + 1)/η², continued to log²B/2.

    For |η log B| ≤ 1/2 the numerator is Σ_{k≥2}(ηL)^k (k−1)/k!, summed
    directly to dodge the catastrophic cancellation of the closed form.
    """
    L = math.log(B)
    if eta == 0.0:
        return 0.5 * L * L
    z = eta * L
    if abs(z) <= 0.5:
        acc, zpow = 0.0, 1.0
        for k in range(2, 22):
            acc += zpow * (k - 1) / math.factorial(k)
            zpow *= z
        return L * L * acc
    e = math.exp(z)
    return (eta * e * L - e + 1.0) / (eta * eta)


@dataclass
class PartialSumRow:
    eta: float
    B: int
    lhs: float
    rhs: float
    err: float
    bound: float
    lhs_log: float
    rhs_log: float
    err_log: float
    bound_log: float

    @property
    def ok(self) -> bool:
        return abs(self.err) <= self.bound and abs(self.err_log) <= self.bound_log


def partial_sum_identity_check(eta: float, b_values) -> list[PartialSumRow]:
    """Exact partial sums against main term + constant, bound 10B^{η−1}(1+log B)."""
    consts = eta_constants(eta)
    rows = []
    for B in b_values:
        B = int(B)
        if B < 2:
            raise ValueError("need B >= 2")
        n = np.arange(1, B + 1, dtype=np.float64)
        logn = np.log(n)
        w = np.exp((eta - 1.0) * logn)
        lhs = fsum(w)
        lhs_log = fsum(w * logn)
        rhs = power_sum_main(eta, B) + consts.gamma
        rhs_log = power_sum_main_log(eta, B) + consts.gamma_log
        bound = 10.0 * B ** (eta - 1.0) * (1.0 + math.log(B))
        rows.append(
            PartialSumRow(
                eta=eta,
                B=B,
                lhs=lhs,
                rhs=rhs,
                err=lhs - rhs,
                bound=bound,
                lhs_log=lhs_log,
                rhs_log=rhs_log,
                err_log=lhs_log - rhs_log,
                bound_log=bound,
            )
        )
    return rows


def hyperbola_partial(
    chi: DirichletCharacter, x: int, eta: float, split: float
) -> complex:
    """Σ_{ab ≤ x} χ(a)(ab)^{η−1} grouped around a ≤ split.

    Σ_{a ≤ A} χ(a)a^{η−1} S(x/a) + Σ_{b ≤ x/A} b^{η−1} T(x/b) − T(A)·S(x/A),
    S, T the plain/twisted power sums — split-invariant, the hyperbola check.
    """
    x = int(x)
    A = float(split)
    if not 1.0 <= A <= x:
        raise ValueError("split must lie in [1, x]")

    def S(z: float) -> float:
        n = np.arange(1, math.floor(z) + 1, dtype=np.float64)
        return fsum(np.exp((eta - 1.0) * np.log(n)))

    def T(z: float) -> complex:
        m = math.floor(z)
        n = np.arange(1, m + 1, dtype=np.float64)
        cv = np.asarray(chi.values_up_to(m))[1:]
        return cfsum(cv * np.exp((eta - 1.0) * np.log(n)))

    Afl = math.floor(A)
    first = 0j
    for a in range(1, Afl + 1):
        ca = chi(a)
        if ca:
            first += ca * a ** (eta - 1.0) * S(x / a)
    second = 0j
    Bfl = math.floor(x / A)
    for b in range(1, Bfl + 1):
        second += b ** (eta - 1.0) * T(x / b)
    return first + second - T(A) * S(x / A)


def hyperbola_direct(chi: DirichletCharacter, x: int, eta: float) -> complex:
    """Direct Σ_{n ≤ x} (χ∗1)(n) n^{η−1} via an exact integer convolution."""
    x = int(x)
    n = np.arange(x + 1)
    ones = np.ones(x + 1, dtype=np.int64)
    ones[0] = 0
    if chi.is_real:
        cv = chi.int_table()[n % chi.modulus].astype(np.int64)
        conv = dirichlet_convolve(cv, ones)
        w = np.exp((eta - 1.0) * np.log(n[1:].astype(np.float64)))
        return complex(fsum(conv[1:] * w))
    cv = np.asarray(chi.values_up_to(x))
    conv_r = dirichlet_convolve(cv.real, ones.astype(np.float64))
    conv_i = dirichlet_convolve(cv.imag, ones.astype(np.float64))
    w = np.exp((eta - 1.0) * np.log(n[1:].astype(np.float64)))
    return complex(fsum(conv_r[1:] * w), fsum(conv_i[1:] * w))


@dataclass
class L1Value:
    modulus: int
    chi_index: int
    value: complex
    remainder: float
    head_multiple: int
    tail_terms: int


def l1_series(
    chi: DirichletCharacter, head_multiple: int = 32, tail_terms: int = 10
) -> L1Value:
    """L(1, χ) by head + Hurwitz-zeta tail; non-principal only."""
    if chi.is_principal:
        raise ValueError("L(1, chi) diverges for principal chi")
    J, m = int(head_multiple), int(tail_terms)
    if J < 2 or not 1 <= m <= 12:
        raise ValueError("need head_multiple >= 2 and 1 <= tail_terms <= 12")
    q = chi.modulus
    N = J * q
    n = np.arange(1, N + 1, dtype=np.float64)
    cv = np.asarray(chi.values_up_to(N))[1:]
    head = cfsum(cv / n)
    tail = 0j
    if chi.is_real:
        tab = chi.int_table()
        for i in range(1, m):
            Ai = sum(int(tab[a % q]) * a**i for a in range(1, q + 1))
            tail += (-1.0) ** i * Ai * float(q) ** (-(i + 1)) * float(
                hurwitz_zeta(i + 1, J)
            )
    else:
        for i in range(1, m):
            Ai = sum(chi(a) * float(a) ** i for a in range(1, q + 1))
            tail += (-1.0) ** i * Ai * float(q) ** (-(i + 1)) * float(
                hurwitz_zeta(i + 1, J)
            )
    rem = (1.0 / J + 1.0 / m) * float(J) ** (-m) * J / (J - 1.0)
    return L1Value(
        modulus=q,
        chi_index=chi.index,
        value=head + tail,
        remainder=rem,
        head_multiple=J,
        tail_terms=m,
    )


def l1_digamma(chi: DirichletCharacter) -> complex:
    """Oracle path: L(1, χ) = −(1/q) Σ_{a=1}^{q−1} χ(a) ψ(a/q)."""
    if chi.is_principal:
        raise ValueError("L(1, chi) diverges for principal chi")
    q = chi.modulus
    acc = 0j
    for a in range(1, q):
        ca = chi(a)
        if ca:
            acc += ca * float(digamma(a / q))
    return -acc / q


@dataclass
class SiegelRow:
    modulus: int
    chi_index: int
    conductor: int
    l_value: float
    sqrtq_l: float


@dataclass
class SiegelScan:
    qmax: int
    rows: list[SiegelRow]
    min_l: float
    min_sqrtq_l: float
    fitted_exponent: float


def siegel_scan(
    qmax: int,
    primitive_only: bool = False,
    head_multiple: int = 32,
    tail_terms: int = 10,
) -> SiegelScan:
    """L(1, χ) over real non-principal χ of modulus ≤ qmax.

    Reports positivity, the minimum of √q·L(1,χ), and the fitted slope of
    log(min_q L) against log q (the q^{−ε} trend; report-grade).  With
    ``primitive_only`` the scan keeps only χ of conductor exactly q, so the
    modulus column becomes the conductor and each L-value appears once.
    """
    if qmax < 3:
        raise ValueError("qmax must be >= 3")
    if qmax > 10_000:
        raise CapacityError("scan above q = 10000 not sized for this path")
    rows = []
    per_q_min: dict[int, float] = {}
    for q in range(3, qmax + 1):
        group = character_group(q)
        for chi in group.real_characters():
            if chi.is_principal:
                continue
            if primitive_only and chi.conductor != q:
                continue
            lv = l1_series(chi, head_multiple=head_multiple, tail_terms=tail_terms)
            val = lv.value.real
            rows.append(
                SiegelRow(
                    modulus=q,
                    chi_index=chi.index,
                    conductor=chi.conductor,
                    l_value=val,
                    sqrtq_l=math.sqrt(q) * val,
                )
            )
            per_q_min[q] = min(per_q_min.get(q, math.inf), val)
    qs = np.array(sorted(per_q_min), dtype=np.float64)
    mins = np.array([per_q_min[int(q)] for q in qs])
    slope = float(np.polyfit(np.log(qs), np.log(mins), 1)[0])
    return SiegelScan(
        qmax=qmax,
        rows=rows,
        min_l=min(r.l_value for r in rows),
        min_sqrtq_l=min(r.sqrtq_l for r in rows),
        fitted_exponent=slope,
    )


@dataclass
class ConvolutionSumReport:
    moduli: tuple[int, int]
    x: int
    checkpoints: list[tuple[int, int]]  # (n, S(n))
    worst_ratio: float
    bound_ok: bool


def convolution_partial_sums(
    chi1: DirichletCharacter,
    chi2: DirichletCharacter,
    x: int,
    tables: ArithmeticTables,
) -> ConvolutionSumReport:
    """S(n) = Σ_{m ≤ n} (χ₁∗χ₂)(m) against |S(n)| ≤ 2q₁q₂√n, exact ints."""
    if not (chi1.is_real and chi2.is_real):
        raise ValueError("integer path needs real characters")
    x = int(x)
    tables.check_range(x)
    n = np.arange(x + 1)
    v1 = chi1.int_table()[n % chi1.modulus].astype(np.int64)
    v2 = chi2.int_table()[n % chi2.modulus].astype(np.int64)
    conv = dirichlet_convolve(v1, v2)
    S = np.cumsum(conv[: x + 1])
    scale = 2.0 * chi1.modulus * chi2.modulus
    ratios = np.abs(S[1:]) / (scale * np.sqrt(n[1:].astype(np.float64)))
    worst = float(ratios.max())
    marks = [10, 100, 1000, 10_000, 100_000, 1_000_000]
    checkpoints = [(m, int(S[m])) for m in marks if m <= x]
    return ConvolutionSumReport(
        moduli=(chi1.modulus, chi2.modulus),
        x=x,
        checkpoints=checkpoints,
        worst_ratio=worst,
        bound_ok=bool(worst <= 1.0),
    )


@lru_cache(maxsize=128)
def _ones_star_chi(modulus: int, index: int, limit: int) -> np.ndarray:
    """(1 ∗ χ)(n) on [0, limit] for the real χ of the given index; cached
    because pair sweeps reuse the same left factor many times."""
    chi = character_group(modulus).character_by_index(index)
    n = np.arange(limit + 1)
    v = chi.int_table()[n % modulus].astype(np.int64)
    ones = np.ones(limit + 1, dtype=np.int64)
    ones[0] = 0
    return dirichlet_convolve(ones, v)


@lru_cache(maxsize=8)
def _tau4_table(limit: int) -> np.ndarray:
    ones = np.ones(limit + 1, dtype=np.int64)
    ones[0] = 0
    t2 = dirichlet_convolve(ones, ones)
    return dirichlet_convolve(dirichlet_convolve(t2, ones), ones)


def make_convolution_triple(
    chi1: DirichletCharacter,
    chi2: DirichletCharacter,
    limit: int,
    tables: ArithmeticTables,
) -> np.ndarray:
    """f = 1 ∗ χ₁ ∗ χ₂ ∗ (χ₁χ₂) on [0, limit], exact int64."""
    if not (chi1.is_real and chi2.is_real):
        raise ValueError("integer path needs real characters")
    limit = int(limit)
    tables.check_range(limit)
    n = np.arange(limit + 1)
    v1 = chi1.int_table()[n % chi1.modulus].astype(np.int64)
    v2 = chi2.int_table()[n % chi2.modulus].astype(np.int64)
    v12 = v1 * v2
    left = _ones_star_chi(chi1.modulus, chi1.index, limit)
    f = dirichlet_convolve(dirichlet_convolve(left, v2), v12)
    return f


@dataclass
class Zerol1Report:
    moduli: tuple[int, int]
    limit: int
    nonneg_ok: bool
    ceiling_ok: bool
    min_value: int
    series_sigma: float
    series_value: float


def zerol1_hypothesis_check(
    chi1: DirichletCharacter,
    chi2: DirichletCharacter,
    limit: int,
    tables: ArithmeticTables,
    sigma: float = 0.9,
) -> Zerol1Report:
    """0 ≤ f(n) ≤ τ₄(n) for f = 1∗χ₁∗χ₂∗χ₁χ₂, plus Σ f(n)n^{−σ}, σ > 4/5."""
    if sigma <= 0.8:
        raise ValueError("series evaluation refused for sigma <= 4/5")
    limit = int(limit)
    f = make_convolution_triple(chi1, chi2, limit, tables)
    tau4 = _tau4_table(limit)
    nonneg = bool((f[1:] >= 0).all())
    ceiling = bool((f[1:] <= tau4[1:]).all())
    nvals = np.arange(1, limit + 1, dtype=np.float64)
    series = fsum(f[1:] * np.exp(-sigma * np.log(nvals)))
    return Zerol1Report(
        moduli=(chi1.modulus, chi2.modulus),
        limit=limit,
        nonneg_ok=nonneg,
        ceiling_ok=ceiling,
        min_value=int(f[1:].min()),
        series_sigma=sigma,
        series_value=series,
    )
