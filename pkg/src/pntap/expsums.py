"""Exponential sums with the archimedean twist n^{it}.

Exact (compensated) evaluation of shifted dyadic sums
Σ_{N < n ≤ 2N} (n+u)^{it}, 0 ≤ u ≤ 1, against the unconditional decay
ceiling

    |Σ_{N < n ≤ 2N} (n+u)^{it}| ≤ N · exp(−(log N)³ / (66852 (log |t|)²)),
        valid for 2 ≤ N ≤ t²,

which the tests treat as a hard dominance check over the scan grid.  On
the valid range the ceiling is strictly increasing in N, since
3(log N)²/(66852 (log|t|)²) ≤ 12/66852 < 1 there.

Sifted character sums Σ_{n ≤ x, P⁻(n) > y} χ(n) n^{it} are compared
against the density main term

    δ(χ) · (φ(q)/q) · Π_{p ≤ y, p∤q} (1 − 1/p) · x^{1+it}/(1+it),

with the residual reported against the slow-decay shape
x·exp(−(log x)³/(185000 (log(q(3+|t|)))²)).  The shape comparison is
report-grade; only the main-term accuracy for principal characters is
asserted.

Phase reliability: the computed phase of n^{it} is t·log n rounded to
binary64, so its ulp is spacing(|t| log N').  Results carry that ulp and
a warning flag once it exceeds 1e−6 radians.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._util import _BLOCK, cfsum
from .arith import ArithmeticTables
from .characters import DirichletCharacter
from .exceptions import CapacityError
from .series import euler_factor

_WINDOW_CAP = 100_000_000
_PHASE_ULP_WARN = 1e-6


def range_exp_sum(lo: int, hi: int, t: float, shift: float = 0.0) -> complex:
    """Σ_{lo < n ≤ hi} (n+shift)^{it}, exactly summed in fixed-size blocks."""
    lo, hi = int(lo), int(hi)
    if hi <= lo:
        return 0j
    if hi - lo > _WINDOW_CAP:
        raise CapacityError(f"window of length {hi - lo} exceeds {_WINDOW_CAP}")
    parts = []
    for a in range(lo + 1, hi + 1, _BLOCK):
        b = min(a + _BLOCK, hi + 1)
        n = np.arange(a, b, dtype=np.float64) + shift
        parts.append(cfsum(np.exp(1j * t * np.log(n))))
    return cfsum(np.asarray(parts))


def prefix_exp_sum(x: float, t: float) -> complex:
    """Σ_{n ≤ x} n^{it}."""
    return range_exp_sum(0, math.floor(x), t)


def exp_sum_ceiling(N: int, t: float) -> float:
    """N·exp(−(log N)³/(66852 (log|t|)²)); requires 2 ≤ N ≤ t²."""
    if N < 2:
        raise ValueError("ceiling needs N >= 2")
    if N > t * t:
        raise ValueError(f"ceiling needs N <= t^2; got N={N}, t={t}")
    return N * math.exp(-math.log(N) ** 3 / (66852.0 * math.log(abs(t)) ** 2))


@dataclass
class DyadicBound:
    N: int
    t: float
    shift: float
    value: complex
    magnitude: float
    ceiling: float
    ratio: float
    phase_ulp: float
    phase_warning: bool


def dyadic_exp_sum(N: int, t: float, shift: float = 0.0) -> DyadicBound:
    """|Σ_{N < n ≤ 2N} (n+shift)^{it}| against the decay ceiling."""
    if not 0.0 <= shift <= 1.0:
        raise ValueError("shift must lie in [0, 1]")
    value = range_exp_sum(N, 2 * N, t, shift=shift)
    ceiling = exp_sum_ceiling(N, t)
    ulp = float(np.spacing(abs(t) * math.log(2.0 * N + 1.0)))
    return DyadicBound(
        N=int(N),
        t=float(t),
        shift=float(shift),
        value=value,
        magnitude=abs(value),
        ceiling=ceiling,
        ratio=abs(value) / ceiling,
        phase_ulp=ulp,
        phase_warning=ulp > _PHASE_ULP_WARN,
    )


def nit_scan(t_values, N_values, shifts=(0.0,)) -> list[DyadicBound]:
    """Dominance scan of the exact dyadic sums against the ceiling.

    Grid points violating the ceiling's validity window are skipped.
    """
    rows = []
    for t in t_values:
        for N in N_values:
            if N < 2 or N > t * t:
                continue
            for u in shifts:
                rows.append(dyadic_exp_sum(int(N), float(t), shift=float(u)))
    return rows


def dyadic_recombination(x: float, t: float) -> tuple[complex, complex, float]:
    """(prefix sum, Σ over dyadic windows, |difference|): order-insensitivity."""
    direct = prefix_exp_sum(x, t)
    xf = math.floor(x)
    pieces, lo = [], 0
    while lo < xf:
        hi = min(2 * lo, xf) if lo else 1
        pieces.append(range_exp_sum(lo, hi, t))
        lo = hi
    recombined = cfsum(np.asarray(pieces)) if pieces else 0j
    return direct, recombined, abs(direct - recombined)


def midproof_shape(x: float, q: int, t: float) -> float:
    """x·exp(−(log x)³/(185000 (log(q(3+|t|)))²)) — reporting scale only."""
    if x < 2 or q < 1:
        raise ValueError("need x >= 2, q >= 1")
    L = math.log(q * (3.0 + abs(t)))
    return x * math.exp(-math.log(x) ** 3 / (185000.0 * L * L))


@dataclass
class SiftedCharRow:
    modulus: int
    chi_index: int
    y: float
    x: float
    t: float
    total: complex
    main: complex
    discrepancy: float
    shape: float
    shape_ratio: float


def sifted_character_sum(
    chi: DirichletCharacter,
    y: float,
    x: float,
    t: float,
    tables: ArithmeticTables,
) -> SiftedCharRow:
    """Σ_{n ≤ x, P⁻(n) > y} χ(n) n^{it} against the density main term."""
    xf = math.floor(x)
    if xf > tables.limit:
        raise ValueError(f"x={x} beyond table limit {tables.limit}")
    q = chi.modulus
    mask = tables.spf[: xf + 1] > y
    n = np.nonzero(mask)[0].astype(np.float64)
    chiv = np.asarray(chi.values_up_to(xf))[mask]
    total = cfsum(chiv * np.exp(1j * t * np.log(n)))
    if chi.is_principal:
        density = (tables.totient[q] / q if q > 1 else 1.0) * euler_factor(
            y, tables, coprime_to=q
        )
        s = complex(1.0, t)
        main = density * complex(x) ** s / s
    else:
        main = 0j
    disc = abs(total - main)
    shape = midproof_shape(max(x, 2.0), q, t)
    return SiftedCharRow(
        modulus=q,
        chi_index=chi.index,
        y=y,
        x=float(x),
        t=float(t),
        total=total,
        main=main,
        discrepancy=disc,
        shape=shape,
        shape_ratio=disc / shape,
    )


def chinit_scan(
    chi: DirichletCharacter,
    y: float,
    x_values,
    t_values,
    tables: ArithmeticTables,
) -> list[SiftedCharRow]:
    return [
        sifted_character_sum(chi, y, float(x), float(t), tables)
        for x in x_values
        for t in t_values
    ]
