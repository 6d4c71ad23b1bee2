"""Prime counting in arithmetic progressions: ψ(x; q, a) and its anatomy.

Everything is assembled from the prime-power tables: ψ(x; q, a) sums log p
over prime powers p^k ≤ x with p^k ≡ a (mod q).  The character
decomposition

    ψ(x; q, a) = x/φ(q)
               + (1/φ(q)) Σ_χ χ̄(a) (ψ(x, χ) − δ(χ)⌊x⌋)
               − (x − ⌊x⌋)/φ(q),

is exact — orthogonality plus bookkeeping — and the code checks it as an
identity between two independently-summed floating paths.  The principal
twist differs from the full Chebyshev sum by exactly the prime powers
sharing a factor with q:  ψ(x) − ψ(x, χ₀) = Σ_{p | q, p^k ≤ x} log p.

Smoothed twisted sums S_k(y, χ) = Σ_{n ≤ y} χ(n)Λ(n) log^k(y/n)/k! admit
a second exact route through cumulative sums,

    S_k(y, χ) = Σ_m G(m) (log^k(y/m) − log^k(y/min(m+1, y)))/k!,
    G(m) = Σ_{n ≤ m} χ(n)Λ(n),

and both routes are required to agree to a part in 1e7.

The per-modulus lower-bound ratio is η_q = min_χ L(1, χ)/log(3q) over the
real non-principal χ mod q (undefined at q ∈ {1, 2}); the error-profile
fitter scores |ψ(x; q, a) − x/φ(q)|·(log x)^A·φ(q)/x over admissible
grids q ≤ (log x)^A and reports the fitted constants.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._util import cfsum, fsum, write_csv
from .arith import ArithmeticTables, chebyshev_psi
from .characters import DirichletCharacter, character_group
from .siegel import l1_series


def _normalize_residue(q: int, a: int) -> int:
    if q < 1:
        raise ValueError("modulus must be >= 1")
    a = a % q if q > 1 else 0
    if math.gcd(a, q) != 1:
        raise ValueError(f"residue {a} not coprime to modulus {q}")
    return a


def psi_ap(x: float, q: int, a: int, tables: ArithmeticTables) -> float:
    """ψ(x; q, a) = Σ_{p^k ≤ x, p^k ≡ a (q)} log p."""
    a = _normalize_residue(q, a)
    tables.check_range(math.floor(x))
    pp = tables.prime_powers
    hi = np.searchsorted(pp, math.floor(x), side="right")
    mask = pp[:hi] % q == a
    return fsum(tables.prime_power_logs[:hi][mask])


def psi_chi(x: float, chi: DirichletCharacter, tables: ArithmeticTables) -> complex:
    """ψ(x, χ) = Σ_{n ≤ x} χ(n)Λ(n)."""
    tables.check_range(math.floor(x))
    pp = tables.prime_powers
    hi = np.searchsorted(pp, math.floor(x), side="right")
    vals = chi.value_table()[pp[:hi] % chi.modulus]
    return cfsum(vals * tables.prime_power_logs[:hi])


@dataclass
class DecompositionReport:
    x: float
    q: int
    a: int
    direct: float
    assembled: float
    identity_gap: float
    main_term: float
    principal_defect: float
    principal_defect_bound: float
    nonprincipal_terms: dict


def orthogonality_decomposition(
    x: float, q: int, a: int, tables: ArithmeticTables
) -> DecompositionReport:
    """ψ(x; q, a) reassembled through the character sums, exactly.

    identity_gap is |direct − assembled| after the (x−⌊x⌋)/φ bookkeeping
    term — pure floating error.  principal_defect is ψ(x) − ψ(x, χ₀),
    checked against its closed form Σ_{p|q, p^k ≤ x} log p and the coarse
    ceiling ω(q)·log²x + 1.
    """
    a = _normalize_residue(q, a)
    group = character_group(q)
    phi = group.phi
    direct = psi_ap(x, q, a, tables)
    xf = math.floor(x)
    acc = 0j
    nonprincipal = {}
    for chi in group.characters():
        pc = psi_chi(x, chi, tables)
        term = (pc - (xf if chi.is_principal else 0.0)) * np.conj(
            chi(a) if q > 1 else 1.0
        )
        acc += term
        if not chi.is_principal:
            nonprincipal[chi.index] = abs(pc)
    assembled = x / phi + acc.real / phi - (x - xf) / phi
    # principal defect: prime powers sharing a factor with q
    full = chebyshev_psi(x, tables)
    principal = psi_chi(x, group.principal, tables).real
    defect = full - principal
    omega_q = len(tables.factor(q).factors) if q > 1 else 0
    bound = omega_q * math.log(max(x, 2.0)) ** 2 + 1.0
    return DecompositionReport(
        x=float(x),
        q=q,
        a=a,
        direct=direct,
        assembled=assembled,
        identity_gap=abs(direct - assembled),
        main_term=x / phi,
        principal_defect=defect,
        principal_defect_bound=bound,
        nonprincipal_terms=nonprincipal,
    )


@dataclass
class SmoothedRow:
    y: float
    k: int
    direct: complex
    integral_path: complex
    rel_gap: float
    ratio: float


def smoothed_twist_profile(
    chi: DirichletCharacter,
    y_values,
    tables: ArithmeticTables,
    k: int = 1,
) -> list[SmoothedRow]:
    """S_k(y, χ) by direct weighting and by the cumulative-sum integral.

    ratio is |S_k|·k!/(y) for non-principal χ (expected ≪ log^k y) and
    |S_k·k!/y − 1| for the principal character, both report-grade.
    """
    if not 1 <= k <= 12:
        raise ValueError("smoothing order k must be in [1, 12]")
    rows = []
    for y in y_values:
        y = float(y)
        if y < 2:
            raise ValueError("need y >= 2")
        tables.check_range(math.floor(y))
        pp = tables.prime_powers
        hi = np.searchsorted(pp, math.floor(y), side="right")
        ppv = pp[:hi]
        logs = tables.prime_power_logs[:hi]
        cv = chi.value_table()[ppv % chi.modulus]
        w = np.log(y / ppv.astype(np.float64)) ** k / math.factorial(k)
        direct = cfsum(cv * logs * w)
        # integral route over the step function G(m), m <= floor(y)
        m = math.floor(y)
        g = np.zeros(m + 1, dtype=np.complex128)
        g[ppv] = cv * logs
        G = np.cumsum(g)
        edges = np.arange(1, m + 1, dtype=np.float64)
        upper = np.minimum(edges + 1.0, y)
        wk = (np.log(y / edges) ** k - np.log(y / upper) ** k) / math.factorial(k)
        integral = cfsum(G[1:] * wk)
        gap = abs(direct - integral) / max(1.0, abs(direct))
        if chi.is_principal:
            ratio = abs(direct.real * math.factorial(k) / y - 1.0)
        else:
            ratio = abs(direct) * math.factorial(k) / y
        rows.append(
            SmoothedRow(
                y=y,
                k=k,
                direct=direct,
                integral_path=integral,
                rel_gap=gap,
                ratio=ratio,
            )
        )
    return rows


def principal_complement_identity(
    q: int, y: float, tables: ArithmeticTables, k: int = 1
) -> tuple[float, float, float]:
    """(S_k over all n, S_k(χ₀) + S_k over gcd(n,q)>1, gap) — exact split."""
    y = float(y)
    tables.check_range(math.floor(y))
    group = character_group(q)
    pp = tables.prime_powers
    hi = np.searchsorted(pp, math.floor(y), side="right")
    ppv = pp[:hi]
    logs = tables.prime_power_logs[:hi]
    w = np.log(y / ppv.astype(np.float64)) ** k / math.factorial(k)
    full = fsum(logs * w)
    principal = smoothed_twist_profile(group.principal, (y,), tables, k=k)[0]
    shared = ppv % q if q > 1 else np.ones_like(ppv)
    mask = np.array([math.gcd(int(r), q) != 1 for r in shared]) if q > 1 else (
        np.zeros(len(ppv), dtype=bool)
    )
    complement = fsum(logs[mask] * w[mask])
    recombined = principal.direct.real + complement
    return full, recombined, abs(full - recombined)


def eta_q(q: int) -> float | None:
    """min_χ L(1, χ)/log(3q) over real non-principal χ mod q; None at q ≤ 2."""
    if q < 1:
        raise ValueError("modulus must be >= 1")
    if q <= 2:
        return None
    best = math.inf
    for chi in character_group(q).real_characters():
        if chi.is_principal:
            continue
        best = min(best, l1_series(chi).value.real)
    return best / math.log(3.0 * q)


@dataclass
class ErrorProfileRow:
    A: float
    x: float
    q: int
    a: int
    scaled_error: float


@dataclass
class ErrorProfile:
    rows: list[ErrorProfileRow]
    fitted: dict  # A -> max scaled error over admissible (x, q, a)

    def to_csv(self, path) -> None:
        write_csv(
            path,
            ("A", "x", "q", "a", "scaled_error"),
            [(r.A, r.x, r.q, r.a, r.scaled_error) for r in self.rows],
        )


def theorem_error_profile(
    tables: ArithmeticTables,
    a_exponents=(1.0, 2.0, 3.0),
    x_values=(10**4, 10**5, 10**6),
    qmax: int = 30,
    q_values=None,
) -> ErrorProfile:
    """Fitted constants c_A = sup φ(q)|ψ(x;q,a) − x/φ(q)|(log x)^A / x
    over the admissible grid q ≤ (log x)^A, q ≤ qmax; report-grade.

    ``q_values`` restricts the moduli; inadmissible (q, x, A) combinations
    are dropped, never asserted.
    """
    rows = []
    fitted = {}
    for A in a_exponents:
        worst = 0.0
        for x in x_values:
            if x > tables.limit:
                continue
            lx = math.log(x)
            admissible = range(3, min(qmax, math.floor(lx**A)) + 1)
            if q_values is not None:
                admissible = [q for q in q_values if 3 <= q <= min(qmax, lx**A)]
            for q in admissible:
                group = character_group(q)
                for a in range(1, q):
                    if math.gcd(a, q) != 1:
                        continue
                    err = abs(psi_ap(x, q, a, tables) - x / group.phi)
                    scaled = group.phi * err * lx**A / x
                    rows.append(
                        ErrorProfileRow(A=A, x=float(x), q=q, a=a, scaled_error=scaled)
                    )
                    worst = max(worst, scaled)
        fitted[A] = worst
    return ErrorProfile(rows=rows, fitted=fitted)


def theorem_shape_scale(x: float) -> float:
    """(log x)^{3/5} (log log x)^{−1/5}: the error-exponent scale of the
    strongest unconditional progression error term."""
    lx = math.log(x)
    if lx <= 1.0:
        raise ValueError("shape scale needs x > e")
    return lx**0.6 / math.log(lx) ** 0.2


@dataclass
class ProfileRow:
    q: int
    a: int
    x: float
    psi: float
    main: float
    error: float
    normalized: float
    fitted_cA: float


def profile_report(q_set, x_grid, tables: ArithmeticTables) -> list[ProfileRow]:
    """Raw ψ(x; q, a) rows with the pointwise-solved shape constant.

    fitted_cA solves |error|/x = exp(−c·(log x)^{3/5}(log log x)^{−1/5})
    per row (inf when the error vanishes); reported, never asserted — the
    true constant is ineffective.  normalized = φ(q)|error|/x.
    """
    rows = []
    for q in sorted({int(q) for q in q_set}):
        if q < 3:
            raise ValueError("profile needs moduli q >= 3")
        group = character_group(q)
        for a in range(1, q):
            if math.gcd(a, q) != 1:
                continue
            for x in x_grid:
                xf = float(x)
                psi = psi_ap(xf, q, a, tables)
                main = xf / group.phi
                err = psi - main
                if err == 0.0:
                    c = math.inf
                else:
                    c = -math.log(abs(err) / xf) / theorem_shape_scale(xf)
                rows.append(
                    ProfileRow(
                        q=q,
                        a=a,
                        x=xf,
                        psi=psi,
                        main=main,
                        error=err,
                        normalized=group.phi * abs(err) / xf,
                        fitted_cA=c,
                    )
                )
    return rows
