"""Tour of the sieve tables: μ, Λ, φ, τ_r, and the classic partial sums.

Builds tables to 10^6 once, prints a small window of every array, then
checks Mertens-style cancellation Σ μ(n) and the drift of ψ(x) − x.
"""

import numpy as np

from pntap import build_tables, chebyshev_psi, tau_r

tables = build_tables(10**6)

print("n, mu, phi, Lambda-carrier p, tau_2, tau_3 for n = 90..100")
for n in range(90, 101):
    p = int(tables.mangoldt_p[n])
    print(
        f"  {n:4d}  mu={int(tables.mobius[n]):+d}  phi={int(tables.totient[n]):3d}"
        f"  pp={'-' if p == 0 else p}"
        f"  tau2={tau_r(n, 2, tables):2d}  tau3={tau_r(n, 3, tables):3d}"
    )

# M(x) = Σ_{n≤x} μ(n): square-root-ish cancellation.
mob = tables.mobius.astype(np.int64)
M = np.cumsum(mob)
for x in (10**3, 10**4, 10**5, 10**6):
    print(f"M({x:>7d}) = {M[x]:6d}   |M|/sqrt(x) = {abs(M[x]) / x**0.5:.4f}")

# ψ(x) = Σ_{n≤x} Λ(n) hugs x; the relative error shrinks like 1/log-powers.
for x in (10**4, 10**5, 10**6):
    psi = chebyshev_psi(float(x), tables)
    print(f"psi({x:>7d}) = {psi:14.3f}   (psi-x)/x = {(psi - x) / x:+.5f}")

# Largest prime factor table doubles as a smoothness census.
gpf = tables.gpf[2 : 10**6 + 1]
for y in (10, 100, 1000):
    frac = float(np.mean(gpf <= y))
    print(f"fraction of n <= 1e6 with P+(n) <= {y:4d}: {frac:.5f}")
