"""Brun-truncated sieve weights λ± sandwiching the rough-number indicator.

(λ⁻ ∗ 1)(n) ≤ [P⁻(n) > y] ≤ (λ⁺ ∗ 1)(n) pointwise as integers, with both
sides collapsing to 1 exactly on the sifted set.  The weighted mean values
bracket the Euler product Π_{p≤y}(1 − 1/p) with an e^{−u} shaped gap,
u = log D / log y.
"""

import math

from pntap import build_tables
from pntap.sieve_weights import build_weights, mean_value, sandwich_check

tables = build_tables(10**5)

for y, u in [(5.0, 2.0), (10.0, 3.0), (30.0, 4.0)]:
    w = build_weights(y, u, tables)
    rep = sandwich_check(w, 10**5, tables)
    mv = mean_value(w, tables)
    print(f"y={y:4.0f} u={u:.0f}  D=y^u={w.D:10.0f}  support {w.support_size:4d} divisors")
    print(
        f"  sandwich on n <= 1e5: violations={rep.violations},"
        f" equality-on-sifted={rep.sifted_equality_ok} ({rep.sifted_count} rough n)"
    )
    print(
        f"  totals  {rep.lower_total} <= {rep.indicator_total} <= {rep.upper_total}"
    )
    print(
        f"  mean values  {mv.minus_sum:+.6f} <= {mv.product_main:+.6f}"
        f" <= {mv.plus_sum:+.6f}   e^-u = {math.exp(-u):.4f}"
        f"  rel gaps ({mv.rel_minus:.2e}, {mv.rel_plus:.2e})"
    )

# The count of rough numbers approaches x * Pi_{p<=y}(1 - 1/p).
w = build_weights(10.0, 3.0, tables)
euler = 1.0
for p in (2, 3, 5, 7):
    euler *= 1.0 - 1.0 / p
rep = sandwich_check(w, 10**5, tables)
print(
    f"rough count vs density: {rep.indicator_total} vs x*prod = {10**5 * euler:.1f}"
    f"  (ratio {rep.indicator_total / (10**5 * euler):.5f})"
)
