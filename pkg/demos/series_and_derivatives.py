"""Sifted Dirichlet series L_y(s, f), tail certificates, and the two
routes to (F′/F)^{(k−1)}.

The truncated sum at cutoff N carries an explicit tail certificate; the
log-derivative comes out either by Faà di Bruno over partition sums or by
the quotient-rule recursion, and the two agree to near machine precision.
"""

from pntap import build_tables
from pntap.multfunc import Mobius
from pntap.series import (
    SeriesContext,
    derivative_bundle,
    evaluate_series,
    faa_log_derivative,
    ordered_partition_count,
    quotient_rule_log_derivative,
)

tables = build_tables(10**6)
ctx = SeriesContext(Mobius(), 2.0, tables)

print("L_y(s, mu) at y=2 with tail certificates:")
for sigma in (1.1, 1.5, 2.0, 3.0):
    sv = evaluate_series(ctx, complex(sigma, 0.0))
    print(
        f"  s={sigma:3.1f}: value {sv.value.real:+.10f}"
        f"  certificate {sv.certificate:.2e}  cutoff {sv.cutoff}"
    )

# 1/zeta(2) restricted to odd integers: (1 - 2^{-2})^{-1} / zeta(2).
import math

sv = evaluate_series(ctx, 2.0)
target = (1.0 / (1.0 - 0.25)) * 6.0 / math.pi**2
print(f"  check at s=2: sum {sv.value.real:.10f} vs (1-1/4)^(-1)*6/pi^2 = {target:.10f}")

# Ordered partitions count the Faà-di-Bruno terms: exactly 2^{k-1}.
print("ordered partitions of k:", [ordered_partition_count(k) for k in range(1, 9)])

print("(F'/F)^{(k-1)} two ways at s=1.5:")
for k in (1, 2, 3, 4, 5):
    bundle = derivative_bundle(ctx, 1.5, k)
    faa, ceiling = faa_log_derivative(bundle)
    quot = quotient_rule_log_derivative(bundle)
    rel = abs(faa - quot) / max(abs(quot), 1e-300)
    print(
        f"  k={k}: faa {faa.real:+.8f}  quotient {quot.real:+.8f}"
        f"  rel gap {rel:.1e}  |value|/ceiling {abs(faa) / ceiling:.3f}"
    )
