"""Dyadic oscillatory sums Σ_{N<n≤2N} (n+u)^{it} against the stated ceiling
N·exp{−(log N)³ / (66852 (log t)²)}.

Most of the grid sits far below the ceiling.  The exception is tiny N with
resonant phase: at N=2, t=100, u=0.5 the two phases differ by almost
exactly 8π (gap −0.0013), the terms align, and |S| = 1.99999958 exceeds
the ceiling 1.99999953 by 5e−8.  A constant 1.00000003 would absorb it;
the shipped check refuses to add one.
"""

import math

from pntap.expsums import dyadic_exp_sum, nit_scan

print("sample of the (N, t, u) grid:")
for N, t, u in [(2, 10.0, 0.0), (64, 100.0, 0.5), (4096, 1e4, 1.0), (2**19, 1e6, 0.0)]:
    b = dyadic_exp_sum(N, t, u)
    print(
        f"  N={N:<7d} t={t:<9.0f} u={u}: |S|={b.magnitude:12.6f}"
        f"  ceiling={b.ceiling:12.6f}  ratio={b.ratio:.3e}"
    )

# Full acceptance grid: t in {10,...,1e6}, dyadic N <= min(t^2, 1e6), u in {0,.5,1}.
ts = [10.0**k for k in range(1, 7)]
Ns = [2**k for k in range(1, 20)]
rows = nit_scan(ts, Ns, shifts=(0.0, 0.5, 1.0))
above = [r for r in rows if r.magnitude > r.ceiling]
print(f"{len(rows)} samples, {len(above)} above the ceiling")

for r in above:
    # two-term sums: phases t*log(N+1+u) and t*log(2N+u)
    gap = r.t * (math.log(2 * r.N + r.shift) - math.log(r.N + 1 + r.shift)) - 8 * math.pi
    print(
        f"  N={r.N} t={r.t} u={r.shift}: phase gap to 8pi = {gap:+.7f},"
        f" |S| = {r.magnitude:.12f} vs ceiling {r.ceiling:.12f}"
        f" (excess {r.magnitude - r.ceiling:.2e}, ratio {r.ratio:.12f})"
    )

runner_up = max((r for r in rows if r not in above), key=lambda r: r.ratio)
print(
    f"runner-up: N={runner_up.N} t={runner_up.t} u={runner_up.shift}"
    f" ratio {runner_up.ratio:.12f} (below 1)"
)

# The trivial bound |S| <= N holds everywhere, resonance or not.
print("trivial bound |S| <= N holds:", all(r.magnitude <= r.N for r in rows))
