"""Driving the verification layer from Python: suites, checks, artifacts.

The same machinery behind `pntap verify` is importable: build a config,
run a suite, inspect CheckResults, and render the deterministic report.
Hard checks gate (exact identities, stated ceilings); monitors annotate
(fitted constants, trends).  The expsums suite FAILs by design — its
ceiling has a genuine counterexample at N=2, t=100, u=0.5.
"""

from pntap import verify

config = verify.RunConfig(limit=10**5, qmax=120)
tables = verify.get_tables(config)

print("check kinds declared in the manifest:")
hard = sorted(k for k, v in verify.MANIFEST.items() if v == "hard")
monitors = sorted(k for k, v in verify.MANIFEST.items() if v == "monitor")
print(f"  {len(hard)} hard, {len(monitors)} monitors")
print("  monitors:", ", ".join(monitors))

for suite in ("distance", "sieve", "expsums"):
    report = verify.run_suite(suite, config, tables)
    print(f"suite {suite}:")
    for c in report.checks:
        mark = "pass" if c.passed else "FAIL"
        print(f"  [{c.kind}] {c.name}: {mark}")
        if not c.passed:
            print(f"      {c.detail}")

result = verify.VerifyRun(
    config=config,
    reports=[verify.run_suite(s, config, tables) for s in ("sieve", "expsums")],
)
print(f"gating verdict over (sieve, expsums): {'PASS' if result.passed else 'FAIL'}")

# render_text is byte-stable for a fixed config -- the determinism contract.
a = verify.render_text(result)
b = verify.render_text(result)
print(f"render_text stable: {a == b}; report is {len(a.splitlines())} lines")
