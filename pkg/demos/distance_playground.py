"""The pretentious distance D(f, g; y, x) between multiplicative functions.

D(f,g;y,x)² = Σ_{y<p≤x} (1 − Re f(p)ḡ(p))/p is a pseudmetric on the unit
disc: D(1,f) + D(1,g) ≥ D(1,fg).  μ sits far from 1 (it pretends to be
nothing), while a character is at distance 0 from itself and its principal
companion stays close to 1.
"""

from pntap import build_tables
from pntap.multfunc import (
    ArchimedeanTwist,
    CharacterFunction,
    ConstantOne,
    Mobius,
    RandomUnitDisc,
    distance,
    triangle_check,
)
from pntap.characters import character_group

tables = build_tables(10**5)
y, x = 2.0, 10.0**5

one = ConstantOne()
mu = Mobius()
chi4 = CharacterFunction(character_group(4).character_by_index(1))
twist = ArchimedeanTwist(1.0)

pairs = [
    (one, mu),
    (one, chi4),
    (one, twist),
    (mu, chi4),
    (chi4, twist),
]
print(f"distances at y={y}, x={x:.0f}:")
for f, g in pairs:
    d = distance(f, g, y, x, tables)
    print(f"  D({f.label:>7s}, {g.label:>7s}) = {d:.6f}")

# Self-distance is identically 0; the twist drifts from 1 logarithmically.
print(f"  D(chi:4:1, chi:4:1) = {distance(chi4, chi4, y, x, tables):.6f}")
for t in (0.5, 1.0, 5.0):
    tw = ArchimedeanTwist(t)
    print(f"  D(one, nit:{t}) = {distance(one, tw, y, x, tables):.6f}")

# Triangle slack lhs - rhs >= 0 for structured and random pairs.
print("triangle slack D(1,f)+D(1,g)-D(1,fg):")
for f, g in [(mu, chi4), (mu, twist), (chi4, twist)]:
    lhs, rhs, slack = triangle_check(f, g, y, x, tables)
    print(f"  f={f.label:>7s} g={g.label:>7s}: {lhs:.4f} - {rhs:.4f} = {slack:+.4f}")

for seed in (1, 2, 3):
    f = RandomUnitDisc(2 * seed, tables)
    g = RandomUnitDisc(2 * seed + 1, tables)
    _, _, slack = triangle_check(f, g, y, x, tables)
    print(f"  random pair seed {seed}: slack {slack:+.4f}")
