"""Dirichlet characters mod 12 and mod 40: structure, orthogonality,
conductors, and the real-character census.

(Z/12)* ≅ C2 × C2 carries four characters, all real; mod 40 mixes orders
1, 2, and 4.  Orthogonality Σ_χ χ(a)χ̄(b) = φ(q)·[a ≡ b] is integer-exact
because values live on a shared root-of-unity lattice.
"""

from pntap.characters import character_group, real_character_census

for q in (12, 40):
    group = character_group(q)
    print(f"modulus {q}: phi = {group.phi}, {len(list(group.characters()))} characters")
    for chi in group.characters():
        vals = "".join(
            {1: "+", -1: "-", 0: "."}.get(
                int(round(chi(n).real)) if chi.is_real else 9, "*"
            )
            for n in range(1, q + 1)
        )
        print(
            f"  chi:{q}:{chi.index:<2d} order={chi.order}  conductor={chi.conductor:3d}"
            f"  {'real  ' if chi.is_real else 'complex'}  values(1..q) {vals}"
        )

# Orthogonality, checked on every pair of units mod 12.
group = character_group(12)
units = [a for a in range(1, 12) if a % 2 and a % 3]
ok = all(
    group.orthogonality_sum(a, b) == (group.phi if a == b else 0)
    for a in units
    for b in units
)
print(f"orthogonality over all unit pairs mod 12: {'exact' if ok else 'BROKEN'}")

# Every character is induced by a unique primitive one at its conductor.
for chi in character_group(45).characters():
    prim = chi.primitive_part()
    tag = "primitive" if chi.is_primitive else f"induced by chi:{prim.modulus}:{prim.index}"
    print(f"chi:45:{chi.index:<2d} conductor={chi.conductor:2d}  {tag}")

# Real-character counts stay under the divisor ceiling 2*tau_2(q).
print("q, real characters, ceiling 2*tau2(q):")
for q in (8, 24, 120, 420):
    real, ceiling = real_character_census(q)
    print(f"  {q:4d}  {real:3d} <= {ceiling:3d}")
