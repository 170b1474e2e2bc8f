"""Automorphism groups by closure, and their centrality filtrations.

closure() precomputes each generator's permutation of the element space
and then runs a deterministic breadth-first multiplication closure over
packed (image of A, image of B) keys.
"""

from macforge import (
    closure,
    family,
    filtration,
    inner_closure,
    standard_generators,
    verify_structure,
)

for tag, m, expect in [("K", 2, 6144), ("H", 2, 8192), ("J", 2, 32768), ("J", 1, 32)]:
    fam = family(tag, m, 1)
    gens = standard_generators(fam)
    aut = closure(gens)
    print(f"Aut({fam}) from {len(gens)} generators: order {aut.order} "
          f"(expected {expect})")

J = family("J", 2, 1)
aut = closure(standard_generators(J))
filt = filtration(aut, inner_closure(J))
print("\ncentrality filtration of Aut(J) at m = 2:")
for row in filt.rows:
    print(f"  |Aut_{row.level}| = {row.count:6d}   expected {row.expected}")
for lvl, cnt, exp, _ in filt.inn_products:
    tag = f"(expected {exp})" if exp else ""
    print(f"  |Inn Aut_{lvl}| = {cnt:6d} {tag}")

print("\nstructure verification (m = 2, quick):")
print(verify_structure(family("K", 2, 1), "quick").to_text())
