"""The Todd-Coxeter oracle: an independent model of each group.

The coset table over the trivial subgroup is a faithful regular
representation built purely from the defining presentation; it knows
nothing about the closed formulas, which is what makes the agreement
checks meaningful.
"""

from macforge import (
    builtin_presentation,
    cross_check,
    family,
    todd_coxeter,
)

q16 = todd_coxeter(builtin_presentation("Q16"))
print(f"Q16 presentation closes at {q16.n} cosets "
      f"({q16.stats['defined']} ever defined)")

t = todd_coxeter(builtin_presentation("J[2,1]"))
print(f"J[2,1] closes at {t.n} cosets ({t.stats['defined']} defined on the way)")
print("  A^32 resolves to coset", t.resolve("A^32"), "(the identity)")
print("  a b A B lands on C's coset:", t.resolve("a b A B") == t.resolve("C"))
print("  table order of A:", t.element_order_by_table("A"))

print("\ncross-checking the closed formulas against the table:")
rep = cross_check(family("J", 1, 1), mode="exhaustive")
print(rep.to_text())
