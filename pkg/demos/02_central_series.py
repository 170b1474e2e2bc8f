"""Upper central series: explicit membership vs the commutator recursion.

central_level reads the explicit generator description of each Z_i;
central_level_generic only uses x in Z_i iff [x,A], [x,B] in Z_(i-1).
Both must agree everywhere.
"""

from collections import Counter

from macforge import central_level, central_level_generic, family, power

for tag in ("J", "H", "K"):
    fam = family(tag, m=2, ell=1)
    hist = Counter(central_level(x) for x in fam.elements())
    cumulative = []
    total = 0
    for lvl in range(fam.nilpotency_class + 1):
        total += hist.get(lvl, 0)
        cumulative.append(total)
    print(f"{fam}: |Z_0..Z_{fam.nilpotency_class}| cumulative = {cumulative}")

J = family("J", m=2, ell=1)
agree = all(central_level(x) == central_level_generic(x) for x in J.elements())
print("\nexplicit description == commutator recursion on all of J:", agree)

print("\nwitnesses in J (m=2):")
for label, x in [("A^8", power(J.A(), 8)), ("C^2", power(J.C(), 2)),
                 ("A^4", power(J.A(), 4)), ("C", J.C()), ("A", J.A())]:
    print(f"  {label:4s} lies in Z_{central_level(x)}")
