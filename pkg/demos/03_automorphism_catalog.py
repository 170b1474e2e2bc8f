"""The named automorphism catalog and certification.

Maps are stored as generator images; certification checks the defining
relations and injectivity on the center.  Composition is left to right:
(x)(fg) = ((x)f)g.
"""

from macforge import (
    GenMap,
    apply,
    aut_inverse,
    catalog,
    centrality_level,
    check_endomorphism,
    compose,
    family,
    induce_on_quotient,
    inner,
    mul,
)

J = family("J", m=2, ell=1)
for name in ("theta", "delta1", "delta2", "delta3"):
    f = catalog(J, name)
    print(f"{name:8s} A -> {f.imgA},  B -> {f.imgB},  level {centrality_level(f)}")

print("\ninner(C) has centrality level", centrality_level(inner(J.C())),
      "(conjugation by g is i-central exactly when g lies in Z_(i+1))")

theta = catalog(J, "theta")
print("theta o theta == identity:", compose(theta, theta).key == (J.A().triple, J.B().triple))
print("theta induces the A<->B swap on H:",
      induce_on_quotient(theta) == catalog(family("H", 2, 1), "nu"))

K = family("K", m=3, ell=1)
f3 = catalog(K, "f_n", 3)
print("\nf_3 on K (m=3): a ->", apply(f3, K.A()), ", inverse is f_11:",
      aut_inverse(f3) == catalog(K, "f_n", 11))

# a map that fails certification: A -> AB, B -> B on H at m = 2
H = family("H", 2, 1)
bad = GenMap(H, mul(H.A(), H.B()), H.B())
ok, witness = check_endomorphism(bad)
print("\nA -> AB, B -> B on H extends to an endomorphism:", ok)
print("   broken relation:", witness["relation"])
print("   lhs =", witness["lhs"], " rhs =", witness["rhs"])
