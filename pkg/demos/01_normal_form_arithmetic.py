"""Normal-form arithmetic in J, H and K.

Every element is a canonical triple (i, j, k) meaning A^i B^j C^k with
C = [A, B].  Products, inverses, powers and commutators are evaluated by
closed integer formulas and reduced back into canonical form.
"""

from macforge import (
    commutator_generic,
    commutator_special,
    element_order,
    family,
    invert,
    mul,
    parse_element,
    power,
)

J = family("J", m=2, ell=1)
A, B, C = J.A(), J.B(), J.C()

print(f"working in {J}: order {J.order}, exponent {J.exponent}, "
      f"class {J.nilpotency_class}")
print(f"generator orders: o(A) = {element_order(A)}, o(B) = {element_order(B)}, "
      f"o(C) = {element_order(C)}")

print("\nA*B  =", mul(A, B))
print("B*A  =", mul(B, A), "  (the commutator correction folds into canonical form)")
print("[A,B] =", commutator_generic(A, B), " = C")
print("[C,B] =", commutator_special("CB", 1, 1, J))
print("B^-1 =", invert(B), "  (the B-excess folds through A^(2u) B^(2u) = 1)")

AB = mul(A, B)
print("\n(AB)^2 =", power(AB, 2))
print("(AB)^-3 == ((AB)^3)^-1:", power(AB, -3) == invert(power(AB, 3)))

H = family("H", m=2, ell=1)
AB_H = mul(H.A(), H.B())
print(f"\nin {H}: (AB)^5 =", power(AB_H, 5), " and [AB,B] =",
      commutator_generic(AB_H, H.B()))

enc = power(AB, 7).encode()
print("\nround-trip text form:", enc, "->", parse_element(enc))
