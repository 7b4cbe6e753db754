"""Tour of the three coefficient fields: F_p, GF(p^m), F_p(t).

Run:  python demos/01_fields.py
"""

from hklab import PrimeField, RationalFunctionField, frobenius, make_extension

print("== prime fields ==")
F5 = PrimeField(5)
a = F5(2)
print(f"in F_5: 2 + 4 = {a + 4}, 2 * 3 = {a * 3}, 1/2 = {a.inverse()}")

print("\n== extension fields ==")
GF4 = make_extension(2, 2)
print(f"GF(4) built with canonical modulus s^2 + s + 1: {GF4.modulus}")
s = GF4.element((0, 1))
print(f"s * s = {s * s}   (reduction modulo the modulus)")
print(f"Frobenius s -> s^2: {frobenius(s, 1)}")
print(f"Frobenius is an automorphism: (s + 1)^2 = {frobenius(s + 1, 1)} "
      f"= s^2 + 1 = {s * s + 1}")

GF9 = make_extension(3, 2)
print(f"GF(9) canonical modulus (lexicographic scan): {GF9.modulus}  (s^2 + 1)")

print("\n== rational functions: the field of a generic fiber ==")
F2t = RationalFunctionField(PrimeField(2))
t = F2t.parse("t")
u = (t**2 + 1) / (t + 1)
print(f"(t^2 + 1)/(t + 1) reduces to lowest terms: {u}")
print(f"(t + 1)^4 via Frobenius twice: {frobenius(t + 1, 2)}")
print(f"inverse law: (t + 1) * 1/(t + 1) = {(t + 1) * (t + 1).inverse()}")
