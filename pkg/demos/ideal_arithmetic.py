#!/usr/bin/env python3
"""Fractional ideals: Hermite representation, arithmetic, inversion, CRT.

Ideals are stored as an integral numerator in lower-triangular Hermite form
over the integral basis, divided by a minimal positive integer.  Sums and
products run through the modular Hermite kernel with the minima products as
moduli; inversion goes through the trace dual.
"""

from fractions import Fraction

from okmod import FractionalIdeal, build_field, idempotents

K = build_field([1, 0, 1])
one, i = K.one(), K.element([0, 1])

print("== construction ==")
two = FractionalIdeal.from_generators(K, [K.from_int(2)])
p = FractionalIdeal.from_generators(K, [one + i])
print("(2)    :", two)
print("(1+i)  :", p, " min =", p.minimum(), " norm =", p.norm())
print("(1/2)  :", FractionalIdeal.from_rational(K, Fraction(1, 2)))

print()
print("== arithmetic ==")
q = FractionalIdeal.from_generators(K, [one - i])
print("(1+i) == (1-i) as ideals:", p == q)
print("(1+i)*(1-i) == (2)      :", p * q == two)
print("(2) + (3) == O_K        :", (two + FractionalIdeal.from_rational(K, 3)).is_unit())

print()
print("== inversion via the trace dual ==")
d1, d2, _, _ = K.two_element_rep
print("codifferent numerator:", K.codifferent_numerator)
print("its two-element representation:", d1, ",", d2)
pinv = p.inverse()
print("(1+i)^-1 =", pinv)
print("(1+i) * (1+i)^-1 == O_K:", (p * pinv).is_unit())

print()
print("== membership and containment ==")
print("2 in (1+i)      :", p.contains(K.from_int(2)))
print("1+i in (2)      :", two.contains(one + i))
print("(2) subset (1+i):", two.is_subset(p))

print()
print("== splitting 1 across coprime ideals ==")
a = FractionalIdeal.from_generators(K, [K.element([2, 1])])
b = FractionalIdeal.from_generators(K, [K.element([2, -1])])
alpha, beta = idempotents(a, b)
print("alpha =", alpha, " beta =", beta)
print("alpha in (2+i):", a.contains(alpha), " beta in (2-i):", b.contains(beta),
      " alpha+beta == 1:", alpha + beta == K.one())
