#!/usr/bin/env python3
"""Pseudo-Smith normal form: the elementary divisors of a module quotient.

A bi-pseudo matrix carries row ideals (the outer module) and column ideals
(the inner one); its divisor chain d_1 | ... | d_n describes the quotient as
a product of cyclic pieces O_K/d_i, generalizing the integer Smith form.
"""

import random

from okmod import BiPseudoMatrix, FractionalIdeal, build_field, pseudo_snf
from okmod.zlinalg import det_bareiss, z_snf

rng = random.Random(31)

print("== over Q this is the classical Smith form ==")
Q = build_field([0, 1])
u = FractionalIdeal.unit(Q)
mat = [[2, 0], [0, 6]]
bp = BiPseudoMatrix(Q, [[Q.from_int(x) for x in r] for r in mat], [u] * 2, [u] * 2)
chain = pseudo_snf(bp, verify=True)
print("divisors of diag(2,6):", [a.num[0][0] for a in chain],
      "  (largest first: d_1 contained in d_2)")

mat = [[rng.randint(-9, 9) for _ in range(4)] for _ in range(4)]
while det_bareiss(mat) == 0:
    mat = [[rng.randint(-9, 9) for _ in range(4)] for _ in range(4)]
bp = BiPseudoMatrix(Q, [[Q.from_int(x) for x in r] for r in mat], [u] * 4, [u] * 4)
chain = pseudo_snf(bp, verify=True)
snf = z_snf(mat)
print("random 4x4:", [a.num[0][0] for a in chain],
      " z-oracle:", sorted((snf[i][i] for i in range(4)), reverse=True))

print()
print("== a ramified prime in Q(i): the quotient O_K/(1+i) ==")
K = build_field([1, 0, 1])
uk = FractionalIdeal.unit(K)
one, i = K.one(), K.element([0, 1])
bp = BiPseudoMatrix(K, [[one + i, K.zero()], [K.zero(), one]], [uk, uk], [uk, uk])
chain = pseudo_snf(bp, verify=True)
print("divisors:", list(chain))
print("quotient order N(prod d_i):", (chain[0] * chain[1]).norm())

print()
print("== nontrivial coefficient ideals ==")
p = FractionalIdeal.from_generators(K, [K.element([2, 1])])
bp = BiPseudoMatrix(K, [[K.element([2, 1]), K.zero()], [K.zero(), K.from_int(5)]],
                    [uk, uk], [p, FractionalIdeal.from_rational(K, 5)])
chain = pseudo_snf(bp, verify=True)
print("divisors:", list(chain))
prod = chain[0] * chain[1]
print("product norm (quotient order):", prod.norm())
