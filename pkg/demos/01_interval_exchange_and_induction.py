"""Interval exchanges, first returns, and one induction step.

Walks through the base layer: building exchanges in exact and float
arithmetic, orbits and coding words, and the agreement between the
closed-form induction step and the brute-force first-return map.
"""

from fractions import Fraction as F

import numpy as np

from ietext import make_iet, rauzy_step, renormalize, ExtendedState, U1, identity_tuple
from ietext.sampling import random_exact_iet

# A two-interval exchange is a circle rotation.  Exact lengths keep every
# orbit point an explicit rational.
rotation = make_iet([F(7, 10), F(3, 10)], (2, 1))
print("rotation offsets:", rotation.offsets)
x = F(1, 2)
orbit = [x]
for _ in range(6):
    x = rotation.apply(x)
    orbit.append(x)
print("orbit of 1/2:", " -> ".join(str(v) for v in orbit))
print("coding word:", rotation.coding_word(F(1, 2), 12))

# The induction step shortens the interval and re-exchanges; its output is
# certified against the brute-force first-return map at sample points.
rng = np.random.default_rng(1)
iet = random_exact_iet(4, rng, denominator=997)
rule, induced, matrix, words = rauzy_step(iet)
print("\n4-interval exchange", iet.lengths, "perm", iet.perm.images)
print("rule:", rule, "-> lengths", induced.lengths, "perm", induced.perm.images)
print("visit matrix rows:", matrix.rows, "| det:", matrix.det())
for probe in range(3):
    x = F(probe * 2 + 1, 7) * induced.total / 2
    point, steps, word = iet.first_return(x, induced.total)
    print(f"  first_return({x}) = ({point}, {steps}, {word}); "
          f"induced map sends it to {induced.apply(x)}")

# Fibonacci lengths reproduce the golden continued fraction: the rule
# sequence alternates A, B, A, B, ... and the normalized lengths cycle.
fib = [1, 1]
while len(fib) < 54:
    fib.append(fib[-1] + fib[-2])
golden = make_iet([F(fib[52]), F(fib[51])], (2, 1))
path = renormalize(ExtendedState(golden, identity_tuple(U1(), 2)), 20)
print("\ngolden rule sequence:", "".join(str(r.rule) for r in path.steps))
print("normalized lengths at m=20:",
      [round(float(v), 6) for v in path.steps[-1].iet_after.normalized().lengths])
