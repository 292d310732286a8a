"""The coding-driven walk on a compact group converges to Haar measure.

An exchange codes each orbit into a word over the intervals; a tuple of
group elements turns the word into a walk a_k = g_{w_k} ... g_{w_1}.  For
typical data the empirical measures of the walk approach Haar measure,
which the Weyl criterion detects: averaged nontrivial irreducible
characters tend to zero.  A degenerate tuple (all components equal to the
identity) shows the opposite extreme.
"""

from fractions import Fraction as F

import numpy as np

from ietext import Representation, SU2, U1, haar_tuple, identity_tuple, make_iet, walk
from ietext.sampling import random_exact_iet

phi = (1 + 5**0.5) / 2
golden = make_iet([phi - 1, 2 - phi], (2, 1))
u1 = U1()
reps = [Representation(u1, m) for m in (1, 2, 3)]

rng = np.random.default_rng(0)
pair = haar_tuple(u1, 2, rng)
print("golden rotation, Haar-random U(1) pair, Weyl sums |S_k|:")
for K in (10**3, 10**4, 10**5):
    rec = walk(golden, pair, 0.2, K, reps)
    sums = "  ".join(f"m={m}: {abs(rec.weyl_sum(r)):.5f}"
                     for m, r in zip((1, 2, 3), reps))
    print(f"  K={K:>6}: {sums}")

print("\ndegenerate identity tuple (no equidistribution):")
rec = walk(golden, identity_tuple(u1, 2), 0.2, 10**4, reps[:1])
print(f"  |S_K| = {abs(rec.weyl_sum(reps[0])):.5f}  (stays at dim = 1)")

su2 = SU2()
spin_reps = [Representation(su2, F(1, 2)), Representation(su2, 1)]
rng = np.random.default_rng(4004)
iet = random_exact_iet(3, rng)
tup = haar_tuple(su2, 3, rng)
x = F(int(rng.integers(0, 10**9)), 10**9) * iet.total
print("\nrandom exact 3-interval exchange, Haar-random SU(2) tuple:")
for K in (10**3, 10**4, 10**5):
    rec = walk(iet, tup, x, K, spin_reps)
    sums = "  ".join(f"j={j}: {abs(rec.weyl_sum(r)):.5f}"
                     for j, r in zip(("1/2", "1"), spin_reps))
    print(f"  K={K:>6}: {sums}")
