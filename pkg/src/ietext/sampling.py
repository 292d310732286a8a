"""Seeded random constructors for IETs and extended states.

Used by the CLI, the self-test suites and the experiment batches; every
function consumes a caller-owned generator so that one global seed fully
determines each experiment.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .groups import GroupDescriptor, haar_tuple
from .iet import IET, Permutation, make_iet
from .rauzy import ExtendedState, renormalize


def random_irreducible_perm(n: int, rng: np.random.Generator) -> Permutation:
    """Rejection-sample an irreducible permutation of ``{1..n}``."""
    while True:
        p = Permutation(tuple(int(v) + 1 for v in rng.permutation(n)))
        if p.is_irreducible():
            return p


def random_exact_iet(n: int, rng: np.random.Generator,
                     denominator: int = 10**6) -> IET:
    """IET with exact lengths ``k/denominator`` and random irreducible
    permutation, resampled until the first induction step is defined."""
    while True:
        nums = rng.integers(1, denominator, size=n)
        lengths = [Fraction(int(v), denominator) for v in nums]
        perm = random_irreducible_perm(n, rng)
        iet = make_iet(lengths, perm)
        if iet.lengths[-1] != iet.lengths[perm.inverse_image(n) - 1]:
            return iet


def random_float_iet(n: int, rng: np.random.Generator) -> IET:
    """Float-mode IET with Dirichlet-uniform normalized lengths."""
    lengths = [float(v) for v in rng.dirichlet(np.ones(n))]
    return make_iet(lengths, random_irreducible_perm(n, rng))


def random_exact_state(n: int, group: GroupDescriptor, rng: np.random.Generator,
                       steps_required: int = 0) -> ExtendedState:
    """Exact-base extended state with a Haar tuple; when ``steps_required``
    is positive, resample until that many induction steps complete."""
    while True:
        state = ExtendedState(random_exact_iet(n, rng), haar_tuple(group, n, rng))
        if steps_required == 0:
            return state
        path = renormalize(state, steps_required)
        if path.m == steps_required:
            return state


def random_point(iet: IET, rng: np.random.Generator):
    """A point of the interval, exact or float matching the IET mode."""
    if iet.mode == "exact":
        return Fraction(int(rng.integers(0, 10**9)), 10**9) * iet.total
    return float(rng.random()) * iet.total
