"""Skew products over IETs, the induced random walk, and mixing diagnostics.

A simple function ``phi`` is constant on each exchanged interval,
``phi(x) = g_k`` for ``x in I_k``; the associated extension acts by
``(x, y) -> (T x, phi(x) y)`` with *left* multiplication in the fiber.
Iterating multiplies ``y`` on the left by the walk element
``a_x^k = g_{w_k} ... g_{w_1}``, where ``w`` is the coding word of ``x``.

Equidistribution of the walk is monitored through averaged characters
(Weyl criterion): for every tracked representation the record accumulates
``sum_{j<=k} chi(a_x^j)``; the normalized sums tend to zero exactly when
the empirical measures converge to Haar measure.

Long float orbits advance the base coordinate with compensated (Kahan)
summation so that ``10^7`` iterates keep the drift far below the
float-mode tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import LengthMismatch
from .groups import (
    GTuple,
    GroupElement,
    Representation,
    character,
    haar_sample,
    rep_matrix,
)
from .iet import FLOAT, IET


@dataclass(frozen=True)
class SimpleFunction:
    """A function constant on each exchanged interval of ``iet``."""

    iet: IET
    values: GTuple

    def __post_init__(self):
        if self.values.n != self.iet.n:
            raise LengthMismatch(
                f"{self.values.n} values for an IET of {self.iet.n} intervals")

    def __call__(self, x) -> GroupElement:
        return self.values.elements[self.iet.interval_index(x) - 1]


@dataclass(frozen=True)
class SkewPoint:
    """A point ``(x, y)`` of the product of the interval with the group."""

    x: object
    y: GroupElement


def skew_apply(iet: IET, phi: SimpleFunction, p: SkewPoint) -> SkewPoint:
    """One step of the extension: ``(x, y) -> (T x, phi(x) y)``."""
    return SkewPoint(iet.apply(p.x), phi(p.x) * p.y)


class _BaseOrbit:
    """Iterator for the base orbit with compensated float summation.

    Exact mode steps with plain Fraction arithmetic.  Float mode keeps a
    Kahan compensation term and clamps roundoff escapes back into
    ``[0, |lambda|)``.
    """

    def __init__(self, iet: IET, x):
        self.iet = iet
        self.x = x
        self.comp = 0.0
        self.float_mode = iet.mode == FLOAT
        iet._check_domain(x)

    def index(self) -> int:
        return self.iet.interval_index(self.x)

    def advance(self, k: int) -> None:
        if not self.float_mode:
            self.x = self.iet.apply(self.x)
            return
        iet = self.iet
        y = iet.offsets[k - 1] - self.comp
        t = self.x + y
        self.comp = (t - self.x) - y
        if t >= iet.total:
            t = math.nextafter(iet.total, 0.0)
            self.comp = 0.0
        elif t < 0.0:
            t = 0.0
            self.comp = 0.0
        self.x = t


@dataclass(frozen=True)
class WalkRecord:
    """Character accumulators of a length-``k`` walk.

    ``sums[rep]`` holds ``sum_{j<=k} chi_rep(a_x^j)``; the normalized Weyl
    sum ``sums[rep]/k`` is bounded by the representation dimension.
    ``atoms`` optionally keeps every ``subsample``-th walk element.
    """

    k: int
    sums: dict
    atoms: tuple[GroupElement, ...] = ()

    def weyl_sum(self, rep: Representation) -> complex:
        return self.sums[rep] / self.k


def iter_walk(iet: IET, g: GTuple, x, K: int,
              reps: Sequence[Representation]) -> Iterator[tuple[int, GroupElement, dict]]:
    """Yield ``(k, a_x^k, running character sums)`` for ``k = 1..K``.

    The sums dict is updated in place; consumers must copy what they keep.
    """
    if g.n != iet.n:
        raise LengthMismatch(f"tuple of {g.n} elements over an IET of {iet.n} intervals")
    orbit = _BaseOrbit(iet, x)
    a = g.group.identity()
    sums = {rep: 0j for rep in reps}
    elements = g.elements
    for k in range(1, K + 1):
        j = orbit.index()
        a = elements[j - 1] * a
        for rep in reps:
            sums[rep] += character(rep, a)
        orbit.advance(j)
        yield k, a, sums


def walk(iet: IET, g: GTuple, x, K: int, reps: Sequence[Representation],
         subsample: int = 0) -> WalkRecord:
    """Run the walk to time ``K`` accumulating Weyl sums for ``reps``.

    Memory is O(#reps + K/subsample); the walk elements themselves are
    discarded unless subsampling is requested.
    """
    atoms = []
    sums = {rep: 0j for rep in reps}
    for k, a, sums in iter_walk(iet, g, x, K, reps):
        if subsample and k % subsample == 0:
            atoms.append(a)
    return WalkRecord(k=K, sums=dict(sums), atoms=tuple(atoms))


@dataclass(frozen=True)
class Observable:
    """Test function ``e^{2 pi i l x / |lambda|}`` times a fiber factor.

    The fiber factor is the character of ``rep`` or, with
    ``entry=(p, q)``, a matrix coefficient of its realization (0-based).
    """

    frequency: int
    rep: Representation
    entry: tuple[int, int] | None = None

    def __call__(self, iet: IET, p: SkewPoint) -> complex:
        turns = self.frequency * (p.x / iet.total)
        base = 1 + 0j if self.frequency == 0 else complex(
            math.cos(2 * math.pi * float(turns % 1)),
            math.sin(2 * math.pi * float(turns % 1)))
        if self.entry is None:
            fiber = character(self.rep, p.y)
        else:
            fiber = complex(rep_matrix(self.rep, p.y)[self.entry])
        return base * fiber


def birkhoff_average(iet: IET, phi: SimpleFunction, obs: Observable,
                     p0: SkewPoint, N: int) -> complex:
    """Time average ``(1/N) sum_{j<N} obs(T_phi^j p0)``."""
    acc = 0j
    p = p0
    for _ in range(N):
        acc += obs(iet, p)
        p = skew_apply(iet, phi, p)
    return acc / N


def correlation_cesaro(iet: IET, phi: SimpleFunction, obs: Observable,
                       N: int, M: int, rng: np.random.Generator) -> np.ndarray:
    """Cesaro averages of absolute autocorrelations of ``obs``.

    Monte Carlo over ``M`` initial points (base uniform, fiber Haar):

    ``corr_j = (1/M) sum_p obs(T_phi^j p) conj(obs(p)) - |mean obs|^2``

    with the mean pooled over all evaluations, and
    ``C_L = (1/L) sum_{j<=L} |corr_j|`` returned for ``L = 1..N``.  The
    per-lag Monte Carlo error is about ``3/sqrt(M)``.
    """
    acc = np.zeros(N + 1, dtype=complex)
    mean_acc = 0j
    total = float(iet.total)
    for _ in range(M):
        x0 = float(rng.random()) * total
        p = SkewPoint(x0, haar_sample(phi.values.group, rng))
        v0 = obs(iet, p)
        v0c = v0.conjugate()
        mean_acc += v0
        acc[0] += v0 * v0c
        for j in range(1, N + 1):
            p = skew_apply(iet, phi, p)
            v = obs(iet, p)
            mean_acc += v
            acc[j] += v * v0c
    mean = mean_acc / (M * (N + 1))
    corr = np.abs(acc[1:] / M - abs(mean) ** 2)
    return np.cumsum(corr) / np.arange(1, N + 1)
