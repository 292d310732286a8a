"""Interval exchange transformations with exact-rational and float arithmetic.

An interval exchange transformation (IET) of data ``(lambda, pi)`` cuts the
interval ``[0, |lambda|)`` into ``n`` subintervals ``I_k = [beta_{k-1},
beta_k)`` of lengths ``lambda_k`` and rearranges them as solid segments:
``I_k`` is translated so that it occupies position ``pi(k)`` in the image.
Every interval is half-open, so the map is a pointwise bijection of
``[0, |lambda|)``.

Two arithmetic modes are supported and never mixed inside one IET:

* ``exact`` -- all lengths are :class:`fractions.Fraction`; orbits, cut
  points and first-return computations are bit-exact.  This mode backs the
  brute-force oracle used to validate the induction formulas.
* ``float`` -- lengths are binary floats; near-tie comparisons carry the
  relative tolerance :data:`TOLERANCE`.

Interval indices, permutation values and coding letters are 1-based
throughout the public API, matching the usual dynamical notation.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import nextafter
from typing import Sequence, Union

from .errors import (
    IterateCapExceeded,
    LengthMismatch,
    NonPositiveLength,
    OutOfDomain,
    ReduciblePermutation,
)

Scalar = Union[Fraction, float]

EXACT = "exact"
FLOAT = "float"

#: Relative tolerance used by float-mode tie detection.
TOLERANCE = 1e-12

#: Default iterate budget for the brute-force first-return search.
FIRST_RETURN_CAP = 10**7


@dataclass(frozen=True)
class Permutation:
    """A permutation of ``{1..n}`` in one-line notation.

    ``images[i-1] == pi(i)``.

    >>> p = Permutation((3, 2, 1))
    >>> p(1), p.inverse_image(3), p.is_irreducible()
    (3, 1, True)
    """

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {self.images}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    @cached_property
    def _inverse_images(self) -> tuple[int, ...]:
        inv = [0] * self.n
        for i, v in enumerate(self.images, start=1):
            inv[v - 1] = i
        return tuple(inv)

    def inverse_image(self, v: int) -> int:
        """Return ``pi^{-1}(v)``."""
        return self._inverse_images[v - 1]

    def inverse(self) -> "Permutation":
        return Permutation(self._inverse_images)

    def reducible_prefix(self) -> int | None:
        """Smallest ``k < n`` with ``pi{1..k} == {1..k}``, or None."""
        top = 0
        for k in range(1, self.n):
            top = max(top, self.images[k - 1])
            if top == k:
                return k
        return None

    def is_irreducible(self) -> bool:
        return self.reducible_prefix() is None


@dataclass(frozen=True)
class IET:
    """An interval exchange transformation.  Build via :func:`make_iet`.

    Immutable; derived data (cut points, translation offsets) is computed
    once and cached.
    """

    lengths: tuple[Scalar, ...]
    perm: Permutation

    @property
    def n(self) -> int:
        return len(self.lengths)

    @cached_property
    def mode(self) -> str:
        return EXACT if isinstance(self.lengths[0], Fraction) else FLOAT

    @cached_property
    def cuts(self) -> tuple[Scalar, ...]:
        """Cut points ``(beta_0, ..., beta_n)`` with ``beta_0 = 0``."""
        zero = Fraction(0) if self.mode == EXACT else 0.0
        acc = [zero]
        for length in self.lengths:
            acc.append(acc[-1] + length)
        return tuple(acc)

    @property
    def total(self) -> Scalar:
        return self.cuts[-1]

    @cached_property
    def offsets(self) -> tuple[Scalar, ...]:
        """Translation applied on each interval:

        ``omega_k = sum_{pi(j) < pi(k)} lambda_j - beta_{k-1}``.
        """
        out = []
        for k in range(1, self.n + 1):
            before = sum(
                (self.lengths[j - 1] for j in range(1, self.n + 1)
                 if self.perm(j) < self.perm(k)),
                Fraction(0) if self.mode == EXACT else 0.0,
            )
            out.append(before - self.cuts[k - 1])
        return tuple(out)

    def _check_domain(self, x: Scalar) -> None:
        if x < 0 or x >= self.total:
            raise OutOfDomain(f"point {x} outside [0, {self.total})")

    def interval_index(self, x: Scalar) -> int:
        """1-based index ``k`` with ``beta_{k-1} <= x < beta_k``."""
        self._check_domain(x)
        return bisect_right(self.cuts, x)

    def apply(self, x: Scalar) -> Scalar:
        """Image of ``x``: translation by the offset of its interval."""
        k = self.interval_index(x)
        y = x + self.offsets[k - 1]
        if self.mode == FLOAT and y >= self.total:
            # roundoff guard: keep images inside the half-open interval
            y = nextafter(self.total, 0.0)
        return y

    def coding_word(self, x: Scalar, k: int) -> tuple[int, ...]:
        """First ``k`` letters of the orbit coding of ``x``.

        ``word[j] = interval_index(T^j x)`` for ``0 <= j < k``.
        """
        word = []
        for _ in range(k):
            word.append(self.interval_index(x))
            x = self.apply(x)
        return tuple(word)

    def first_return(self, x: Scalar, L: Scalar,
                     cap: int = FIRST_RETURN_CAP) -> tuple[Scalar, int, tuple[int, ...]]:
        """Brute-force first return of ``x`` to ``[0, L)``.

        Returns ``(T^r x, r, word)`` where ``r >= 1`` is minimal with
        ``T^r x in [0, L)`` and ``word`` lists the interval indices visited
        by ``x, Tx, ..., T^{r-1} x``.  Raises :class:`IterateCapExceeded`
        after ``cap`` iterates (degenerate input, e.g. a periodic orbit
        avoiding ``[0, L)``).
        """
        self._check_domain(x)
        if x >= L or L > self.total:
            raise OutOfDomain(f"need 0 <= x < L <= |lambda|, got x={x}, L={L}")
        word = [self.interval_index(x)]
        y = self.apply(x)
        r = 1
        while y >= L:
            if r >= cap:
                raise IterateCapExceeded(f"no return to [0, {L}) within {cap} iterates")
            word.append(self.interval_index(y))
            y = self.apply(y)
            r += 1
        return y, r, tuple(word)

    def inverse(self) -> "IET":
        """The inverse IET: image-interval lengths with ``pi^{-1}``."""
        inv_perm = self.perm.inverse()
        lengths = tuple(self.lengths[inv_perm(p) - 1] for p in range(1, self.n + 1))
        return IET(lengths, inv_perm)

    def normalized(self) -> "IET":
        """Rescale so that ``|lambda| = 1`` (exact division in exact mode)."""
        t = self.total
        return IET(tuple(length / t for length in self.lengths), self.perm)


def make_iet(lengths: Sequence[Scalar], perm: Permutation | Sequence[int]) -> IET:
    """Validate and build an IET.

    ``lengths`` entries must be all exact (int / Fraction) or all float;
    ints are promoted to Fractions.  Raises :class:`NonPositiveLength`,
    :class:`ReduciblePermutation` or :class:`LengthMismatch`.

    >>> T = make_iet([Fraction(6, 10), Fraction(4, 10)], (2, 1))
    >>> T.offsets
    (Fraction(2, 5), Fraction(-3, 5))
    """
    if not isinstance(perm, Permutation):
        perm = Permutation(tuple(perm))
    if len(lengths) != perm.n:
        raise LengthMismatch(f"{len(lengths)} lengths for a permutation of {perm.n} symbols")
    if perm.n < 2:
        raise LengthMismatch("an interval exchange needs n >= 2 intervals")
    has_float = any(isinstance(v, float) for v in lengths)
    has_exact = any(isinstance(v, Fraction) for v in lengths)
    if has_float and has_exact:
        raise TypeError("lengths mix exact rationals with floats; pick one mode")
    if has_float:
        norm = tuple(float(v) for v in lengths)
    else:
        norm = tuple(Fraction(v) for v in lengths)
    if any(v <= 0 for v in norm):
        raise NonPositiveLength(f"all lengths must be positive, got {norm}")
    k = perm.reducible_prefix()
    if k is not None:
        raise ReduciblePermutation(f"permutation maps {{1..{k}}} to itself")
    return IET(norm, perm)
