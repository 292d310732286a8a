"""Rauzy-Veech induction and its extension to group-valued data.

One induction step compares the last length ``lambda_n`` with the length
``lambda_k`` of the interval sent to the last image position
(``k = pi^{-1}(n)``):

* rule ``A`` (``lambda_n < lambda_k``): induce on ``[0, |lambda| - lambda_n)``;
* rule ``B`` (``lambda_n > lambda_k``): induce on ``[0, |lambda| - lambda_k)``.

The first-return map on the shortened interval is again an IET of ``n``
intervals.  The new data is given by the closed formulas below; all of them
are cross-validated in the test suite against the brute-force first-return
oracle of :mod:`ietext.iet`, which is the authoritative definition.

Rule ``A`` (with ``k = pi^{-1}(n)``) splits ``I_k``::

    lambda' = (l_1, ..., l_{k-1}, l_k - l_n, l_n, l_{k+1}, ..., l_{n-1})
    Api(j)  = pi(j)       j <  k
    Api(k)  = n
    Api(k+1)= pi(n)
    Api(j)  = pi(j-1)     j >= k+2

Rule ``B`` truncates ``I_n``::

    lambda' = (l_1, ..., l_{n-1}, l_n - l_k)
    Bpi(n)  = pi(n)
    Bpi(k)  = pi(n) + 1
    Bpi(j)  = pi(j)       if pi(j) < pi(n)
    Bpi(j)  = pi(j) + 1   if pi(n) < pi(j) < n

The same step acts on an ``n``-tuple ``g`` of group elements: the new tuple
is the ordered product of ``g`` along each return word (first-visited
factor rightmost), which reduces to multiplying ``g_n g_k`` into one slot;
see :func:`gamma_apply`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import (
    DegenerateLengths,
    IndexOutOfRange,
    IterateCapExceeded,
    LengthMismatch,
)
from .groups import GTuple
from .iet import EXACT, FLOAT, IET, Permutation, Scalar, TOLERANCE

#: Return words longer than this are never expanded explicitly.
WORD_BUDGET = 10**6


class RauzyRule(enum.Enum):
    A = "A"
    B = "B"

    def __str__(self) -> str:  # compact in CSV output
        return self.value


@dataclass(frozen=True)
class VisitMatrix:
    """Nonnegative integer matrix ``M`` with ``lambda_old = M lambda_new``.

    ``rows[i][j]`` counts the visits of the orbit of new interval ``j+1`` to
    old interval ``i+1`` before its first return.  Column sums are the
    return times.  Entries are Python ints, so arbitrarily long cumulative
    products stay exact.
    """

    rows: tuple[tuple[int, ...], ...]

    @staticmethod
    def identity(n: int) -> "VisitMatrix":
        return VisitMatrix(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.rows)

    def matmul(self, other: "VisitMatrix") -> "VisitMatrix":
        n = self.n
        ot = tuple(zip(*other.rows))
        return VisitMatrix(tuple(
            tuple(sum(row[t] * col[t] for t in range(n)) for col in ot)
            for row in self.rows))

    def apply(self, vector: Iterable[Scalar]) -> tuple[Scalar, ...]:
        vec = tuple(vector)
        return tuple(sum(c * v for c, v in zip(row, vec)) for row in self.rows)

    def column_sums(self) -> tuple[int, ...]:
        return tuple(sum(col) for col in zip(*self.rows))

    def det(self) -> int:
        """Exact determinant by Gaussian elimination over the rationals."""
        n = self.n
        m = [[Fraction(v) for v in row] for row in self.rows]
        det = Fraction(1)
        for c in range(n):
            pivot = next((r for r in range(c, n) if m[r][c] != 0), None)
            if pivot is None:
                return 0
            if pivot != c:
                m[c], m[pivot] = m[pivot], m[c]
                det = -det
            det *= m[c][c]
            for r in range(c + 1, n):
                f = m[r][c] / m[c][c]
                for cc in range(c, n):
                    m[r][cc] -= f * m[c][cc]
        assert det.denominator == 1
        return int(det)


@dataclass(frozen=True)
class Substitution:
    """Per-step return words: new interval ``j`` visits ``words[j-1]``.

    Words are over the previous level's interval indices, in visitation
    order (the word starts with the interval containing the point itself).
    """

    words: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.words)


@dataclass(frozen=True)
class ExtendedState:
    """A triple ``(lambda, pi, g)``: an IET plus a group tuple."""

    iet: IET
    tuple: GTuple

    def __post_init__(self):
        if self.tuple.n != self.iet.n:
            raise LengthMismatch(
                f"tuple of {self.tuple.n} elements over an IET of {self.iet.n} intervals")


@dataclass(frozen=True)
class StepRecord:
    """One induction step inside a :class:`RenormPath`."""

    rule: RauzyRule
    perm_before: Permutation
    iet_after: IET                 # normalized in float mode if requested
    shrink: Scalar                 # |lambda_after| / |lambda_before|
    matrix_step: VisitMatrix
    matrix_cum: VisitMatrix        # M_1 ... M_m, column sums = return times
    subst_step: Substitution
    tuple_after: GTuple


@dataclass(frozen=True)
class RenormPath:
    """Record of iterated extended induction from ``initial``.

    ``degenerate`` marks an early stop on a length tie; the recorded steps
    are the ones completed before the tie.
    """

    initial: ExtendedState
    steps: tuple[StepRecord, ...]
    degenerate: bool = False
    normalized: bool = True

    @property
    def m(self) -> int:
        return len(self.steps)

    def state(self, m: int | None = None) -> ExtendedState:
        if m is None:
            m = self.m
        if m == 0:
            return self.initial
        rec = self.steps[m - 1]
        return ExtendedState(rec.iet_after, rec.tuple_after)


def _tie(iet: IET) -> bool:
    ln = iet.lengths[-1]
    lk = iet.lengths[iet.perm.inverse_image(iet.n) - 1]
    if iet.mode == EXACT:
        return ln == lk
    return abs(ln - lk) <= TOLERANCE * float(iet.total)


def rauzy_step(iet: IET) -> tuple[RauzyRule, IET, VisitMatrix, Substitution]:
    """One Rauzy-Veech induction step.

    Returns the rule taken, the induced IET on the shortened interval, the
    visit matrix ``M`` (``lambda_old = M lambda_new``) and the per-step
    return words.  Raises :class:`DegenerateLengths` on the measure-zero tie
    ``lambda_n == lambda_{pi^{-1}(n)}``.
    """
    n = iet.n
    perm = iet.perm
    k = perm.inverse_image(n)
    if _tie(iet):
        raise DegenerateLengths(
            f"lambda_n == lambda_{{pi^-1(n)}} (= {iet.lengths[-1]}); induction undefined")
    ln = iet.lengths[-1]
    lk = iet.lengths[k - 1]
    rows = [[0] * n for _ in range(n)]
    if ln < lk:
        rule = RauzyRule.A
        new_lengths = (iet.lengths[:k - 1] + (lk - ln, ln) + iet.lengths[k:n - 1])
        images = [0] * n
        for j in range(1, k):
            images[j - 1] = perm(j)
        images[k - 1] = n
        images[k] = perm(n)
        for j in range(k + 2, n + 1):
            images[j - 1] = perm(j - 1)
        for j in range(1, k + 1):
            rows[j - 1][j - 1] = 1
        rows[k - 1][k] = 1          # old I_k = new k plus new k+1
        rows[n - 1][k] = 1          # old I_n visited by new k+1
        for j in range(k + 2, n + 1):
            rows[j - 2][j - 1] = 1  # old I_{j-1} = new j
        words = tuple(
            (j,) if j <= k else ((k, n) if j == k + 1 else (j - 1,))
            for j in range(1, n + 1))
    else:
        rule = RauzyRule.B
        new_lengths = iet.lengths[:n - 1] + (ln - lk,)
        pn = perm(n)
        images = [0] * n
        images[n - 1] = pn
        images[k - 1] = pn + 1
        for j in range(1, n):
            if j == k:
                continue
            pj = perm(j)
            images[j - 1] = pj if pj < pn else pj + 1
        for j in range(1, n + 1):
            rows[j - 1][j - 1] = 1
        rows[n - 1][k - 1] = 1      # old I_n visited by new k before return
        words = tuple(
            (k, n) if j == k else (j,)
            for j in range(1, n + 1))
    new_iet = IET(new_lengths, Permutation(tuple(images)))
    return rule, new_iet, VisitMatrix(tuple(tuple(r) for r in rows)), Substitution(words)


def gamma_apply(rule: RauzyRule, perm: Permutation, g: GTuple) -> GTuple:
    """Apply the tuple map of the given rule, for the permutation *before*
    the step.

    With ``k = pi^{-1}(n)``:

    * rule A: ``(g_1, .., g_k, g_n g_k, g_{k+1}, .., g_{n-1})``
    * rule B: ``(g_1, .., g_{k-1}, g_n g_k, g_{k+1}, .., g_n)``
    """
    n = perm.n
    if g.n != n:
        raise LengthMismatch(f"tuple of {g.n} elements, permutation of {n} symbols")
    k = perm.inverse_image(n)
    e = g.elements
    merged = e[n - 1] * e[k - 1]
    if rule is RauzyRule.A:
        new = e[:k] + (merged,) + e[k:n - 1]
    else:
        new = e[:k - 1] + (merged,) + e[k:n]
    return GTuple(g.group, new)


def extended_step(state: ExtendedState) -> tuple[RauzyRule, ExtendedState]:
    """One extended induction step: base step plus tuple map, same rule."""
    rule, new_iet, _, _ = rauzy_step(state.iet)
    new_tuple = gamma_apply(rule, state.iet.perm, state.tuple)
    return rule, ExtendedState(new_iet, new_tuple)


def renormalize(state: ExtendedState, steps: int, normalize: bool = True) -> RenormPath:
    """Iterate the extended induction ``steps`` times, recording each step.

    In float mode with ``normalize=True`` the IET is rescaled to unit total
    length after every step; exact mode never rescales.  A length tie stops
    the path early and sets ``degenerate`` instead of raising.
    """
    records: list[StepRecord] = []
    current = state
    cum = VisitMatrix.identity(state.iet.n)
    degenerate = False
    for _ in range(steps):
        iet = current.iet
        try:
            rule, new_iet, matrix, subst = rauzy_step(iet)
        except DegenerateLengths:
            degenerate = True
            break
        new_tuple = gamma_apply(rule, iet.perm, current.tuple)
        shrink = new_iet.total / iet.total
        if normalize and iet.mode == FLOAT:
            new_iet = new_iet.normalized()
        cum = cum.matmul(matrix)
        records.append(StepRecord(
            rule=rule, perm_before=iet.perm, iet_after=new_iet, shrink=shrink,
            matrix_step=matrix, matrix_cum=cum, subst_step=subst,
            tuple_after=new_tuple))
        current = ExtendedState(new_iet, new_tuple)
    return RenormPath(initial=state, steps=tuple(records), degenerate=degenerate,
                      normalized=normalize)


def zorich_step(iet: IET, cap: int = 10**6) -> tuple[RauzyRule, int, IET, VisitMatrix]:
    """Accelerated step: repeat the Rauzy step while the rule is constant.

    Returns ``(rule, count, iet, matrix)`` with ``matrix`` the product of
    the single-step visit matrices.  A tie on the very first step raises
    :class:`DegenerateLengths`; a tie after ``count >= 1`` steps ends the
    run (the tie resurfaces on the next call).
    """
    rule, current, matrix, _ = rauzy_step(iet)
    count = 1
    while count < cap:
        try:
            next_rule, next_iet, step_matrix, _ = rauzy_step(current)
        except DegenerateLengths:
            break
        if next_rule is not rule:
            break
        current = next_iet
        matrix = matrix.matmul(step_matrix)
        count += 1
    else:
        raise IterateCapExceeded(f"rule {rule} repeated more than {cap} times")
    return rule, count, current, matrix


def return_word(path: RenormPath, j: int) -> tuple[int, ...]:
    """Visitation word of the level-``m`` interval ``j`` through level 0.

    The word lists, in order, the original intervals visited by a point of
    ``I_j^m`` before it first returns to ``I^m``; its length is the return
    time (the ``j``-th column sum of the cumulative visit matrix).  The
    ordered product of a tuple ``g`` along the word, first-visited factor
    rightmost, equals component ``j`` of the renormalized tuple.
    """
    n = path.initial.iet.n
    if not 1 <= j <= n:
        raise IndexOutOfRange(f"interval index {j} outside 1..{n}")
    if path.steps:
        expected = path.steps[-1].matrix_cum.column_sums()[j - 1]
        if expected > WORD_BUDGET:
            raise IterateCapExceeded(
                f"return word of length {expected} exceeds budget {WORD_BUDGET}")
    word = [j]
    for rec in reversed(path.steps):
        expanded: list[int] = []
        for s in word:
            expanded.extend(rec.subst_step.words[s - 1])
        word = expanded
    return tuple(word)


def induce(iet: IET, m: int) -> tuple[list[IET], list[VisitMatrix]]:
    """Iterate plain (unnormalized) induction ``m`` times.

    Returns the levels ``[T^0, .., T^m]`` and cumulative matrices
    ``[M^(0)=I, .., M^(m)]``.  Propagates :class:`DegenerateLengths`.
    """
    levels = [iet]
    cums = [VisitMatrix.identity(iet.n)]
    for _ in range(m):
        _, nxt, matrix, _ = rauzy_step(levels[-1])
        levels.append(nxt)
        cums.append(cums[-1].matmul(matrix))
    return levels, cums


def _backward_hit(levels: list[IET], cums: list[VisitMatrix], beta: Scalar) -> int:
    """First ``t >= 0`` with ``T^{-t} beta`` in the *open* interior of
    ``I^m = (0, |lambda^m|)``.

    Walks ``beta`` down the tower hierarchy: at each refinement a point not
    yet inside the smaller interval needs exactly one backward step of the
    induced map, which costs the return time (cumulative column sum) of the
    landing interval.  This evaluates the hitting time arithmetically, in
    time O(m n) instead of O(hitting time).
    """
    m = len(levels) - 1
    inverses = [lv.inverse() for lv in levels]
    y = beta
    t = 0
    for r in range(m):
        if y < levels[r + 1].total:
            continue
        y = inverses[r].apply(y)
        t += cums[r].column_sums()[levels[r].interval_index(y) - 1]
    if y == 0:
        # boundary touch does not break intervalhood; step to the next hit,
        # which is interior because pi(1) != 1 for irreducible pi
        y = inverses[m].apply(y)
        t += cums[m].column_sums()[levels[m].interval_index(y) - 1]
        assert y != 0
    return t


def check_P1(iet: IET, m: int, eps) -> tuple[bool, int]:
    """Largest ``b`` such that the forward images ``T^k I^m`` for ``0 <= k < b``
    contain no original cut point ``beta_i`` (``1 <= i <= n-1``) in their
    interior, and whether ``b >= eps |lambda| / |lambda^m|``.

    Interior containment is used: an image touching a cut point at an
    endpoint still counts as an interval.  For ``m = 0`` the interval is
    ``I`` itself, which contains every cut point, so ``b = 0`` and the
    property fails for any ``eps > 0``.
    """
    levels, cums = induce(iet, m)
    b = min(_backward_hit(levels, cums, beta) for beta in iet.cuts[1:-1])
    needed = eps * iet.total / levels[m].total
    return b >= needed, b


def check_P2(iet: IET, m: int, eps) -> bool:
    """Whether every induced length satisfies ``lambda_i^m >= eps |lambda^m|``."""
    levels, _ = induce(iet, m)
    level = levels[m]
    return min(level.lengths) >= eps * level.total


def replay(path: RenormPath) -> bool:
    """Re-run the recorded steps from the initial state and compare records.

    Float paths replay with the same normalization convention, so the check
    is exact equality of the recorded fields.
    """
    current = path.initial
    for rec in path.steps:
        rule, new_iet, matrix, subst = rauzy_step(current.iet)
        new_tuple = gamma_apply(rule, current.iet.perm, current.tuple)
        if path.normalized and current.iet.mode == FLOAT:
            new_iet = new_iet.normalized()
        if (rule is not rec.rule or new_iet != rec.iet_after
                or matrix != rec.matrix_step or subst != rec.subst_step
                or new_tuple != rec.tuple_after):
            return False
        current = ExtendedState(new_iet, new_tuple)
    return True
