"""Computable obstructions tracked along the extended renormalization.

Two rigidity diagnostics:

* The common-fixed-vector functional.  For a tuple ``g`` and a matrix
  representation ``rho``, form the Hermitian positive semidefinite

  ``M = sum_k (rho(g_k) - I)^* (rho(g_k) - I)``.

  Its smallest eigenvalue is ``min_{|w|=1} sum_k |rho(g_k) w - w|^2``; the
  minimizer ``w`` is the witness and ``ob = max_k |rho(g_k) w - w|`` is the
  reported functional.  ``ob`` vanishes exactly on the tuples whose images
  share a fixed unit vector, and the sandwich
  ``surrogate/sqrt(n) <= ob <= surrogate`` holds at the witness with
  ``surrogate = sqrt(lambda_min)``.  Solvability of the associated twisted
  cohomological equation forces ``ob`` to decay along a subsequence of
  renormalization times, so a series bounded away from zero is the
  desk-scale witness of weak mixing.

* The conjugacy functional.  Two tuples over the same base IET renormalize
  with the same rule sequence; ``c_m`` is the minimal bi-invariant distance
  between the first components after conjugating one of them,
  ``min_a d(a g_1^m a^{-1}, h_1^m)``.  Measurable cohomology of the two
  extensions forces ``c_m`` to decay along a subsequence; non-decay is the
  desk-scale witness of non-equivalence.

Eigenpairs are computed by closed form for 2x2 and by cyclic Jacobi for
3x3; the representation inventory needs nothing larger.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateLengths, MismatchedBase
from .groups import GTuple, Representation, conj_min_distance, rep_matrix
from .iet import FLOAT
from .rauzy import ExtendedState, RauzyRule, gamma_apply, rauzy_step

#: Cyclic Jacobi sweeps stop at this off-diagonal Frobenius mass.
JACOBI_TOL = 1e-14


def _min_eig_2x2(m: np.ndarray) -> tuple[float, np.ndarray]:
    """Smallest eigenpair of a 2x2 Hermitian matrix, closed form."""
    a = m[0, 0].real
    c = m[1, 1].real
    b = m[0, 1]
    half_gap = math.hypot((a - c) / 2.0, abs(b))
    lam = (a + c) / 2.0 - half_gap
    # eigenvector from whichever row equation is better conditioned
    v1 = np.array([-b, a - lam], dtype=complex)
    v2 = np.array([c - lam, -np.conj(b)], dtype=complex)
    v = v1 if np.linalg.norm(v1) >= np.linalg.norm(v2) else v2
    norm = np.linalg.norm(v)
    if norm == 0.0:            # multiple of the identity; any unit vector
        return lam, np.array([1.0, 0.0], dtype=complex)
    return lam, v / norm


def _jacobi_hermitian(m: np.ndarray, tol: float = JACOBI_TOL,
                      max_sweeps: int = 60) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi diagonalization of a small Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors)`` with columns of the unitary as
    eigenvectors.  Converges quadratically; a handful of sweeps reaches
    ``tol`` for the 3x3 inputs used here.
    """
    d = m.shape[0]
    a = m.astype(complex).copy()
    v = np.eye(d, dtype=complex)
    for _ in range(max_sweeps):
        off = math.sqrt(sum(abs(a[p, q]) ** 2
                            for p in range(d) for q in range(d) if p != q))
        if off <= tol:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                if abs(apq) == 0.0:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                phase = apq / abs(apq)
                theta = 0.5 * math.atan2(2.0 * abs(apq), app - aqq)
                cs = math.cos(theta)
                sn = math.sin(theta)
                j = np.eye(d, dtype=complex)
                j[p, p] = cs
                j[q, q] = cs
                j[p, q] = -sn * phase
                j[q, p] = sn * np.conj(phase)
                a = j.conj().T @ a @ j
                v = v @ j
    return a.diagonal().real.copy(), v


def _min_eig(m: np.ndarray) -> tuple[float, np.ndarray]:
    d = m.shape[0]
    if d == 1:
        return m[0, 0].real, np.array([1.0], dtype=complex)
    if d == 2:
        return _min_eig_2x2(m)
    eigvals, eigvecs = _jacobi_hermitian(m)
    i = int(np.argmin(eigvals))
    return float(eigvals[i]), eigvecs[:, i]


@dataclass(frozen=True)
class FixedVectorReport:
    """Fixed-vector functional of one tuple.

    ``surrogate`` is ``sqrt(lambda_min(M))``; ``ob`` the max residual
    ``|rho(g_k) w - w|`` at the witness ``w``; ``rule`` is the induction
    rule that produced the tuple (None for the initial one).
    """

    m: int
    surrogate: float
    witness: tuple[complex, ...]
    ob: float
    rule: RauzyRule | None = None


def fixed_vector_obstruction(g: GTuple, rep: Representation,
                             m: int = 0, rule: RauzyRule | None = None) -> FixedVectorReport:
    """Evaluate the common-fixed-vector functional of ``g`` under ``rep``."""
    mats = [rep_matrix(rep, el) for el in g.elements]
    d = rep.dimension
    eye = np.eye(d, dtype=complex)
    acc = np.zeros((d, d), dtype=complex)
    for u in mats:
        diff = u - eye
        acc += diff.conj().T @ diff
    lam, w = _min_eig(acc)
    ob = max(float(np.linalg.norm(u @ w - w)) for u in mats)
    return FixedVectorReport(
        m=m, surrogate=math.sqrt(max(lam, 0.0)),
        witness=tuple(complex(c) for c in w), ob=ob, rule=rule)


@dataclass(frozen=True)
class ConjReport:
    """Conjugacy functional ``c_m = min_a d(a g_1^m a^{-1}, h_1^m)``."""

    m: int
    value: float
    rule: RauzyRule | None = None


def track_fixed_vector(state: ExtendedState, rep: Representation,
                       steps: int, stride: int = 1) -> list[FixedVectorReport]:
    """Fixed-vector functional along the renormalization orbit.

    Reports at ``m = 0, stride, 2 stride, ...`` up to ``steps``; a length
    tie truncates the series at the last completed step.
    """
    reports = [fixed_vector_obstruction(state.tuple, rep, m=0)]
    current = state
    for m in range(1, steps + 1):
        try:
            rule, current = _normalized_step(current)
        except DegenerateLengths:
            break
        if m % stride == 0:
            reports.append(fixed_vector_obstruction(current.tuple, rep, m=m, rule=rule))
    return reports


def track_conjugacy(state_g: ExtendedState, state_h: ExtendedState,
                    steps: int, stride: int = 1,
                    all_components: bool = False) -> list[ConjReport]:
    """Conjugacy functional along a shared renormalization orbit.

    Both states must sit over the same base IET (same lengths and
    permutation); the rule sequence depends only on the base, so both
    tuples are driven by the same rules.  ``all_components`` switches from
    the first-component distance to the max over all components.
    """
    if (state_g.iet.lengths != state_h.iet.lengths
            or state_g.iet.perm != state_h.iet.perm):
        raise MismatchedBase("the two states must share lengths and permutation")

    def measure(g: GTuple, h: GTuple) -> float:
        if all_components:
            return max(conj_min_distance(a, b)
                       for a, b in zip(g.elements, h.elements))
        return conj_min_distance(g.elements[0], h.elements[0])

    reports = [ConjReport(m=0, value=measure(state_g.tuple, state_h.tuple))]
    iet = state_g.iet
    tup_g, tup_h = state_g.tuple, state_h.tuple
    for m in range(1, steps + 1):
        try:
            rule, new_iet, _, _ = rauzy_step(iet)
        except DegenerateLengths:
            break
        tup_g = gamma_apply(rule, iet.perm, tup_g)
        tup_h = gamma_apply(rule, iet.perm, tup_h)
        iet = new_iet.normalized() if new_iet.mode == FLOAT else new_iet
        if m % stride == 0:
            reports.append(ConjReport(m=m, value=measure(tup_g, tup_h), rule=rule))
    return reports


def _normalized_step(state: ExtendedState):
    rule, new_iet, _, _ = rauzy_step(state.iet)
    new_tuple = gamma_apply(rule, state.iet.perm, state.tuple)
    if new_iet.mode == FLOAT:
        new_iet = new_iet.normalized()
    return rule, ExtendedState(new_iet, new_tuple)
