"""Shared oracle helpers for the test suite.

The helpers here deliberately avoid the library's closed forms: the sphere
searches evaluate the quadratic form directly and the conjugacy oracle
minimizes over sampled conjugators, so they stay independent of the code
paths they validate.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ietext import make_iet
from ietext.iet import IET


def fib(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def golden_exact_iet(top: int = 53) -> IET:
    """Fibonacci-length stand-in for the golden rotation.

    Consecutive Fibonacci lengths reproduce the alternating A/B rule
    pattern of the golden continued fraction for ``top - 3`` exact steps
    before Euclid bottoms out.
    """
    return make_iet([Fraction(fib(top)), Fraction(fib(top - 1))], (2, 1))


def golden_float_iet() -> IET:
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    return make_iet([phi - 1.0, 2.0 - phi], (2, 1))


def grid_min_quadratic_d2(m: np.ndarray, coarse: int = 10**4,
                          rounds: int = 3) -> tuple[float, np.ndarray]:
    """Minimize ``w* M w`` over unit vectors in C^2 (up to phase) by a
    Fibonacci lattice over the parameter sphere plus local grid refinement.

    Independent route: evaluates the form directly, never an eigensolver.
    """

    def vectors(theta, phi):
        return np.stack([np.cos(theta / 2) + 0j,
                         np.exp(1j * phi) * np.sin(theta / 2)], axis=1)

    def evaluate(w):
        return np.real(np.einsum("ij,jk,ik->i", w.conj(), m, w))

    i = np.arange(coarse)
    theta = np.arccos(1.0 - 2.0 * (i + 0.5) / coarse)
    phi = math.pi * (3.0 - math.sqrt(5.0)) * i
    w = vectors(theta, phi)
    q = evaluate(w)
    best = int(np.argmin(q))
    best_q, best_t, best_p, best_w = q[best], theta[best], phi[best], w[best]
    span = math.sqrt(4.0 * math.pi / coarse)
    for _ in range(rounds):
        th = np.clip(best_t + np.linspace(-span, span, 41), 0.0, math.pi)
        ph = best_p + np.linspace(-span, span, 41)
        tt, pp = np.meshgrid(th, ph)
        w = vectors(tt.ravel(), pp.ravel())
        q = evaluate(w)
        j = int(np.argmin(q))
        if q[j] < best_q:
            best_q, best_t, best_p, best_w = q[j], tt.ravel()[j], pp.ravel()[j], w[j]
        span /= 10.0
    return float(best_q), best_w


def _quat_mul_arrays(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    w1, x1, y1, z1 = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    w2, x2, y2, z2 = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack([
        w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
        w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
        w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
        w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
    ], axis=-1)


def sampled_conj_min(a, b, samples: int, rng: np.random.Generator,
                     rounds: int = 3) -> float:
    """``min_c |c a c^{-1} - b|`` over quaternions: Haar sample then local
    grid polish around the best conjugator.  Independent of the
    eigenangle closed form."""
    qa = np.array(a.data)
    qb = np.array(b.data)

    def dist(cs: np.ndarray) -> np.ndarray:
        inv = cs * np.array([1.0, -1.0, -1.0, -1.0])
        conj = _quat_mul_arrays(_quat_mul_arrays(cs, qa[None, :]), inv)
        return np.linalg.norm(conj - qb[None, :], axis=-1)

    cs = rng.standard_normal((samples, 4))
    cs /= np.linalg.norm(cs, axis=1, keepdims=True)
    d = dist(cs)
    best = int(np.argmin(d))
    best_c, best_d = cs[best], float(d[best])
    h = 0.2
    axis = np.linspace(-1.0, 1.0, 7)
    dx, dy, dz = np.meshgrid(axis, axis, axis)
    cube = np.stack([dx.ravel(), dy.ravel(), dz.ravel()], axis=-1)
    for _ in range(rounds):
        v = cube * h
        norms = np.linalg.norm(v, axis=1)
        half = norms / 2.0
        sinc = np.where(norms > 1e-15, np.sin(half) / np.maximum(norms, 1e-300), 0.5)
        steps = np.concatenate([np.cos(half)[:, None], v * sinc[:, None]], axis=1)
        cand = _quat_mul_arrays(steps, best_c[None, :])
        cand /= np.linalg.norm(cand, axis=1, keepdims=True)
        d = dist(cand)
        j = int(np.argmin(d))
        if d[j] < best_d:
            best_d, best_c = float(d[j]), cand[j]
        h /= 5.0
    return best_d
