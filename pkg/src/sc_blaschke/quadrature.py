"""Gauss rules used by the boundary tracer."""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi


@lru_cache(maxsize=256)
def gauss_jacobi(n: int, alpha: float, beta: float):
    """Nodes/weights on [-1, 1] for the weight ``(1 - x)^alpha (1 + x)^beta``."""
    x, w = roots_jacobi(n, alpha, beta)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@lru_cache(maxsize=64)
def gauss_legendre(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def jacobi_interval(func, a: float, b: float, left: float = 0.0, right: float = 0.0, n: int = 32):
    """``int_a^b (t - a)^left (b - t)^right func(t) dt`` for smooth ``func``."""
    x, w = gauss_jacobi(n, float(right), float(left))
    h = 0.5 * (b - a)
    t = a + (x + 1.0) * h
    return h ** (1.0 + left + right) * np.dot(w, func(t))


def legendre_interval(func, a: float, b: float, n: int = 32):
    x, w = gauss_legendre(n)
    h = 0.5 * (b - a)
    return h * np.dot(w, func(a + (x + 1.0) * h))


def adaptive(rule, *args, n: int = 32, tol: float = 1e-8, nmax: int = 1024, **kw):
    """Apply ``rule`` with ``n`` nodes and keep doubling until two results agree.

    Returns ``(value, converged)``.
    """
    prev = rule(*args, n=n, **kw)
    while n < nmax:
        n *= 2
        cur = rule(*args, n=n, **kw)
        if abs(cur - prev) <= tol * max(1.0, abs(cur)):
            return cur, True
        prev = cur
    return prev, False
