"""Quadrature and one-dimensional root/extremum finders shared by the modules."""
from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import NoSignChange

GL_NODES = 64
BISECT_TOL = 1e-12
BISECT_MAXITER = 200
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@lru_cache(maxsize=None)
def leggauss_cached(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre(f: Callable, a, b, n: int = GL_NODES):
    """Integrate ``f`` along the straight segment from ``a`` to ``b``.

    ``a`` and ``b`` may be complex; ``f`` must accept a numpy array of nodes.
    """
    x, w = leggauss_cached(n)
    half = (b - a) / 2.0
    t = a + half * (x + 1.0)
    return half * np.dot(w, f(t))


def bisect(f: Callable[[float], float], lo: float, hi: float,
           tol: float = BISECT_TOL, maxiter: int = BISECT_MAXITER) -> float:
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise NoSignChange(f"f({lo:.6g}) = {flo:.3g} and f({hi:.6g}) = {fhi:.3g} have the same sign")
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0 or hi - lo <= tol:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def golden_section_max(f: Callable[[float], float], lo: float, hi: float,
                       tol: float = 1e-10, maxiter: int = 500) -> float:
    """Maximizer of a unimodal ``f`` on ``[lo, hi]``."""
    c = hi - _INVPHI * (hi - lo)
    d = lo + _INVPHI * (hi - lo)
    fc, fd = f(c), f(d)
    for _ in range(maxiter):
        if hi - lo <= tol:
            break
        if fc > fd:
            hi, d, fd = d, c, fc
            c = hi - _INVPHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INVPHI * (hi - lo)
            fd = f(d)
    return 0.5 * (lo + hi)
