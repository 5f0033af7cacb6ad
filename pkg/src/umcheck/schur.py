"""Analytic self-maps of the unit disk (the Schur class).

Each variant knows its exact value, derivative, Taylor expansion at the origin
and the antiderivative ``V`` with ``V(0) = 0``. All methods accept scalars or
numpy arrays.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import series as ser
from .errors import OutsideDisk
from .numerics import GL_NODES, leggauss_cached

SMALL_A = 0.05
SMALL_A_TERMS = 16
SAMPLE_RADIUS = 0.999
SAMPLE_POINTS = 720
SAMPLE_SLACK = 1e-9
RANDOM_ZERO_CAP = 0.95

_UNIT_TOL = 1e-12


def _check_inside(z):
    if np.any(np.abs(z) >= 1.0):
        raise OutsideDisk(f"|z| must be < 1, got max |z| = {np.max(np.abs(z)):.17g}")


def log1p(u):
    """Accurate ``log(1 + u)`` for complex arrays (numpy's complex log1p is not)."""
    u = np.asarray(u, dtype=complex)
    w = 1.0 + u
    dw = w - 1.0
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(dw == 0, u, np.log(w) * (u / dw))
    return out


def mobius_integral(a: float, z):
    """``integral_0^z (a + t) / (1 + a t) dt``; ``a`` real in (-1, 1]."""
    z = np.asarray(z, dtype=complex)
    if abs(a) >= SMALL_A:
        return z / a + ((a * a - 1.0) / (a * a)) * log1p(a * z)
    # (a+t)/(1+at) = sum_k (-a)^k (a t^k + t^(k+1)); |a z| < 0.05 so 16 terms reach 1e-20
    acc = np.zeros_like(z)
    for k in range(SMALL_A_TERMS):
        acc = acc + (-a) ** k * (a * z ** (k + 1) / (k + 1) + z ** (k + 2) / (k + 2))
    return acc


def _scalar(x):
    return x[()] if isinstance(x, np.ndarray) and x.ndim == 0 else x


class SchurFunction:
    """Common interface; subclasses supply ``_eval``, ``_deriv``, ``taylor``."""

    def eval(self, z):
        z = np.asarray(z, dtype=complex)
        _check_inside(z)
        return _scalar(self._eval(z))

    __call__ = eval

    def deriv(self, z):
        z = np.asarray(z, dtype=complex)
        _check_inside(z)
        return _scalar(self._deriv(z))

    def antiderivative_at(self, z):
        """``V(z) = integral of omega from 0 to z`` along the straight segment."""
        z = np.asarray(z, dtype=complex)
        _check_inside(z)
        return _scalar(self._antiderivative(z))

    def _antiderivative(self, z):
        return _segment_quadrature(self._eval, z)

    def taylor(self, order: int) -> ser.ComplexSeries:
        raise NotImplementedError

    def to_spec(self) -> str:
        """Constructor string in the CLI syntax."""
        raise NotImplementedError

    @property
    def certified(self) -> bool:
        return True

    def max_modulus(self, radius: float = SAMPLE_RADIUS, points: int = SAMPLE_POINTS) -> float:
        theta = 2.0 * np.pi * np.arange(points) / points
        return float(np.max(np.abs(self._eval(radius * np.exp(1j * theta)))))


def _segment_quadrature(f, z):
    x, w = leggauss_cached(GL_NODES)
    half = z / 2.0
    nodes = half[..., None] * (x + 1.0)
    return half * (f(nodes) @ w)


@dataclass(frozen=True)
class Constant(SchurFunction):
    c: complex

    def __post_init__(self):
        object.__setattr__(self, "c", complex(self.c))
        if abs(self.c) > 1.0 + _UNIT_TOL:
            raise ValueError(f"|c| = {abs(self.c)} exceeds 1")

    def _eval(self, z):
        return np.full_like(z, self.c)

    def _deriv(self, z):
        return np.zeros_like(z)

    def _antiderivative(self, z):
        return self.c * z

    def taylor(self, order):
        return ser.constant(self.c, order)

    def to_spec(self):
        return f"const:{self.c.real!r},{self.c.imag!r}"


@dataclass(frozen=True)
class NegatedMobius(SchurFunction):
    """``omega(z) = -(a + z) / (1 + a z)`` for real ``a`` in (-1, 1)."""

    a: float

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a))
        if not -1.0 < self.a < 1.0:
            raise ValueError(f"Mobius parameter must lie in (-1, 1), got {self.a}")

    def _eval(self, z):
        a = self.a
        return -(a + z) / (1.0 + a * z)

    def _deriv(self, z):
        a = self.a
        return -(1.0 - a * a) / (1.0 + a * z) ** 2

    def _antiderivative(self, z):
        return -mobius_integral(self.a, z)

    def taylor(self, order):
        a = self.a
        c = np.empty(order + 1, dtype=complex)
        c[0] = -a
        if order >= 1:
            c[1:] = -(1.0 - a * a) * (-a) ** np.arange(order)
        return ser.ComplexSeries(c)

    def to_spec(self):
        return f"negmob:{self.a!r}"


@dataclass(frozen=True)
class BlaschkeProduct(SchurFunction):
    """``exp(i theta) * prod (z - z_k) / (1 - conj(z_k) z)``."""

    theta: float
    zeros: tuple = ()

    def __post_init__(self):
        zs = tuple(complex(zk) for zk in self.zeros)
        if any(abs(zk) >= 1.0 for zk in zs):
            raise ValueError("Blaschke zeros must lie strictly inside the disk")
        object.__setattr__(self, "zeros", zs)
        object.__setattr__(self, "theta", float(self.theta) % (2.0 * math.pi))

    @property
    def phase(self) -> complex:
        return cmath.exp(1j * self.theta)

    def _factors(self, z):
        zk = np.asarray(self.zeros, dtype=complex)
        zz = z[..., None]
        num = zz - zk
        den = 1.0 - np.conj(zk) * zz
        return num / den, (1.0 - np.abs(zk) ** 2) / den**2

    def _eval(self, z):
        if not self.zeros:
            return np.full_like(z, self.phase)
        f, _ = self._factors(z)
        return self.phase * np.prod(f, axis=-1)

    def _deriv(self, z):
        if not self.zeros:
            return np.zeros_like(z)
        f, df = self._factors(z)
        near_zero = np.any(np.abs(f) < 1e-8, axis=-1)
        with np.errstate(divide="ignore", invalid="ignore"):
            logd = self.phase * np.prod(f, axis=-1) * np.sum(df / f, axis=-1)
        if np.any(near_zero):
            # product rule: sum_j f'_j prod_{i != j} f_i
            d = len(self.zeros)
            prod_rule = np.zeros_like(z)
            for j in range(d):
                others = np.prod(np.delete(f, j, axis=-1), axis=-1) if d > 1 else 1.0
                prod_rule = prod_rule + df[..., j] * others
            logd = np.where(near_zero, self.phase * prod_rule, logd)
        return logd

    def taylor(self, order):
        out = ser.constant(self.phase, order)
        for zk in self.zeros:
            geo = ser.ComplexSeries(np.conj(zk) ** np.arange(order + 1))
            lin = ser.constant(-zk, order) + ser.identity(order)
            out = out * (lin * geo)
        return out

    def to_spec(self):
        parts = [f"blaschke:{self.theta!r}"]
        parts += [f"{zk.real!r},{zk.imag!r}" for zk in self.zeros]
        return ";".join(parts)


@dataclass(frozen=True)
class TaylorSchur(SchurFunction):
    """Polynomial ``sum c_k z^k``.

    Membership in the Schur class is certified when ``sum |c_k| <= 1``;
    otherwise it is accepted only if sampling on ``|z| = 0.999`` stays within
    ``1 + 1e-9``, and results built from it are flagged uncertified.
    """

    coeffs: tuple
    certification: str = field(init=False)

    def __post_init__(self):
        cs = tuple(complex(c) for c in self.coeffs)
        if not cs:
            raise ValueError("TaylorSchur needs at least one coefficient")
        object.__setattr__(self, "coeffs", cs)
        if sum(abs(c) for c in cs) <= 1.0 + _UNIT_TOL:
            object.__setattr__(self, "certification", "sum-bound")
        elif self.max_modulus() <= 1.0 + SAMPLE_SLACK:
            object.__setattr__(self, "certification", "sampled-only")
        else:
            raise ValueError("polynomial exceeds modulus 1 on |z| = 0.999; not a Schur function")

    @property
    def certified(self):
        return self.certification == "sum-bound"

    @property
    def _series(self):
        return ser.from_coeffs(self.coeffs)

    def _eval(self, z):
        return np.polynomial.polynomial.polyval(z, np.asarray(self.coeffs))

    def _deriv(self, z):
        c = np.polynomial.polynomial.polyder(np.asarray(self.coeffs))
        return np.polynomial.polynomial.polyval(z, c)

    def _antiderivative(self, z):
        c = np.polynomial.polynomial.polyint(np.asarray(self.coeffs))
        return np.polynomial.polynomial.polyval(z, c)

    def taylor(self, order):
        c = np.zeros(order + 1, dtype=complex)
        n = min(order + 1, len(self.coeffs))
        c[:n] = self.coeffs[:n]
        return ser.ComplexSeries(c)

    def to_spec(self):
        return "taylor:" + ",".join(
            repr(c.real) if c.imag == 0 else f"{c.real!r}{c.imag:+.17g}j" for c in self.coeffs
        )


def schwarz_pick_margin(omega: SchurFunction, samples: Sequence[complex]) -> float:
    """Smallest slack in ``|w'(z)| <= (1 - |w(z)|^2) / (1 - |z|^2)`` over ``samples``."""
    z = np.asarray(samples, dtype=complex)
    w = np.asarray(omega.eval(z))
    dw = np.asarray(omega.deriv(z))
    slack = (1.0 - np.abs(w) ** 2) / (1.0 - np.abs(z) ** 2) - np.abs(dw)
    return float(np.min(slack))


def random_blaschke(degree: int, seed) -> SchurFunction:
    """Reproducible random Blaschke product with zeros in ``|z| <= 0.95``.

    Degree 0 yields a unimodular :class:`Constant`.
    """
    if degree < 0:
        raise ValueError("degree must be >= 0")
    rng = np.random.default_rng(seed)
    theta = rng.uniform(0.0, 2.0 * math.pi)
    if degree == 0:
        return Constant(cmath.exp(1j * theta))
    r = RANDOM_ZERO_CAP * np.sqrt(rng.uniform(0.0, 1.0, degree))
    ang = rng.uniform(0.0, 2.0 * math.pi, degree)
    return BlaschkeProduct(theta, tuple(r * np.exp(1j * ang)))
