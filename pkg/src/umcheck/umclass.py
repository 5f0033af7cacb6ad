"""The class U_m(lambda): construction, membership, Taylor and Laurent data, bounds.

A member is built from a Schur function ``omega`` as

    f(z) = z / (1 - z/p + lambda * z * (V(p) - V(z))),   V' = omega, V(0) = 0.

Two evaluation paths exist on purpose: a truncated Taylor series at the origin
and the closed-form denominator. Coefficient claims are cross-checked between
them.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import series as ser
from .errors import AtPole, InfeasibleExtremal
from .schur import NegatedMobius, SchurFunction

POLE_GUARD = 1e-12
CONTOUR_NODES = 256
THRESHOLD_P = (math.sqrt(17.0) - 1.0) / 4.0


@dataclass(frozen=True)
class PoleParams:
    p: float
    lam: float

    def __post_init__(self):
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "lam", float(self.lam))
        if not 0.0 < self.p < 1.0:
            raise ValueError(f"pole p must lie in (0, 1), got {self.p}")
        if not 0.0 < self.lam < 1.0:
            raise ValueError(f"lambda must lie in (0, 1), got {self.lam}")


@dataclass(frozen=True)
class Disk:
    center: complex
    radius: float

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("radius must be nonnegative")

    def contains(self, w: complex, tol: float = 0.0) -> bool:
        return abs(w - self.center) <= self.radius + tol

    @property
    def modulus_range(self) -> "ModulusRange":
        c = abs(self.center)
        return ModulusRange(max(0.0, c - self.radius), c + self.radius)


@dataclass(frozen=True)
class ModulusRange:
    lo: float
    hi: float

    def __post_init__(self):
        if not 0.0 <= self.lo <= self.hi:
            raise ValueError(f"invalid modulus range ({self.lo}, {self.hi})")

    def contains(self, r: float, tol: float = 0.0) -> bool:
        return self.lo - tol <= r <= self.hi + tol


@dataclass(frozen=True, eq=False)
class UmFunction:
    params: PoleParams
    omega: SchurFunction
    order: int
    v_at_pole: complex
    denom: ser.ComplexSeries
    f_series: ser.ComplexSeries

    @property
    def certified(self) -> bool:
        """False when omega's Schur membership was only checked by sampling."""
        return self.omega.certified

    def taylor_coefficient(self, n: int) -> complex:
        return complex(self.f_series[n])


def build(params: PoleParams, omega: SchurFunction, order: int = ser.DEFAULT_ORDER) -> UmFunction:
    if order < 4:
        raise ValueError("series order must be at least 4")
    p, lam = params.p, params.lam
    vp = complex(omega.antiderivative_at(p))
    v_series = ser.antidifferentiate(omega.taylor(order))
    r = (lam * (ser.constant(vp, order + 1) - v_series)).shift().truncate(order)
    denom = r + ser.from_coeffs([1.0, -1.0 / p] + [0.0] * (order - 1))
    f_series = ser.reciprocal(denom).shift().truncate(order)
    return UmFunction(params, omega, order, vp, denom, f_series)


def denominator(u: UmFunction, z):
    """Closed-form ``z/f(z)``; vanishes at the pole."""
    p, lam = u.params.p, u.params.lam
    z = np.asarray(z, dtype=complex)
    return 1.0 - z / p + lam * z * (u.v_at_pole - u.omega.antiderivative_at(z))


def eval_f(u: UmFunction, z):
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z - u.params.p) < POLE_GUARD):
        raise AtPole(f"z is within {POLE_GUARD} of the pole p = {u.params.p}")
    out = z / denominator(u, z)
    return out[()] if out.ndim == 0 else out


def uf_series(u: UmFunction) -> ser.ComplexSeries:
    """``(z/f) - z (z/f)' - 1`` as a series; equals ``lambda z^2 omega``."""
    d = u.denom
    return d - ser.differentiate(d).shift() - 1.0


def membership_margin(u: UmFunction, grid_radius: float = 0.999, grid_points: int = 720) -> float:
    if not 0.0 < grid_radius < 1.0:
        raise ValueError("grid_radius must lie in (0, 1)")
    theta = 2.0 * np.pi * np.arange(grid_points) / grid_points
    z = grid_radius * np.exp(1j * theta)
    lam = u.params.lam
    return float(lam - np.max(np.abs(lam * z**2 * u.omega.eval(z))))


def a2_disk(params: PoleParams) -> Disk:
    return Disk(1.0 / params.p, params.lam * params.p)


def a2_closed(params: PoleParams, omega: SchurFunction) -> complex:
    """``a_2 = 1/p - lambda * integral_0^p omega``."""
    return complex(1.0 / params.p - params.lam * omega.antiderivative_at(params.p))


def residue(params: PoleParams, omega: SchurFunction) -> complex:
    p, lam = params.p, params.lam
    return complex(-p * p / (1.0 + lam * p * p * omega.eval(p)))


def residue_modulus_range(params: PoleParams) -> ModulusRange:
    p2, lam = params.p**2, params.lam
    return ModulusRange(p2 / (1.0 + lam * p2), p2 / (1.0 - lam * p2))


def laurent_b0(params: PoleParams, omega: SchurFunction) -> complex:
    p, lam = params.p, params.lam
    w, dw = omega.eval(p), omega.deriv(p)
    return complex((-2.0 * p + lam * p**4 * dw) / (2.0 * (1.0 + lam * p * p * w) ** 2))


def laurent_numeric(u: UmFunction, k: int, rho: float | None = None, nodes: int = CONTOUR_NODES) -> complex:
    """Trapezoid rule for ``b_k = (1/2 pi i) * contour integral of f/(z-p)^(k+1)``."""
    p = u.params.p
    if rho is None:
        rho = min(p, 1.0 - p) / 2.0
    if k < -1:
        raise ValueError("the pole is simple; k must be >= -1")
    if not 0.0 < rho < min(p, 1.0 - p):
        raise ValueError(f"rho must lie in (0, {min(p, 1.0 - p)})")
    if nodes < 64:
        raise ValueError("use at least 64 contour nodes")
    e = np.exp(2j * np.pi * np.arange(nodes) / nodes)
    fz = eval_f(u, p + rho * e)
    return complex(np.mean(fz * (rho * e) ** (-k)))


def phi(p: float) -> float:
    return (2.0 * p * p + p - 2.0) / p**3


class B0Case(str, enum.Enum):
    I = "I"
    II = "II"
    III = "III"


def b0_case(params: PoleParams) -> B0Case:
    if params.p <= THRESHOLD_P:
        return B0Case.I
    # ties lambda == phi(p) belong to the closed interval of case II
    return B0Case.II if params.lam >= phi(params.p) else B0Case.III


def b0_bound(params: PoleParams) -> tuple[float, B0Case]:
    p, lam = params.p, params.lam
    case = b0_case(params)
    if case is B0Case.III:
        a = lam * p**3 - 2.0 * p * p + 2.0
        return p / (2.0 * (1.0 - p * p)) * a / (1.0 - lam * p * a), case
    return p / (1.0 - lam * p * p) ** 2, case


def _abc(params: PoleParams):
    p, lam = params.p, params.lam
    return 2.0 - 2.0 * p * p + lam * p**3, lam * p**3, lam * p * p


def d_profile(params: PoleParams, x):
    """``D(x) = (A - B x^2) / (1 - C x)^2`` with ``x = |omega(p)|``."""
    a, b, c = _abc(params)
    x = np.asarray(x, dtype=float)
    out = (a - b * x * x) / (1.0 - c * x) ** 2
    return out[()] if out.ndim == 0 else out


def d_argmax(params: PoleParams) -> float:
    a, _, _ = _abc(params)
    return min(1.0, a / params.p)


def mobius_parameter(x: float, p: float) -> float:
    """Solve ``(a + p) / (1 + a p) = x`` for ``a``."""
    return (x - p) / (1.0 - x * p)


def b0_case_iii_extremal_a(params: PoleParams) -> float:
    if b0_case(params) is not B0Case.III:
        raise InfeasibleExtremal(f"case {b0_case(params).value} applies; the extremal is omega = -1")
    p = params.p
    a = mobius_parameter(_abc(params)[0] / p, p)
    if not -p < a < 1.0:
        raise InfeasibleExtremal(f"Mobius parameter {a} falls outside (-p, 1)")
    return a


def b0_case_iii_extremal(params: PoleParams) -> NegatedMobius:
    return NegatedMobius(b0_case_iii_extremal_a(params))


def bhowmik_parveen_bound(params: PoleParams, n: int) -> float:
    if n < 0:
        raise ValueError("n must be >= 0")
    p, lam = params.p, params.lam
    return lam**n * p ** (n + 1) / (1.0 - lam * p * p) ** (n + 2)
