"""Certified violations of the conjectured bound on |a_3|.

For ``a`` in [0, 1] the member with omega(z) = -(a + z)/(1 + a z) has

    a_3 = (1 + lambda (2 p v - p^2 a) + lambda^2 p^2 v^2) / p^2,
    v = v_p(a) = integral_0^p (a + t)/(1 + a t) dt,

and ``a_3`` exceeds ``(1 + lambda p^2 + lambda^2 p^4) / p^2`` exactly when
``lambda < L_p(a) = (w_p(a) - 1) / (p^2 - v^2)`` with ``w_p(a) = 2 v / p - a``.
For ``p`` above the root ``p0`` of ``4 ln(1 + p) - 3 p`` the window
``0 < lambda < lambda_limit(p)`` is non-empty.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from functools import lru_cache

from . import series as ser
from .errors import (
    CertificationFailed,
    DegenerateDenominator,
    InvalidRegime,
    OutsideWindow,
)
from .numerics import BISECT_TOL, bisect, gauss_legendre, golden_section_max
from .schur import NegatedMobius, mobius_integral
from .umclass import PoleParams, build, membership_margin

P_GUARD = 1e-6
WINDOW_GUARD = 1e-12
A_CAP = 1.0 - 1e-9
GOLDEN_TOL = 1e-10
SERIES_TOL = 1e-9


def g(p: float) -> float:
    return 4.0 * math.log1p(p) - 3.0 * p


def find_p0(tol: float = BISECT_TOL) -> float:
    # g(1/3) > 0 > g(1)
    return bisect(g, 1.0 / 3.0, 1.0, tol)


@lru_cache(maxsize=None)
def p0() -> float:
    return find_p0()


def v(p: float, a: float) -> float:
    return float(mobius_integral(a, p).real)


def v_prime(p: float, a: float) -> float:
    return float(gauss_legendre(lambda t: (1.0 - t * t) / (1.0 + a * t) ** 2, 0.0, p))


def w(p: float, a: float) -> float:
    return 2.0 * v(p, a) / p - a


def w_prime(p: float, a: float) -> float:
    return 2.0 * v_prime(p, a) / p - 1.0


def w_second(p: float, a: float) -> float:
    return -4.0 / p * float(gauss_legendre(lambda t: t * (1.0 - t * t) / (1.0 + a * t) ** 3, 0.0, p))


def find_ap(p: float, tol: float = BISECT_TOL) -> float:
    """Unique critical point of ``w_p`` in (0, 1); needs ``p > p0``."""
    return bisect(lambda a: w_prime(p, a), 0.0, 1.0, tol)


def find_a0(p: float, tol: float = BISECT_TOL) -> float:
    """Unique ``a`` in (0, a_p) with ``w_p(a) = 1``."""
    ap = find_ap(p, tol)
    return bisect(lambda a: w(p, a) - 1.0, 0.0, ap, tol)


def L(p: float, a: float) -> float:
    vv = v(p, a)
    den = p * p - vv * vv
    if abs(den) < 1e-14:
        raise DegenerateDenominator(f"p^2 - v^2 = {den:.3g} at a = {a}; use lambda_limit")
    return (w(p, a) - 1.0) / den


def lambda_limit(p: float) -> float:
    """Limit of ``L_p(a)`` as ``a -> 1``; the upper end of the proved window."""
    if p <= p0():
        raise InvalidRegime(f"p = {p} does not exceed p0 = {p0():.10f}; the window is empty")
    lg = math.log1p(p)
    return (4.0 / p * lg - 3.0) / (-4.0 * p * lg + 2.0 * p * p)


def a3_closed(p: float, lam: float, a: float) -> float:
    vv = v(p, a)
    return (1.0 + lam * (2.0 * p * vv - p * p * a) + lam * lam * p * p * vv * vv) / (p * p)


def conjectured_bound_n3(p: float, lam: float) -> float:
    return (1.0 + lam * p * p + lam * lam * p**4) / (p * p)


@lru_cache(maxsize=None)
def quadrature_self_check() -> float:
    """Largest gap between the closed form of ``v`` and 64-node quadrature."""
    worst = 0.0
    for p in (0.3, 0.75, 0.95):
        for a in (0.0, 1e-3, 0.3, 0.9, 1.0):
            quad = gauss_legendre(lambda t: (a + t) / (1.0 + a * t), 0.0, p)
            worst = max(worst, abs(float(quad) - v(p, a)))
    if worst > 1e-12:
        raise RuntimeError(f"closed form of v disagrees with quadrature by {worst:.3g}")
    return worst


@dataclass(frozen=True)
class CertifiedCounterexample:
    p: float
    lam: float
    a: float
    a3_series: float
    a3_closed: float
    bound: float
    margin: float
    window_hi: float
    a0: float
    L_at_a: float
    membership_margin: float

    def as_dict(self) -> dict:
        return asdict(self)


def certify(p: float, lam: float, order: int = ser.DEFAULT_ORDER) -> CertifiedCounterexample:
    if not P_GUARD < p < 1.0 - P_GUARD or p <= p0() + P_GUARD:
        raise InvalidRegime(f"p = {p} is outside (p0 + {P_GUARD}, 1 - {P_GUARD}); p0 = {p0():.10f}")
    if not lam > 0.0:
        raise ValueError("lambda must be positive")
    hi = lambda_limit(p)
    if lam >= hi - WINDOW_GUARD:
        raise OutsideWindow(f"lambda = {lam} is not below lambda_limit({p}) = {hi:.17g}")
    quadrature_self_check()

    bound = conjectured_bound_n3(p, lam)
    a0 = find_a0(p)
    # L_p increases towards its limit at a = 1, where the excess over the bound
    # shrinks to zero; maximize the excess itself.
    a = golden_section_max(lambda s: a3_closed(p, lam, s) - bound, a0, A_CAP, GOLDEN_TOL)
    closed = a3_closed(p, lam, a)
    la = L(p, a)
    if (closed > bound) != (lam < la):
        raise CertificationFailed(f"a3 > bound is {closed > bound} but lambda < L is {lam < la} at a = {a}")
    if not closed > bound:
        raise CertificationFailed(f"no violation found: a3 = {closed!r}, bound = {bound!r}")

    u = build(PoleParams(p, lam), NegatedMobius(a), order)
    a3s = u.taylor_coefficient(3)
    if abs(a3s.imag) > SERIES_TOL or abs(a3s.real - closed) > SERIES_TOL:
        raise CertificationFailed(f"series a3 = {a3s} disagrees with closed form {closed!r}")
    mm = membership_margin(u)
    if not mm > 0.0:
        raise CertificationFailed(f"membership margin {mm} is not positive")
    return CertifiedCounterexample(
        p=p, lam=lam, a=a, a3_series=a3s.real, a3_closed=closed, bound=bound,
        margin=closed - bound, window_hi=hi, a0=a0, L_at_a=la, membership_margin=mm,
    )


CERTIFIED = "certified"
OUTSIDE_WINDOW = "outside-window"
INVALID_REGIME = "invalid-regime"
FAILED = "verification-failed"


def scan(p_grid, lambda_grid, order: int = ser.DEFAULT_ORDER) -> list[dict]:
    """Run :func:`certify` on every cell of ``p_grid x lambda_grid`` (row-major)."""
    rows = []
    for p in p_grid:
        for lam in lambda_grid:
            row = {"p": float(p), "lam": float(lam), "status": None, "record": None}
            try:
                row["record"] = certify(float(p), float(lam), order)
                row["status"] = CERTIFIED
            except InvalidRegime:
                row["status"] = INVALID_REGIME
            except OutsideWindow:
                row["status"] = OUTSIDE_WINDOW
            except CertificationFailed:
                row["status"] = FAILED
            rows.append(row)
    return rows
