"""Randomized extremal probing over random Blaschke products.

Results here are empirical. Reports for proved bounds should never show a
violation; reports for conjectured bounds may, and are never certifications.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Callable, Sequence

import numpy as np

from . import counterexample as cx
from .numerics import golden_section_max
from .schur import Constant, NegatedMobius, SchurFunction, random_blaschke
from .umclass import (
    B0Case,
    PoleParams,
    a2_closed,
    b0_bound,
    b0_case,
    b0_case_iii_extremal,
    bhowmik_parveen_bound,
    build,
    laurent_b0,
    laurent_numeric,
    residue,
    residue_modulus_range,
)

BOUND_TOL = 1e-9
MAX_DEGREE = 5
A3_RANDOM_SAMPLES = 1000


@dataclass(frozen=True)
class ProbeReport:
    params: PoleParams
    samples: int
    quantity: str
    observed_max: float
    theoretical: float
    violated: bool
    witness: str
    seed: int
    proved: bool
    observed_min: float | None = None
    theoretical_min: float | None = None
    case: str | None = None
    certified: bool = False

    def as_dict(self) -> dict:
        d = asdict(self)
        d["params"] = {"p": self.params.p, "lam": self.params.lam}
        return d


def sample_omega(seed: int, index: int) -> SchurFunction:
    """The ``index``-th member of the random pool; independent of evaluation order."""
    rng = np.random.default_rng([seed, index])
    degree = int(rng.integers(0, MAX_DEGREE + 1))
    return random_blaschke(degree, [seed, index, degree])


def named_extremals(params: PoleParams) -> list[SchurFunction]:
    pool: list[SchurFunction] = [Constant(-1.0)]
    if b0_case(params) is B0Case.III:
        pool.append(b0_case_iii_extremal(params))
    return pool


def _pool(params, samples, seed, pool):
    if pool is not None:
        return list(pool)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if seed < 0:
        raise ValueError("seed must be nonnegative")
    return [sample_omega(seed, i) for i in range(samples)] + named_extremals(params)


def _argmax(pool, fn: Callable[[SchurFunction], float]):
    vals = np.array([fn(w) for w in pool])
    return vals, int(np.argmax(vals))


def probe_proved_bounds(params: PoleParams, samples: int, seed: int,
                        pool: Sequence[SchurFunction] | None = None,
                        tol: float = BOUND_TOL) -> list[ProbeReport]:
    """Maxima of |a_2|, |b_{-1}| and |b_0| against their proved bounds."""
    omegas = _pool(params, samples, seed, pool)
    n = len(omegas)
    p, lam = params.p, params.lam
    reports = []

    a2, i = _argmax(omegas, lambda w: abs(a2_closed(params, w)))
    hi = (1.0 + lam * p * p) / p
    reports.append(ProbeReport(params, n, "a2", float(a2[i]), hi, bool(a2[i] > hi + tol),
                               omegas[i].to_spec(), seed, proved=True))

    res, i = _argmax(omegas, lambda w: abs(residue(params, w)))
    rng = residue_modulus_range(params)
    lo_obs = float(res.min())
    bad = res[i] > rng.hi + tol or lo_obs < rng.lo - tol
    reports.append(ProbeReport(params, n, "residue", float(res[i]), rng.hi, bool(bad),
                               omegas[i].to_spec(), seed, proved=True,
                               observed_min=lo_obs, theoretical_min=rng.lo))

    b0, i = _argmax(omegas, lambda w: abs(laurent_b0(params, w)))
    bound, case = b0_bound(params)
    reports.append(ProbeReport(params, n, "b0", float(b0[i]), bound,
                               bool(b0[i] > bound + tol), omegas[i].to_spec(), seed, proved=True,
                               case=case.value))
    return reports


def _a3(params: PoleParams, omega: SchurFunction) -> float:
    return abs(build(params, omega, 4).taylor_coefficient(3))


def probe_a3(params: PoleParams, grid_size: int = 1000, seed: int = 0,
             samples: int = A3_RANDOM_SAMPLES) -> ProbeReport:
    """Largest |a_3| over the Mobius family and random Blaschke products.

    The best Mobius grid point is refined by golden section between its
    neighbours. A violation here is empirical evidence only.
    """
    if grid_size < 10:
        raise ValueError("grid_size must be >= 10")
    grid = np.arange(1, grid_size + 1) / (grid_size + 1)
    mob = [NegatedMobius(a) for a in grid]
    vals, i = _argmax(mob, lambda w: _a3(params, w))
    lo = grid[i - 1] if i > 0 else 0.0
    hi = grid[i + 1] if i + 1 < grid_size else 1.0 - 1e-9
    a_best = golden_section_max(lambda a: _a3(params, NegatedMobius(a)), lo, hi, 1e-12)
    best_val, best = float(vals[i]), mob[i]
    refined = _a3(params, NegatedMobius(a_best))
    if refined > best_val:
        best_val, best = refined, NegatedMobius(a_best)

    rand = [sample_omega(seed, k) for k in range(samples)]
    if rand:
        rvals, j = _argmax(rand, lambda w: _a3(params, w))
        if rvals[j] > best_val:
            best_val, best = float(rvals[j]), rand[j]

    bound = cx.conjectured_bound_n3(params.p, params.lam)
    return ProbeReport(params, grid_size + samples + 1, "a3", best_val, bound,
                       bool(best_val > bound), best.to_spec(), seed, proved=False)


def probe_bn(params: PoleParams, n: int, samples: int, seed: int,
             pool: Sequence[SchurFunction] | None = None, tol: float = BOUND_TOL) -> ProbeReport:
    """Largest |b_n| against the conjectured ``lambda^n p^(n+1) / (1 - lambda p^2)^(n+2)``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    omegas = _pool(params, samples, seed, pool)
    if n == 0:
        fn = lambda w: abs(laurent_b0(params, w))
    else:
        fn = lambda w: abs(laurent_numeric(build(params, w, 4), n))
    vals, i = _argmax(omegas, fn)
    conj = bhowmik_parveen_bound(params, n)
    return ProbeReport(params, len(omegas), f"bn({n})", float(vals[i]), conj,
                       bool(vals[i] > conj + tol), omegas[i].to_spec(), seed, proved=False)
