import math

import numpy as np
import pytest

from umcheck import counterexample as cx
from umcheck.errors import DegenerateDenominator, InvalidRegime, NoSignChange, OutsideWindow
from umcheck.schur import NegatedMobius
from umcheck.umclass import PoleParams, build

# mpmath root of 4 ln(1+p) - 3p
P0_REF = 0.733600988878758118


def test_g_examples():
    assert abs(cx.g(1e-12)) < 1e-11
    assert cx.g(1.0) == pytest.approx(-0.227411277760218762, abs=1e-15)
    assert cx.g(1 / 3) == pytest.approx(0.150728289807123710, abs=1e-15)


def test_find_p0():
    p0 = cx.find_p0(1e-10)
    assert abs(p0 - 0.7336) < 5e-4
    assert abs(p0 - P0_REF) < 1e-9
    assert abs(cx.g(cx.find_p0())) < 1e-9
    assert cx.g(p0 - 0.01) > 0 > cx.g(p0 + 0.01)


def test_g_sign_structure():
    p0 = cx.find_p0()
    for p in np.linspace(1e-3, 1.0, 1000):
        if abs(p - p0) < 1e-9:
            continue
        assert (cx.g(p) > 0) == (p < p0)


def test_v_examples():
    assert cx.v(0.7, 0.0) == pytest.approx(0.245, abs=1e-15)
    assert cx.v(0.7, 1.0) == pytest.approx(0.7, abs=1e-15)
    assert abs(cx.v(0.8, 0.5) - 0.590583290136361250) < 1e-12


@pytest.mark.parametrize("a", [0.0, 1e-6, 1e-4, 0.03, 0.05, 0.2, 0.6, 0.99, 1.0])
def test_v_matches_quadrature(a):
    from umcheck.numerics import gauss_legendre
    for p in (0.2, 0.75, 0.95):
        quad = gauss_legendre(lambda t: (a + t) / (1 + a * t), 0.0, p)
        assert abs(cx.v(p, a) - quad) < 1e-13


def test_v_prime_examples():
    p = 0.8
    assert cx.v_prime(p, 0) == pytest.approx(p - p**3 / 3, abs=1e-15)
    assert cx.v_prime(p, 1) == pytest.approx(2 * math.log1p(p) - p, abs=1e-15)
    h = 1e-6
    for a in (0.1, 0.5, 0.9):
        fd = (cx.v(p, a + h) - cx.v(p, a - h)) / (2 * h)
        assert abs(cx.v_prime(p, a) - fd) < 1e-6
        assert cx.v_prime(p, a) > 0


def test_w_examples():
    for p in (0.3, 0.8, 0.95):
        assert cx.w(p, 0) == pytest.approx(p, abs=1e-15)
        assert cx.w(p, 1) == pytest.approx(1, abs=1e-15)
    assert cx.w_prime(0.8, 0) == pytest.approx(0.573333333333333333, abs=1e-14)
    assert cx.w_prime(0.8, 1) == pytest.approx(-0.0610666754894048357, abs=1e-14)


def test_w_second_negative_and_consistent():
    for p in np.linspace(0.05, 0.95, 10):
        for a in np.linspace(0.0, 1.0, 10):
            assert cx.w_second(p, a) < 0
    h = 1e-5
    fd = (cx.w_prime(0.8, 0.5 + h) - cx.w_prime(0.8, 0.5 - h)) / (2 * h)
    assert abs(cx.w_second(0.8, 0.5) - fd) < 1e-7


def test_v_increasing():
    for p in (0.3, 0.8, 0.95):
        vals = [cx.v(p, a) for a in np.linspace(0, 1, 200)]
        assert np.all(np.diff(vals) > 0)


def test_find_ap():
    p = 0.8
    ap = cx.find_ap(p)
    assert abs(ap - 0.846308973526534625) < 1e-10
    assert abs(cx.w_prime(p, ap)) < 1e-10
    assert cx.w(p, ap) > max(p, 1)
    assert cx.w_prime(p, ap - 1e-6) > 0 > cx.w_prime(p, ap + 1e-6)
    with pytest.raises(NoSignChange):
        cx.find_ap(0.5)


def test_w_unimodal():
    p = 0.9
    ap = cx.find_ap(p)
    left = [cx.w(p, a) for a in np.linspace(0, ap, 100)]
    right = [cx.w(p, a) for a in np.linspace(ap, 1, 100)]
    assert np.all(np.diff(left) > 0) and np.all(np.diff(right) < 0)


def test_find_a0():
    p = 0.8
    a0 = cx.find_a0(p)
    assert abs(a0 - 0.699214783154162789) < 1e-10
    assert abs(cx.w(p, a0) - 1) < 1e-10
    assert cx.w(p, a0 + 0.01) > 1
    assert abs(cx.L(p, a0)) < 1e-8
    with pytest.raises(NoSignChange):
        cx.find_a0(0.5)


def test_L():
    p = 0.8
    a0 = cx.find_a0(p)
    assert cx.L(p, a0 - 1e-3) < 0
    assert cx.L(p, 1 - 1e-7) == pytest.approx(cx.lambda_limit(p), abs=1e-6)
    assert all(cx.L(p, a) > 0 for a in np.linspace(a0 + 1e-6, 1 - 1e-6, 50))
    with pytest.raises(DegenerateDenominator):
        cx.L(p, 1.0)


def test_lambda_limit():
    assert cx.lambda_limit(0.8) == pytest.approx(0.101622424043719789, abs=1e-14)
    assert cx.lambda_limit(0.85) == pytest.approx(0.162393589455927636, abs=1e-14)
    assert 0 < cx.lambda_limit(cx.p0() + 1e-9) < 1e-8
    with pytest.raises(InvalidRegime):
        cx.lambda_limit(0.7)


def test_a3_closed():
    for p, lam in ((0.8, 0.3), (0.5, 0.5)):
        assert cx.a3_closed(p, lam, 1.0) == pytest.approx(cx.conjectured_bound_n3(p, lam), abs=1e-14)
        assert cx.a3_closed(p, 0.0, 0.4) == pytest.approx(1 / p**2)
    assert abs(cx.a3_closed(0.8, 0.05, 0.9) - 1.61416000697532296) < 1e-13
    u = build(PoleParams(0.8, 0.05), NegatedMobius(0.9), 8)
    assert abs(u.f_series[3] - cx.a3_closed(0.8, 0.05, 0.9)) < 1e-10


def test_conjectured_bound():
    assert cx.conjectured_bound_n3(0.5, 0.5) == 4.5625
    assert cx.conjectured_bound_n3(0.6, 0) == pytest.approx(1 / 0.36)


def test_equivalence_f4_f5(rng):
    p0 = cx.p0()
    disagreements = 0
    for _ in range(1000):
        p = rng.uniform(p0 + 1e-6, 1 - 1e-6)
        lam = rng.uniform(0, 1)
        a = rng.uniform(0, 1)
        diff = cx.a3_closed(p, lam, a) - cx.conjectured_bound_n3(p, lam)
        gap = cx.L(p, a) - lam
        if abs(diff) < 1e-12 or abs(gap) < 1e-12:
            continue
        disagreements += (diff > 0) != (gap > 0)
    assert disagreements == 0


def test_quadrature_self_check():
    assert cx.quadrature_self_check() < 1e-12


def test_certify_example():
    rec = cx.certify(0.8, 0.05)
    assert rec.margin > 0
    assert rec.a3_closed > (1 + 0.05 * 0.64 + 0.0025 * 0.4096) / 0.64
    assert abs(rec.a3_series - rec.a3_closed) <= 1e-9
    assert rec.a0 < rec.a < 1 and 0 < rec.lam < rec.window_hi
    assert rec.L_at_a > rec.lam
    assert rec.membership_margin > 0


def test_certify_picks_best_margin():
    p, lam = 0.9, 0.1
    rec = cx.certify(p, lam)
    grid = np.linspace(rec.a0, 1 - 1e-9, 2001)
    best = max(cx.a3_closed(p, lam, a) for a in grid) - rec.bound
    assert rec.margin >= best - 1e-12


def test_certify_refusals():
    with pytest.raises(OutsideWindow):
        cx.certify(0.8, 0.2)
    with pytest.raises(OutsideWindow):
        cx.certify(0.8, cx.lambda_limit(0.8))
    with pytest.raises(InvalidRegime):
        cx.certify(0.5, 0.05)
    with pytest.raises(InvalidRegime):
        cx.certify(cx.p0(), 0.01)


def test_scan():
    rows = cx.scan([0.75, 0.8, 0.9], [0.01, 0.05])
    assert cx.lambda_limit(0.75) > 0.01
    assert len(rows) == 6
    # lambda_limit(0.75) ~ 0.0278 puts (0.75, 0.05) outside the window
    status = {(r["p"], r["lam"]): r["status"] for r in rows}
    assert status[(0.75, 0.05)] == cx.OUTSIDE_WINDOW
    assert all(s == cx.CERTIFIED for k, s in status.items() if k != (0.75, 0.05))
    assert [r["status"] for r in cx.scan([0.5], [0.1, 0.3])] == [cx.INVALID_REGIME] * 2
    assert cx.scan([], []) == []
    assert cx.scan([0.8], [0.05])[0]["record"] == cx.scan([0.8], [0.05])[0]["record"]


def test_scan_consistency_and_membership():
    for row in cx.scan(np.linspace(0.74, 0.98, 7), [0.005, 0.02]):
        if row["status"] != cx.CERTIFIED:
            continue
        rec = row["record"]
        assert abs(rec.a3_series - rec.a3_closed) <= 1e-9
        assert rec.membership_margin > 0
