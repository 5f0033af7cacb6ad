
import mpmath
import numpy as np
import pytest

from umcheck import schur
from umcheck.errors import OutsideDisk
from umcheck.schur import (
    BlaschkeProduct,
    Constant,
    NegatedMobius,
    TaylorSchur,
    random_blaschke,
    schwarz_pick_margin,
)

from conftest import family


def random_disk_points(rng, n, radius=0.99):
    r = radius * np.sqrt(rng.uniform(0, 1, n))
    return r * np.exp(2j * np.pi * rng.uniform(0, 1, n))


def test_eval_examples():
    assert NegatedMobius(0).eval(0.5) == pytest.approx(-0.5)
    assert NegatedMobius(0.3).eval(0) == pytest.approx(-0.3)
    assert Constant(-1).eval(0.2 + 0.7j) == -1


def test_outside_disk_raises():
    for w in family():
        with pytest.raises(OutsideDisk):
            w.eval(1.0)
        with pytest.raises(OutsideDisk):
            w.deriv(0.6 + 0.8j)
        with pytest.raises(OutsideDisk):
            w.antiderivative_at(-1.2)


def test_deriv_examples():
    assert NegatedMobius(0).deriv(0.4j) == pytest.approx(-1)
    assert Constant(0.5).deriv(0.3) == 0


@pytest.mark.parametrize("w", family(), ids=lambda w: w.to_spec()[:20])
def test_deriv_matches_finite_difference(w):
    z, h = 0.3 + 0.2j, 1e-6
    fd = (w.eval(z + h) - w.eval(z - h)) / (2 * h)
    assert abs(w.deriv(z) - fd) < 1e-6


def test_blaschke_deriv_at_a_zero():
    w = BlaschkeProduct(0.4, (0.5, -0.2j, 0.5))
    for z in (0.5, -0.2j):
        h = 1e-6
        fd = (w.eval(z + h) - w.eval(z - h)) / (2 * h)
        assert abs(w.deriv(z) - fd) < 1e-6


def test_taylor_examples():
    np.testing.assert_allclose(NegatedMobius(0).taylor(3).coeffs, [0, -1, 0, 0])
    np.testing.assert_allclose(Constant(0.2j).taylor(2).coeffs, [0.2j, 0, 0])
    w = NegatedMobius(0.5)
    assert abs(w.taylor(40)(0.3) - w.eval(0.3)) < 1e-10


@pytest.mark.parametrize("w", family(), ids=lambda w: w.to_spec()[:20])
def test_taylor_agrees_with_eval(w, rng):
    n = 30
    s = w.taylor(n)
    for z in random_disk_points(rng, 20, 0.5):
        assert abs(s(z) - w.eval(z)) <= 2.0**-n * 10


def test_antiderivative_examples():
    assert Constant(-1).antiderivative_at(0.5) == pytest.approx(-0.5)
    assert NegatedMobius(0).antiderivative_at(0.6) == pytest.approx(-0.18, abs=1e-15)
    # mpmath reference: -0.499686222648985718...
    assert abs(NegatedMobius(0.5).antiderivative_at(0.7) - (-0.499686222648985718)) < 1e-12


def test_negmob_antiderivative_matches_quadrature():
    x, wts = np.polynomial.legendre.leggauss(64)
    t = 0.35 * (x + 1)
    quad = 0.35 * np.dot(wts, -(0.5 + t) / (1 + 0.5 * t))
    assert abs(NegatedMobius(0.5).antiderivative_at(0.7) - quad) < 1e-12


@pytest.mark.parametrize("a", [1e-7, 1e-4, 1e-3, 0.0499999, 0.05, 0.3, -0.02, -0.05, -0.9, 0.99])
def test_negmob_antiderivative_vs_mpmath(a):
    mpmath.mp.dps = 30
    for z in (0.9, 0.5 + 0.3j, -0.7, 0.95j):
        ref = complex(-mpmath.quad(lambda t: (a + t) / (1 + a * t), [0, z]))
        assert abs(NegatedMobius(a).antiderivative_at(z) - ref) < 1e-13


def test_small_a_branches_agree_at_crossover():
    lo = schur.SMALL_A * (1 - 1e-12)
    z = 0.9 + 0.1j
    assert abs(NegatedMobius(lo).antiderivative_at(z) - NegatedMobius(schur.SMALL_A).antiderivative_at(z)) < 1e-12


@pytest.mark.parametrize("w", family(), ids=lambda w: w.to_spec()[:20])
def test_antiderivative_differentiates_back(w):
    h = 1e-6
    for z in (0.3 + 0.2j, -0.6, 0.1j, 0.85):
        fd = (w.antiderivative_at(z + h) - w.antiderivative_at(z - h)) / (2 * h)
        assert abs(fd - w.eval(z)) < 1e-6
    assert w.antiderivative_at(0) == 0


@pytest.mark.parametrize("w", family(), ids=lambda w: w.to_spec()[:20])
def test_bounded_on_circle(w):
    assert w.max_modulus() <= 1 + 1e-9


def test_schwarz_pick_examples(rng):
    pts = random_disk_points(rng, 100, 0.95)
    assert abs(schwarz_pick_margin(NegatedMobius(0.4), pts)) < 1e-10
    assert schwarz_pick_margin(Constant(0.5), [0]) == pytest.approx(0.75)
    assert schwarz_pick_margin(random_blaschke(3, 42), pts) >= -1e-10


@pytest.mark.parametrize("seed", range(20))
def test_schwarz_pick_random_members(seed, rng):
    pts = random_disk_points(rng, 100, 0.95)
    for deg in range(6):
        assert schwarz_pick_margin(random_blaschke(deg, seed), pts) >= -1e-10


def test_random_blaschke():
    c = random_blaschke(0, 7)
    assert isinstance(c, Constant) and abs(abs(c.c) - 1) < 1e-15
    assert random_blaschke(4, 11) == random_blaschke(4, 11)
    b = random_blaschke(5, 3)
    assert len(b.zeros) == 5 and max(abs(z) for z in b.zeros) <= 0.95


def test_variant_invariants():
    with pytest.raises(ValueError):
        Constant(1.01)
    with pytest.raises(ValueError):
        NegatedMobius(1.0)
    with pytest.raises(ValueError):
        BlaschkeProduct(0.0, (1.0,))
    with pytest.raises(ValueError):
        TaylorSchur((0.9, 0.9))  # |1 + ...| reaches 1.8


def test_taylor_schur_certification():
    assert TaylorSchur((0.5, 0.5)).certified
    assert TaylorSchur((0.6j, 0, 0.4j)).certification == "sum-bound"


def test_sampled_only_is_flagged():
    # 0.55 - 0.55 z^2 peaks at 1.1 on the circle: not a Schur function
    with pytest.raises(ValueError):
        TaylorSchur((0.55, 0, -0.55))
    # coefficient sum 1.1, but the maximum modulus on the circle is about 0.858
    w = TaylorSchur((0.5, 0.3, -0.3))
    assert w.certification == "sampled-only" and not w.certified
