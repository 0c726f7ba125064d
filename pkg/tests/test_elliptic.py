import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from spiralflow.elliptic import (
    DomainError,
    carlson_rf,
    complete_E,
    complete_K,
    complete_KE,
    incomplete_F,
    jacobi,
)

# golden values from 30-digit quadrature (tests/oracles.py)
K_INV_SQRT2 = 1.85407467730137191843
E_INV_SQRT2 = 1.35064388104767550252
F_08_06 = 0.972720209482903809609
JACOBI_05_07 = (0.470923573698522852078, 0.882174012162573238350, 0.944104434895926033735)

RNG = np.random.default_rng(12345)


def legendre_defect(alpha):
    comp = math.sqrt(1.0 - alpha * alpha)
    K, E = complete_K(alpha), complete_E(alpha)
    Kc, Ec = complete_K(comp), complete_E(comp)
    return abs(E * Kc + Ec * K - K * Kc - math.pi / 2)


# -- complete integrals -------------------------------------------------------

def test_K_E_at_zero():
    assert complete_K(0.0) == pytest.approx(math.pi / 2, abs=1e-15)
    assert complete_E(0.0) == pytest.approx(math.pi / 2, abs=1e-15)


def test_E_at_one():
    assert complete_E(1.0) == 1.0


def test_K_E_golden():
    alpha = 1.0 / math.sqrt(2.0)
    assert abs(complete_K(alpha) - K_INV_SQRT2) < 1e-12
    assert abs(complete_E(alpha) - E_INV_SQRT2) < 1e-12


def test_golden_constants_match_oracle():
    alpha = 1 / oracles.mp.sqrt(2)
    assert abs(float(oracles.K(alpha)) - K_INV_SQRT2) < 1e-15
    assert abs(float(oracles.E(alpha)) - E_INV_SQRT2) < 1e-15


@pytest.mark.parametrize("alpha", [0.01, 0.3, 0.5, 0.8, 0.95, 0.999])
def test_K_E_against_quadrature(alpha):
    assert complete_K(alpha) == pytest.approx(float(oracles.K(alpha)), rel=1e-13)
    assert complete_E(alpha) == pytest.approx(float(oracles.E(alpha)), rel=1e-13)


def test_K_near_one_is_large_and_finite():
    alpha = 0.999999
    K = complete_K(alpha)
    assert math.isfinite(K) and K > 7
    # the oracle takes the exact binary value of alpha
    assert K == pytest.approx(float(oracles.K_near_one(alpha)), rel=1e-13)


def test_complete_vectorized():
    alpha = np.array([0.0, 0.2, 0.7, 0.99])
    K, E = complete_KE(alpha)
    assert K.shape == (4,)
    for i, x in enumerate(alpha):
        assert K[i] == complete_K(float(x))
        assert E[i] == complete_E(float(x))


def test_small_modulus_branch_is_continuous():
    for alpha in (1e-9, 1e-8, 1.1e-8, 1e-6):
        assert complete_K(alpha) == pytest.approx(math.pi / 2 * (1 + alpha**2 / 4), rel=1e-15)
        assert complete_E(alpha) == pytest.approx(math.pi / 2 * (1 - alpha**2 / 4), rel=1e-15)


@pytest.mark.parametrize("alpha", [-0.1, 1.0, 1.5, float("nan"), float("inf")])
def test_K_domain(alpha):
    with pytest.raises(DomainError):
        complete_K(alpha)


@pytest.mark.parametrize("alpha", [-0.1, 1.0000001, float("nan")])
def test_E_domain(alpha):
    with pytest.raises(DomainError):
        complete_E(alpha)


def test_monotonicity():
    alpha = np.linspace(0.0, 0.9999, 400)
    K, E = complete_KE(alpha)
    assert np.all(np.diff(K) > 0)
    assert np.all(np.diff(E) < 0)
    assert np.all(K >= math.pi / 2)
    assert np.all((E <= math.pi / 2) & (E >= 1.0))


def test_legendre_relation():
    for alpha in np.linspace(0.02, 0.98, 20):
        assert legendre_defect(float(alpha)) < 1e-12


# -- incomplete integral ------------------------------------------------------

def test_F_alpha_zero():
    assert incomplete_F(0.5, 0.0) == pytest.approx(math.pi / 6, abs=1e-15)


def test_F_complete():
    assert incomplete_F(1.0, 0.3) == pytest.approx(complete_K(0.3), rel=1e-14)


def test_F_golden():
    assert abs(incomplete_F(0.8, 0.6) - F_08_06) < 1e-14
    assert abs(float(oracles.F("0.8", "0.6")) - F_08_06) < 1e-15


@pytest.mark.parametrize("x,alpha", [(0.1, 0.9), (0.5, 0.5), (0.99, 0.99), (0.999999, 0.3)])
def test_F_against_quadrature(x, alpha):
    assert incomplete_F(x, alpha) == pytest.approx(float(oracles.F(x, alpha)), rel=1e-13)


def test_F_monotone_in_x():
    x = np.linspace(0, 1, 300)
    values = incomplete_F(x, 0.9)
    assert np.all(np.diff(values) > 0)


@pytest.mark.parametrize("x", [-0.01, 1.01, float("nan")])
def test_F_domain(x):
    with pytest.raises(DomainError):
        incomplete_F(x, 0.5)


def test_carlson_rf_symmetric_point():
    assert carlson_rf(2.0, 2.0, 2.0) == pytest.approx(1 / math.sqrt(2.0), rel=1e-15)
    # R_F(0, 1, 1) = pi / 2
    assert carlson_rf(0.0, 1.0, 1.0) == pytest.approx(math.pi / 2, rel=1e-14)


# -- Jacobi functions ---------------------------------------------------------

def test_jacobi_alpha_zero():
    sn, cn, dn = jacobi(math.pi / 6, 0.0)
    assert sn == pytest.approx(0.5, abs=1e-15)
    assert cn == pytest.approx(math.sqrt(3) / 2, abs=1e-15)
    assert dn == 1.0


def test_jacobi_quarter_period():
    alpha = 0.4
    sn, cn, dn = jacobi(complete_K(alpha), alpha)
    assert sn == pytest.approx(1.0, abs=1e-14)
    assert cn == pytest.approx(0.0, abs=1e-7)
    assert dn == pytest.approx(math.sqrt(1 - alpha**2), abs=1e-14)


def test_jacobi_golden():
    triple = jacobi(0.5, 0.7)
    for got, want in zip(triple, JACOBI_05_07):
        assert abs(got - want) < 1e-14


def test_jacobi_golden_matches_newton_oracle():
    s, c, d = oracles.sn("0.5", "0.7")
    for got, want in zip((s, c, d), JACOBI_05_07):
        assert abs(float(got) - want) < 1e-15


def test_round_trip():
    alpha = RNG.uniform(0.0, 0.999, 200)
    frac = RNG.uniform(0.0, 1.0, 200)
    worst = 0.0
    for al, f in zip(alpha, frac):
        u = f * complete_K(al)
        sn = jacobi(u, al).sn
        worst = max(worst, abs(incomplete_F(min(sn, 1.0), al) - u))
    assert worst < 1e-10


def test_triple_invariants():
    u = RNG.uniform(-50.0, 50.0, 500)
    alpha = RNG.uniform(0.0, 0.9999, 500)
    worst_sc = worst_dn = 0.0
    for x, al in zip(u, alpha):
        sn, cn, dn = jacobi(x, al)
        worst_sc = max(worst_sc, abs(sn * sn + cn * cn - 1))
        worst_dn = max(worst_dn, abs(dn * dn + al * al * sn * sn - 1))
    assert worst_sc < 1e-12
    assert worst_dn < 1e-12


def test_jacobi_symmetries():
    alpha = 0.85
    K = complete_K(alpha)
    u = np.linspace(-3 * K, 3 * K, 101)
    sn, cn, dn = jacobi(u, alpha)
    sn_neg = jacobi(-u, alpha).sn
    assert np.max(np.abs(sn + sn_neg)) < 1e-14
    assert np.max(np.abs(jacobi(2 * K - u, alpha).sn - sn)) < 1e-13
    sn4, cn4, dn4 = jacobi(u + 4 * K, alpha)
    assert np.max(np.abs(sn4 - sn)) < 1e-13
    assert np.max(np.abs(cn4 - cn)) < 1e-13
    assert np.max(np.abs(dn4 - dn)) < 1e-13


def test_jacobi_vectorized_matches_scalar():
    u = np.array([0.1, 1.0, 2.5, -4.0])
    sn, cn, dn = jacobi(u, 0.6)
    for i, x in enumerate(u):
        s, c, d = jacobi(float(x), 0.6)
        assert (sn[i], cn[i], dn[i]) == (s, c, d)


def test_jacobi_precomputed_K():
    u = np.linspace(0, 10, 11)
    assert np.array_equal(jacobi(u, 0.3, K=complete_K(0.3)).sn, jacobi(u, 0.3).sn)


@pytest.mark.parametrize("alpha", [0.2, 0.9, 0.999999])
def test_jacobi_derivative(alpha):
    # d sn / du = cn dn
    u = np.linspace(0.1, 3.0, 20)
    h = 1e-6
    fd = (jacobi(u + h, alpha).sn - jacobi(u - h, alpha).sn) / (2 * h)
    _, cn, dn = jacobi(u, alpha)
    assert np.max(np.abs(fd - cn * dn)) < 1e-8


def test_jacobi_domain():
    with pytest.raises(DomainError):
        jacobi(0.5, 1.0)
    with pytest.raises(DomainError):
        jacobi(float("inf"), 0.5)


@settings(max_examples=200, deadline=None)
@given(st.floats(-1e3, 1e3), st.floats(0.0, 0.99999))
def test_property_triple_on_unit_curves(u, alpha):
    sn, cn, dn = jacobi(u, alpha)
    assert abs(sn * sn + cn * cn - 1) < 1e-12
    assert abs(dn * dn + alpha * alpha * sn * sn - 1) < 1e-12
    assert 0 < dn <= 1


@settings(max_examples=200, deadline=None)
@given(st.floats(0.0, 1.0), st.floats(0.0, 0.999))
def test_property_inverse(x, alpha):
    u = incomplete_F(x, alpha)
    assert 0 <= u <= complete_K(alpha) * (1 + 1e-15)
    assert jacobi(u, alpha).sn == pytest.approx(x, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.0, 0.999), st.floats(0.0, 0.999))
def test_property_K_monotone(a1, a2):
    lo, hi = sorted((a1, a2))
    if lo < hi:
        assert complete_K(lo) <= complete_K(hi)
        assert complete_E(lo) >= complete_E(hi)
