import dataclasses
import json
import math

import numpy as np
import pytest

from conftest import SWEEP
from spiralflow.diagnostics import (
    REMAINDER_ORDERS,
    Case,
    VerifyConfig,
    asymptotic_compare,
    asymptotic_predict,
    existence_flux_bound,
    flux_quadrature,
    force_torque,
    stress,
    torque_formula,
    verify,
)
from spiralflow.flowfield import (
    GeneralizedSpiral,
    HamelN0,
    HamelN0A,
    StokesQuadrupole,
    StokesTorque,
)
from spiralflow.profile import SolutionParams, build_profile, flux_bound, solve_modulus

RADII = (0.5, 1.0, 2.0, 4.0)


@pytest.fixture(scope="module")
def spirals(sweep_profiles):
    return [GeneralizedSpiral(p.params, p) for p in sweep_profiles]


def torque_sweep():
    """Five values each of n in 1..3, a and flux, kept when inside the region."""
    out = []
    for n in (1, 2, 3):
        for a in (-1.5, -0.3, 0.0, 0.8, 2.0):
            bound = flux_bound(n, a)
            for gap in (0.05, 1.0, 5.0, 12.0, 25.0):
                out.append(SolutionParams(n, bound - gap, a))
    return out


# -- flux -------------------------------------------------------------------------

def test_flux_hamel():
    assert abs(flux_quadrature(HamelN0(2 * math.pi, 5.0), 3.0) - 2 * math.pi) < 1e-10


def test_flux_small_spiral():
    f = GeneralizedSpiral.build(2, 0.0, 1e-3)
    assert abs(flux_quadrature(f, 1.0)) < 1e-8


def test_flux_radius_independence_example():
    f = GeneralizedSpiral.build(3, -4 * math.pi, 0.7)
    assert abs(flux_quadrature(f, 0.5) - flux_quadrature(f, 4.0)) < 1e-10


def test_flux_sweep(spirals):
    for f in spirals:
        values = [flux_quadrature(f, rad) for rad in RADII]
        assert abs(values[1] - f.params.flux) < 1e-8
        assert np.ptp(values) < 1e-10


def test_flux_other_fields():
    assert flux_quadrature(HamelN0A(-5 * math.pi, 0.3, 1.0), 2.0) == pytest.approx(-5 * math.pi, abs=1e-10)
    assert abs(flux_quadrature(StokesQuadrupole(3.0), 1.0)) < 1e-14
    assert abs(flux_quadrature(StokesTorque(3.0), 1.0)) < 1e-14


def test_flux_rejects_bad_radius():
    with pytest.raises(ValueError):
        flux_quadrature(HamelN0(1.0, 1.0), 0.0)


# -- force and torque -----------------------------------------------------------

def test_stress_is_consistent():
    f = GeneralizedSpiral.build(2, -1.0, 0.6)
    r = np.array([0.7, 1.3, 2.9])
    theta = np.array([0.1, -2.0, 3.0])
    a = stress(f, r, theta, gradient="analytic")
    b = stress(f, r, theta, gradient="fd")
    for x, y in zip(a, b):
        assert np.allclose(x, y, rtol=1e-6, atol=1e-6)
    with pytest.raises(ValueError):
        stress(f, r, theta, gradient="spectral")


def test_force_vanishes(spirals):
    for f in spirals:
        F, _ = force_torque(f, 1.0)
        assert math.hypot(*F) < 1e-8


def test_torque_small_n2():
    eps = 1e-3
    _, M = force_torque(GeneralizedSpiral.build(2, 0.0, eps), 1.0)
    assert M == pytest.approx(16 * math.pi * eps, rel=0.01)


def test_torque_zero_without_spiral(spirals):
    for f in spirals:
        if f.params.a == 0.0:
            assert abs(force_torque(f, 1.0)[1]) < 1e-10
            assert torque_formula(f.profile) == 0.0


def test_torque_formula_n1():
    prof = build_profile(SolutionParams(1, 0.0, math.sqrt(3) + 1e-6))
    assert torque_formula(prof) == pytest.approx(16 * math.pi * math.sqrt(3), rel=0.005)


def test_torque_formula_matches_stress():
    for params in torque_sweep():
        f = GeneralizedSpiral(params, build_profile(params))
        M = force_torque(f, 1.0)[1]
        T = torque_formula(f.profile)
        assert abs(M - T) < 1e-6 * max(1.0, abs(T))


def test_torque_radius_independence(spirals):
    for f in spirals:
        values = [force_torque(f, rad)[1] for rad in RADII]
        assert np.ptp(values) < 1e-8 * max(1.0, abs(values[1]))


def test_torque_of_stokes_torque():
    # the swirl -m/(4 pi r) carries torque m; viscous stress only
    _, M = force_torque(StokesTorque(2.5), 1.3)
    assert M == pytest.approx(2.5, rel=1e-8)


def test_quadrature_convergence(spirals):
    for f in spirals:
        dflux = abs(flux_quadrature(f, 1.0, 1024) - flux_quadrature(f, 1.0, 512))
        M1, M2 = force_torque(f, 1.0, 512)[1], force_torque(f, 1.0, 1024)[1]
        assert dflux < 1e-12 * max(1.0, abs(f.params.flux))
        assert abs(M2 - M1) < 1e-12 * max(1.0, abs(M1))


# -- existence region -----------------------------------------------------------

@pytest.mark.parametrize("n,a,expected", [
    (2, 0.0, 0.0),
    (1, math.sqrt(3), 0.0),
    (1, 0.0, -3 * math.pi),
])
def test_existence_flux_bound(n, a, expected):
    assert existence_flux_bound(n, a) == pytest.approx(expected, abs=1e-14)


def test_existence_bound_parabola():
    a = np.linspace(-3, 3, 61)
    for n in (1, 2, 3, 4):
        values = np.array([existence_flux_bound(n, x) for x in a])
        assert np.allclose(values, math.pi * (n * n * (1 + a * a) - 4), rtol=0, atol=1e-12)


def test_boundary_approach():
    for n, a in ((1, 2.0), (2, 0.3), (3, -1.0)):
        alphas = [solve_modulus(n, existence_flux_bound(n, a) - d, a) for d in (1e-2, 1e-6, 1e-10)]
        assert alphas[0] > alphas[1] > alphas[2] > 0
        assert alphas[2] < 0.01


# -- asymptotics --------------------------------------------------------------------

def test_predict_n2():
    pred = asymptotic_predict(Case.N2, 1e-4)
    assert pred.alpha == pytest.approx((32 / 3) ** 0.25 * 1e-2, rel=1e-15)
    assert pred.alpha == pytest.approx(1.80720e-2, rel=1e-5)
    assert pred.torque == pytest.approx(16 * math.pi * 1e-4, rel=1e-15)
    assert pred.phi1 == -pred.phi2 == pytest.approx(-4 * math.sqrt(6) * 1e-4)


def test_predict_n1():
    pred = asymptotic_predict("n1", 1e-4)
    assert pred.phi3 == 6.0
    assert pred.torque == pytest.approx(16 * math.pi * math.sqrt(3))
    assert pred.params.a == pytest.approx(math.sqrt(3) + 1e-4)


def test_predict_rejects_bad_epsilon():
    with pytest.raises(ValueError):
        asymptotic_predict(Case.N1, 0.0)


def test_compare_n1():
    dev = asymptotic_compare(Case.N1, 1e-6)
    assert max(dev["alpha"], dev["phi1"], dev["phi2"], dev["phi3"]) < 0.05
    assert dev["torque"] < 0.005


def test_compare_n2():
    dev = asymptotic_compare(Case.N2, 1e-4)
    assert dev["alpha"] < 0.05
    assert dev["profile"] < 0.05
    assert dev["torque"] < 0.01


@pytest.mark.parametrize("case,eps", [(Case.N1, 1e-4), (Case.N1, 1e-6), (Case.N2, 1e-3), (Case.N2, 1e-4)])
def test_compare_rates(case, eps):
    # a 100x smaller eps must shrink each deviation at least as fast as its remainder order
    big, small = asymptotic_compare(case, eps), asymptotic_compare(case, eps / 100)
    for key, order in REMAINDER_ORDERS[case].items():
        assert big[key] / small[key] > 0.5 * 100**order, key


def test_compare_rate_n2_alpha():
    big, small = asymptotic_compare(Case.N2, 1e-3), asymptotic_compare(Case.N2, 1e-5)
    # at least the eps^(1/2) ratio; the next series term actually makes it eps
    assert big["alpha"] / small["alpha"] > 5


# -- verify ---------------------------------------------------------------------

def test_verify_spiral_passes():
    rep = verify(GeneralizedSpiral.build(2, 0.0, 0.5))
    assert rep.all_passed, rep.passed
    expected = {"momentum", "momentum_fd", "divergence", "symmetry", "flux", "flux_radius",
                "force", "torque", "torque_radius", "quadrature", "ode", "energy",
                "flux_closed_form"}
    assert set(rep.passed) == expected
    assert rep.seed == VerifyConfig().seed


def test_verify_sweep(spirals):
    cfg = VerifyConfig(samples=60)
    for f in spirals:
        rep = verify(f, cfg)
        assert rep.all_passed, (rep.field, {k: v for k, v in rep.passed.items() if not v})


def test_verify_hamel_a():
    rep = verify(HamelN0A(-5 * math.pi, 0.0, 1.0))
    assert rep.passed["momentum"]
    assert rep.all_passed
    assert "symmetry" not in rep.passed


@pytest.mark.parametrize("field", [HamelN0(1.0, 2.0), StokesTorque(1.0), StokesQuadrupole(1.0)])
def test_verify_reference_fields(field):
    assert verify(field, VerifyConfig(samples=50)).all_passed


def test_verify_corrupted_profile():
    f = GeneralizedSpiral.build(2, 0.0, 0.5)
    phi1, phi2, phi3 = f.profile.roots
    bad_profile = dataclasses.replace(f.profile, roots=(phi1, phi2, phi3 + 1e-3))
    # C and E are recomputed from the perturbed roots, as a careless caller would
    c_const = -(phi1 * phi2 + phi1 * (phi3 + 1e-3) + phi2 * (phi3 + 1e-3)) / 3
    bad_profile = dataclasses.replace(bad_profile, c_const=c_const)
    rep = verify(GeneralizedSpiral(f.params, bad_profile))
    assert not rep.passed["ode"]
    assert not rep.passed["momentum"]
    assert not rep.all_passed


def test_verify_is_deterministic():
    f = GeneralizedSpiral.build(3, -4 * math.pi, 0.7)
    a = json.dumps(verify(f).to_dict(), sort_keys=True)
    b = json.dumps(verify(f).to_dict(), sort_keys=True)
    assert a == b
    c = verify(f, VerifyConfig(seed=1))
    assert c.seed == 1 and c.max_momentum_residual != verify(f).max_momentum_residual


def test_verify_tolerance_override_fails():
    rep = verify(GeneralizedSpiral.build(2, 0.0, 0.5), VerifyConfig(tol_momentum=1e-20))
    assert not rep.passed["momentum"]
    assert rep.tolerances["momentum"] == 1e-20


def test_report_flags_follow_values():
    rep = verify(HamelN0(1.0, 1.0), VerifyConfig(samples=20))
    d = rep.to_dict()
    assert d["all_passed"] is True
    assert d["passed"]["divergence"] == (d["max_divergence"] <= d["tolerances"]["divergence"])
