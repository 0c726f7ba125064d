"""Quadrature diagnostics, existence region and small-amplitude asymptotics."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import NamedTuple

import numpy as np

from .flowfield import (
    GeneralizedSpiral,
    HamelN0A,
    StokesQuadrupole,
    StokesTorque,
    divergence_fd,
    fd_jet,
    momentum_residual,
    momentum_scale,
    symmetry_defect,
)
from .profile import (
    SolutionParams,
    build_profile,
    eval_phi,
    flux_bound,
    flux_closed_form,
    phi_jet,
    potential,
)

__all__ = [
    "StressSample",
    "stress",
    "flux_quadrature",
    "force_torque",
    "torque_formula",
    "existence_flux_bound",
    "Case",
    "AsymptoticPrediction",
    "asymptotic_predict",
    "asymptotic_compare",
    "REMAINDER_ORDERS",
    "VerifyConfig",
    "DiagnosticsReport",
    "verify",
]

DEFAULT_NODES = 512
DEFAULT_SEED = 20180730


class StressSample(NamedTuple):
    """Polar components of ``T = u (x) u + p I - grad u - (grad u)^T``."""

    T_rr: np.ndarray
    T_rtheta: np.ndarray
    T_thetatheta: np.ndarray


def stress(field, r, theta, gradient="auto"):
    """Stress tensor including the convective part.

    ``gradient="auto"`` takes velocity gradients from the closed-form jet for
    spiral fields and from central differences (step ``1e-6 r``) otherwise;
    ``"analytic"`` and ``"fd"`` force either path.
    """
    if gradient == "auto":
        gradient = "analytic" if isinstance(field, GeneralizedSpiral) else "fd"
    if gradient == "analytic":
        j = field.jet(r, theta)
    elif gradient == "fd":
        j = fd_jet(field, r, theta, h=1e-6)
    else:
        raise ValueError(f"unknown gradient mode {gradient!r}")
    r = np.asarray(r, dtype=float)
    e_rr = j.ur_r
    e_tt = j.ut_t / r + j.ur / r
    e_rt = 0.5 * (j.ut_r - j.ut / r + j.ur_t / r)
    return StressSample(
        T_rr=j.ur * j.ur + j.p - 2.0 * e_rr,
        T_rtheta=j.ur * j.ut - 2.0 * e_rt,
        T_thetatheta=j.ut * j.ut + j.p - 2.0 * e_tt,
    )


def _circle(radius, nodes):
    if not radius > 0:
        raise ValueError("radius must be positive")
    theta = -math.pi + 2.0 * math.pi * np.arange(nodes) / nodes
    return np.full(nodes, float(radius)), theta


def flux_quadrature(field, radius, nodes=DEFAULT_NODES):
    """Outward flux through the circle of given radius (periodic trapezoid rule)."""
    r, theta = _circle(radius, nodes)
    u_r = field.evaluate(r, theta).u_r
    return float(2.0 * math.pi * radius * np.mean(u_r))


def force_torque(field, radius, nodes=DEFAULT_NODES, gradient="auto"):
    """Force and torque from the stress on the circle of given radius.

    Returns ``((F_x, F_y), M)`` with ``F = -int T n`` and
    ``M = -int x ^ T n`` over the circle with outward normal ``n``. The sign
    makes both equal to the moments of the source term ``f`` in
    ``Delta u - grad p - u.grad u = f`` inside the circle, the convention under
    which a clockwise swirl ``u_theta = -m/(4 pi r)`` carries torque ``+m``.
    """
    r, theta = _circle(radius, nodes)
    T = stress(field, r, theta, gradient=gradient)
    c, s = np.cos(theta), np.sin(theta)
    # T n = T_rr e_r + T_rtheta e_theta, line element radius * dtheta
    tx = T.T_rr * c - T.T_rtheta * s
    ty = T.T_rr * s + T.T_rtheta * c
    scale = 2.0 * math.pi * radius
    F = (-scale * float(np.mean(tx)), -scale * float(np.mean(ty)))
    M = -scale * radius * float(np.mean(T.T_rtheta))
    return F, M


def torque_formula(profile, nodes=DEFAULT_NODES):
    """Closed-form torque ``a (16 pi + 6 flux + int_{-pi}^{pi} phi^2)``.

    The integral is taken over one period with the periodic trapezoid rule and
    multiplied by ``n``.
    """
    params = profile.params
    z = profile.period * np.arange(nodes) / nodes
    phi = phi_jet(profile, z, order=0)[0]
    integral = params.n * profile.period * float(np.mean(phi * phi))
    return params.a * (16.0 * math.pi + 6.0 * params.flux + integral)


def existence_flux_bound(n, a):
    """``pi (n^2 (1 + a^2) - 4)``: solutions exist for strictly smaller flux."""
    return flux_bound(n, a)


class Case(str, Enum):
    """Small-amplitude families at zero flux: ``N1`` has ``a = sqrt(3) + eps``, ``N2`` has ``a = eps``."""

    N1 = "N1"
    N2 = "N2"


class AsymptoticPrediction(NamedTuple):
    alpha: float
    phi1: float
    phi2: float
    phi3: float
    torque: float
    phi_profile_amplitude: float
    params: SolutionParams


def _case(case):
    return case if isinstance(case, Case) else Case(str(case).upper())


def asymptotic_predict(case, epsilon):
    """Leading-order small-amplitude predictions.

    ``N1`` (n=1, a=sqrt(3)+eps): ``alpha = (256/3)^(1/8) eps^(1/4)``, roots
    ``-/+ 4 3^(3/4) eps^(1/2)`` and 6, torque ``16 pi sqrt(3)``.
    ``N2`` (n=2, a=eps): ``alpha = (32/3)^(1/4) eps^(1/2)``, roots
    ``-/+ 4 sqrt(6) eps`` and 6, torque ``16 pi eps``. In both cases
    ``phi(z) ~ -amplitude cos(n z)``.
    """
    case = _case(case)
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    if case is Case.N1:
        amp = 4.0 * 3.0**0.75 * math.sqrt(epsilon)
        return AsymptoticPrediction(
            alpha=(256.0 / 3.0) ** 0.125 * epsilon**0.25,
            phi1=-amp, phi2=amp, phi3=6.0,
            torque=16.0 * math.pi * math.sqrt(3.0),
            phi_profile_amplitude=amp,
            params=SolutionParams(1, 0.0, math.sqrt(3.0) + epsilon),
        )
    amp = 4.0 * math.sqrt(6.0) * epsilon
    return AsymptoticPrediction(
        alpha=(32.0 / 3.0) ** 0.25 * math.sqrt(epsilon),
        phi1=-amp, phi2=amp, phi3=6.0,
        torque=16.0 * math.pi * epsilon,
        phi_profile_amplitude=amp,
        params=SolutionParams(2, 0.0, epsilon),
    )


# relative remainder orders: deviation from the prediction is O(eps^p)
REMAINDER_ORDERS = {
    Case.N1: {"alpha": 0.25, "phi1": 0.5, "phi2": 0.5, "phi3": 1.0, "torque": 1.0, "profile": 0.5},
    Case.N2: {"alpha": 0.5, "phi1": 1.0, "phi2": 1.0, "phi3": 2.0, "torque": 1.0, "profile": 1.0},
}


def asymptotic_compare(case, epsilon, samples=1024):
    """Relative deviations ``|computed / predicted - 1|`` for each predicted quantity.

    ``profile`` is the sup-norm distance between ``phi`` and
    ``-amplitude cos(n z)`` divided by the amplitude.
    """
    pred = asymptotic_predict(case, epsilon)
    profile = build_profile(pred.params)
    phi1, phi2, phi3 = profile.roots
    n = pred.params.n
    z = 2.0 * math.pi * np.arange(samples) / samples
    phi = phi_jet(profile, z, order=0)[0]
    shape = -pred.phi_profile_amplitude * np.cos(n * z)
    return {
        "alpha": abs(profile.alpha / pred.alpha - 1.0),
        "phi1": abs(phi1 / pred.phi1 - 1.0),
        "phi2": abs(phi2 / pred.phi2 - 1.0),
        "phi3": abs(phi3 / pred.phi3 - 1.0),
        "torque": abs(torque_formula(profile) / pred.torque - 1.0),
        "profile": float(np.max(np.abs(phi - shape))) / pred.phi_profile_amplitude,
    }


@dataclass(frozen=True)
class VerifyConfig:
    seed: int = DEFAULT_SEED
    samples: int = 200
    r_min: float = 0.5
    r_max: float = 5.0
    nodes: int = DEFAULT_NODES
    radii: tuple = (0.5, 1.0, 2.0, 4.0)
    tol_momentum: float = 1e-6
    tol_momentum_fd: float = 1e-4
    tol_divergence: float = 1e-6
    tol_symmetry: float = 1e-10
    tol_flux: float = 1e-8
    tol_flux_radius: float = 1e-10
    tol_force: float = 1e-8
    tol_torque: float = 1e-6
    tol_torque_radius: float = 1e-8
    tol_quadrature: float = 1e-12
    tol_ode: float = 1e-9
    tol_energy: float = 1e-9


@dataclass
class DiagnosticsReport:
    """Values of every check and a pass flag per check (``None`` values were not applicable)."""

    field: str
    seed: int
    flux_quad: float | None = None
    flux_expected: float | None = None
    force: tuple | None = None
    torque_quad: float | None = None
    torque_formula: float | None = None
    max_momentum_residual: float | None = None
    max_momentum_residual_fd: float | None = None
    max_divergence: float | None = None
    max_symmetry_defect: float | None = None
    flux_radius_spread: float | None = None
    torque_radius_spread: float | None = None
    quadrature_change: float | None = None
    max_ode_residual: float | None = None
    # spread of 1/2 phi'^2 + V(phi) over z, relative to max(1, |E|)
    energy_drift: float | None = None
    tolerances: dict = field(default_factory=dict)
    passed: dict = field(default_factory=dict)

    @property
    def all_passed(self):
        return all(self.passed.values())

    def to_dict(self):
        out = asdict(self)
        out["all_passed"] = self.all_passed
        return out


def _describe(f):
    if isinstance(f, GeneralizedSpiral):
        p = f.params
        return f"GeneralizedSpiral(n={p.n}, flux={p.flux!r}, a={p.a!r}, theta0={p.theta0!r})"
    return repr(f)


def _expected_flux(f):
    if isinstance(f, GeneralizedSpiral):
        return f.params.flux
    if isinstance(f, HamelN0A):
        return f.flux
    if isinstance(f, (StokesTorque, StokesQuadrupole)):
        return 0.0
    return None


def _record(report, name, value, tol):
    report.tolerances[name] = tol
    report.passed[name] = bool(value <= tol)


def verify(field, config=None):
    """Run every applicable check on ``field``; failures are reported, never raised."""
    cfg = config or VerifyConfig()
    rng = np.random.default_rng(cfg.seed)
    r = np.exp(rng.uniform(math.log(cfg.r_min), math.log(cfg.r_max), cfg.samples))
    theta = rng.uniform(-math.pi, math.pi, cfg.samples)
    rep = DiagnosticsReport(field=_describe(field), seed=cfg.seed)

    res = momentum_residual(field, r, theta)
    rep.max_momentum_residual = float(np.max(np.hypot(*res)))
    _record(rep, "momentum", rep.max_momentum_residual, cfg.tol_momentum)

    # finite differences cannot resolve 1e-4 against terms of size 1e6, so the
    # cross-check is relative to the local term size once that exceeds one
    res_fd = momentum_residual(field, r, theta, jet=fd_jet(field, r, theta))
    scale = np.maximum(momentum_scale(field, r, theta), 1.0)
    rep.max_momentum_residual_fd = float(np.max(np.hypot(*res_fd) / scale))
    _record(rep, "momentum_fd", rep.max_momentum_residual_fd, cfg.tol_momentum_fd)

    rep.max_divergence = float(np.max(np.abs(divergence_fd(field, r, theta))))
    _record(rep, "divergence", rep.max_divergence, cfg.tol_divergence)

    if field.rotation_rate() is not None:
        lam = np.exp(rng.uniform(math.log(0.1), math.log(10.0), cfg.samples))
        rep.max_symmetry_defect = float(np.max(symmetry_defect(field, lam, r, theta)))
        _record(rep, "symmetry", rep.max_symmetry_defect, cfg.tol_symmetry)

    fluxes = [flux_quadrature(field, rad, cfg.nodes) for rad in cfg.radii]
    rep.flux_quad = flux_quadrature(field, 1.0, cfg.nodes)
    rep.flux_radius_spread = float(np.ptp(fluxes))
    _record(rep, "flux_radius", rep.flux_radius_spread, cfg.tol_flux_radius)
    rep.flux_expected = _expected_flux(field)
    if rep.flux_expected is not None:
        _record(rep, "flux", abs(rep.flux_quad - rep.flux_expected), cfg.tol_flux)
    quad_change = abs(flux_quadrature(field, 1.0, 2 * cfg.nodes) - rep.flux_quad)

    if isinstance(field, GeneralizedSpiral):
        profile = field.profile
        a = field.params.a
        F, M = force_torque(field, 1.0, cfg.nodes)
        rep.force = F
        rep.torque_quad = M
        rep.torque_formula = torque_formula(profile, cfg.nodes)
        _record(rep, "force", math.hypot(*F), cfg.tol_force)
        scale = max(abs(rep.torque_formula), 1.0)
        _record(rep, "torque", abs(M - rep.torque_formula) / scale, cfg.tol_torque)
        torques = [force_torque(field, rad, cfg.nodes)[1] for rad in cfg.radii]
        rep.torque_radius_spread = float(np.ptp(torques)) / scale
        _record(rep, "torque_radius", rep.torque_radius_spread, cfg.tol_torque_radius)
        M2 = force_torque(field, 1.0, 2 * cfg.nodes)[1]
        quad_change = max(quad_change, abs(M2 - M) / scale)

        z = profile.period * rng.uniform(0.0, 1.0, cfg.samples)
        phi, dphi, d2phi = eval_phi(profile, z, d2="jacobi")
        ode = (1.0 + a * a) * d2phi + 4.0 * phi - phi * phi + profile.c_const
        rep.max_ode_residual = float(np.max(np.abs(ode)))
        _record(rep, "ode", rep.max_ode_residual, cfg.tol_ode)
        energy = 0.5 * dphi * dphi + potential(profile, phi)
        rep.energy_drift = float(np.ptp(energy)) / max(1.0, abs(profile.energy))
        _record(rep, "energy", rep.energy_drift, cfg.tol_energy)
        closed = flux_closed_form(profile)
        _record(rep, "flux_closed_form", abs(closed - field.params.flux), cfg.tol_flux)

    rep.quadrature_change = float(quad_change)
    _record(rep, "quadrature", rep.quadrature_change, cfg.tol_quadrature)
    return rep
