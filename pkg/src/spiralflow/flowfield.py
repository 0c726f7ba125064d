"""Evaluable planar flow fields on the punctured plane.

Fields are given in polar components ``(u_r, u_theta)`` together with the
pressure ``p``, the vorticity ``omega`` and a stream function ``psi`` (viscosity
one). The stream function follows the convention
``u_r = -(1/r) d(psi)/d(theta)``, ``u_theta = d(psi)/dr``, under which the spiral
solutions have ``psi = mu log r + Gamma(z)``.

Every field also exposes :meth:`jet`, the velocity together with its first and
second partial derivatives and the pressure gradient, from closed-form
expressions. Residuals of the momentum equation are built from the jet.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.integrate import solve_ivp

from .profile import ProfileSolution, SolutionParams, antiderivative, build_profile, phi_jet

__all__ = [
    "PolarPoint",
    "FlowSample",
    "PolarJet",
    "Field",
    "GeneralizedSpiral",
    "HamelN0",
    "HamelN0A",
    "StokesTorque",
    "StokesQuadrupole",
    "evaluate",
    "eval_spiral",
    "eval_hamel",
    "eval_stokes_reference",
    "to_cartesian",
    "momentum_residual",
    "momentum_scale",
    "divergence_fd",
    "fd_jet",
    "symmetry_defect",
    "Streamline",
    "streamline",
]


class _Polar(NamedTuple):
    r: float
    theta: float


class PolarPoint(_Polar):
    """A point ``(r, theta)`` of the punctured plane; ``r`` must be positive."""

    __slots__ = ()

    def __new__(cls, r, theta):
        r, theta = float(r), float(theta)
        if not r > 0.0:
            raise ValueError("fields are defined for r > 0 only")
        return super().__new__(cls, r, theta)


class FlowSample(NamedTuple):
    u_r: np.ndarray
    u_theta: np.ndarray
    p: np.ndarray
    omega: np.ndarray
    psi: np.ndarray


class PolarJet(NamedTuple):
    """Velocity, its partial derivatives (suffix ``_r``, ``_t``) and pressure gradient."""

    ur: np.ndarray
    ut: np.ndarray
    ur_r: np.ndarray
    ur_t: np.ndarray
    ur_rr: np.ndarray
    ur_tt: np.ndarray
    ut_r: np.ndarray
    ut_t: np.ndarray
    ut_rr: np.ndarray
    ut_tt: np.ndarray
    p: np.ndarray
    p_r: np.ndarray
    p_t: np.ndarray


def _polar(r, theta):
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if np.any(~(r > 0)):
        raise ValueError("fields are defined for r > 0 only")
    return np.broadcast_arrays(r, theta)


class Field:
    """Base class: subclasses implement ``evaluate`` and ``jet``."""

    # Stokes reference fields solve the linear problem (no convective term)
    stokes = False

    def evaluate(self, r, theta) -> FlowSample:
        raise NotImplementedError

    def jet(self, r, theta) -> PolarJet:
        raise NotImplementedError

    def rotation_rate(self):
        """``c`` such that ``lam u(lam r, theta) = u(r, theta + c log lam)``, or None."""
        return 0.0

    def speed_bound(self):
        """Upper bound for ``r |u|``, or None when the field is not ~1/r."""
        return None

    def velocity_xy(self, x, y):
        r = np.hypot(x, y)
        theta = np.arctan2(y, x)
        s = self.evaluate(r, theta)
        return to_cartesian(s, theta)


@dataclass(frozen=True)
class GeneralizedSpiral(Field):
    """``u = (1/r)[-phi(z) e_r + a (phi(z) - 4) e_theta]``, ``z = theta0 + theta + a log r``.

    The pressure is
    ``p = [a(1+a^2) phi' - (2(1+a^2) + a mu) phi] / r^2 - [mu^2 + C(1+a^2)] / (2 r^2)``
    with ``mu = -4a``.
    """

    params: SolutionParams
    profile: ProfileSolution

    @classmethod
    def build(cls, n, flux, a, theta0=0.0):
        params = SolutionParams(n, flux, a, theta0)
        return cls(params, build_profile(params))

    def _z(self, r, theta):
        return self.params.theta0 + theta + self.params.a * np.log(r)

    def _pressure_coeffs(self):
        a = self.params.a
        mu = self.params.mu
        q = 1.0 + a * a
        return a * q, 2.0 * q + a * mu, 0.5 * (mu * mu + self.profile.c_const * q)

    def evaluate(self, r, theta):
        r, theta = _polar(r, theta)
        a = self.params.a
        z = self._z(r, theta)
        phi, dphi = phi_jet(self.profile, z, order=1)
        c1, c2, c3 = self._pressure_coeffs()
        r2 = r * r
        return FlowSample(
            u_r=-phi / r,
            u_theta=a * (phi - 4.0) / r,
            p=(c1 * dphi - c2 * phi - c3) / r2,
            omega=(1.0 + a * a) * dphi / r2,
            psi=self.params.mu * np.log(r) + antiderivative(self.profile, z),
        )

    def jet(self, r, theta):
        r, theta = _polar(r, theta)
        a = self.params.a
        z = self._z(r, theta)
        phi, d1, d2, d3 = phi_jet(self.profile, z, order=3)
        # u_r = f/r with f = -phi;  u_theta = g/r with g = a (phi - 4)
        f, f1, f2 = -phi, -d1, -d2
        g, g1, g2 = a * (phi - 4.0), a * d1, a * d2
        r2, r3 = r * r, r**3
        c1, c2, c3 = self._pressure_coeffs()
        P = c1 * d1 - c2 * phi - c3
        P1 = c1 * d2 - c2 * d1
        return PolarJet(
            ur=f / r,
            ut=g / r,
            ur_r=(a * f1 - f) / r2,
            ur_t=f1 / r,
            ur_rr=(a * a * f2 - 3.0 * a * f1 + 2.0 * f) / r3,
            ur_tt=f2 / r,
            ut_r=(a * g1 - g) / r2,
            ut_t=g1 / r,
            ut_rr=(a * a * g2 - 3.0 * a * g1 + 2.0 * g) / r3,
            ut_tt=g2 / r,
            p=P / r2,
            p_r=(a * P1 - 2.0 * P) / r3,
            p_t=P1 / r2,
        )

    def rotation_rate(self):
        return self.params.a

    def speed_bound(self):
        phi1, phi2, _ = self.profile.roots
        top = max(abs(phi1), abs(phi2))
        return top + abs(self.params.a) * (top + 4.0)


@dataclass(frozen=True)
class HamelN0A(Field):
    """``u = flux/(2 pi r) e_r + (mu/r + A r^(1 + flux/(2 pi))) e_theta``.

    The pressure, obtained by integrating the radial momentum balance and
    normalized to vanish at infinity, is::

        p = -(beta^2 + mu^2) / (2 r^2) + 2 mu A r^(k-1) / (k-1) + A^2 r^(2k) / (2k)

    with ``beta = flux/(2 pi)`` and ``k = 1 + beta``. For ``A != 0`` the flux
    must satisfy ``flux < -2 pi``.
    """

    flux: float
    mu: float
    A: float = 0.0

    def __post_init__(self):
        if self.A != 0.0 and not self.flux < -2.0 * math.pi:
            raise ValueError(f"HamelN0A requires flux < -2 pi, got {self.flux!r}")

    @property
    def _beta(self):
        return self.flux / (2.0 * math.pi)

    def _pressure(self, r):
        beta, mu, A = self._beta, self.mu, self.A
        p = -(beta * beta + mu * mu) / (2.0 * r * r)
        if A != 0.0:
            k = 1.0 + beta
            p = p + 2.0 * mu * A * r ** (k - 1.0) / (k - 1.0) + A * A * r ** (2.0 * k) / (2.0 * k)
        return p

    def evaluate(self, r, theta):
        r, theta = _polar(r, theta)
        beta, mu, A = self._beta, self.mu, self.A
        k = 1.0 + beta
        psi = -beta * theta + mu * np.log(r)
        if A != 0.0:
            psi = psi + (A * np.log(r) if k == -1.0 else A * r ** (k + 1.0) / (k + 1.0))
        return FlowSample(
            u_r=beta / r,
            u_theta=mu / r + A * r**k,
            p=self._pressure(r),
            omega=A * (k + 1.0) * r ** (k - 1.0) + 0.0 * theta,
            psi=psi,
        )

    def jet(self, r, theta):
        r, theta = _polar(r, theta)
        beta, mu, A = self._beta, self.mu, self.A
        k = 1.0 + beta
        zero = np.zeros_like(r)
        p_r = (beta * beta + mu * mu) / r**3
        if A != 0.0:
            p_r = p_r + 2.0 * mu * A * r ** (k - 2.0) + A * A * r ** (2.0 * k - 1.0)
        return PolarJet(
            ur=beta / r,
            ut=mu / r + A * r**k,
            ur_r=-beta / r**2,
            ur_t=zero,
            ur_rr=2.0 * beta / r**3,
            ur_tt=zero,
            ut_r=-mu / r**2 + A * k * r ** (k - 1.0),
            ut_t=zero,
            ut_rr=2.0 * mu / r**3 + A * k * (k - 1.0) * r ** (k - 2.0),
            ut_tt=zero,
            p=self._pressure(r),
            p_r=p_r,
            p_t=zero,
        )

    def rotation_rate(self):
        return 0.0 if self.A == 0.0 else None

    def speed_bound(self):
        if self.A != 0.0:
            return None
        return math.hypot(self._beta, self.mu)


class HamelN0(HamelN0A):
    """Source plus point vortex: ``u = flux/(2 pi r) e_r + (mu/r) e_theta``."""

    def __init__(self, flux, mu):
        super().__init__(flux, mu, 0.0)


@dataclass(frozen=True)
class StokesTorque(Field):
    """Stokes far field of a torque ``m``: ``u = -m/(4 pi r) e_theta``, ``p = 0``."""

    m: float
    stokes = True

    def evaluate(self, r, theta):
        r, theta = _polar(r, theta)
        c = -self.m / (4.0 * math.pi)
        zero = np.zeros_like(r)
        return FlowSample(zero, c / r, zero, zero, c * np.log(r))

    def jet(self, r, theta):
        r, theta = _polar(r, theta)
        c = -self.m / (4.0 * math.pi)
        zero = np.zeros_like(r)
        return PolarJet(zero, c / r, zero, zero, zero, zero,
                        -c / r**2, zero, 2.0 * c / r**3, zero, zero, zero, zero)

    def speed_bound(self):
        return abs(self.m) / (4.0 * math.pi)


@dataclass(frozen=True)
class StokesQuadrupole(Field):
    """Stokes far field ``u = -q cos(2 theta)/(4 pi r) e_r``.

    Pressure ``-q cos(2 theta)/(2 pi r^2)``, vorticity ``-q sin(2 theta)/(2 pi r^2)``
    and stream function ``q sin(2 theta)/(8 pi)``.
    """

    q: float
    stokes = True

    def evaluate(self, r, theta):
        r, theta = _polar(r, theta)
        q = self.q
        c2, s2 = np.cos(2.0 * theta), np.sin(2.0 * theta)
        return FlowSample(
            u_r=-q * c2 / (4.0 * math.pi * r),
            u_theta=np.zeros_like(r),
            p=-q * c2 / (2.0 * math.pi * r * r),
            omega=-q * s2 / (2.0 * math.pi * r * r),
            psi=q * s2 / (8.0 * math.pi) + 0.0 * r,
        )

    def jet(self, r, theta):
        r, theta = _polar(r, theta)
        g = -self.q / (4.0 * math.pi)
        c2, s2 = np.cos(2.0 * theta), np.sin(2.0 * theta)
        zero = np.zeros_like(r)
        return PolarJet(
            ur=g * c2 / r,
            ut=zero,
            ur_r=-g * c2 / r**2,
            ur_t=-2.0 * g * s2 / r,
            ur_rr=2.0 * g * c2 / r**3,
            ur_tt=-4.0 * g * c2 / r,
            ut_r=zero, ut_t=zero, ut_rr=zero, ut_tt=zero,
            p=2.0 * g * c2 / r**2,
            p_r=-4.0 * g * c2 / r**3,
            p_t=-4.0 * g * s2 / r**2,
        )

    def speed_bound(self):
        return abs(self.q) / (4.0 * math.pi)


def evaluate(field, r, theta):
    return field.evaluate(r, theta)


def _unpack(pt):
    if isinstance(pt, PolarPoint):
        return pt.r, pt.theta
    r, theta = pt
    return r, theta


def eval_spiral(params, profile, pt):
    """Sample the spiral solution for ``params``/``profile`` at ``pt = (r, theta)``."""
    return GeneralizedSpiral(params, profile).evaluate(*_unpack(pt))


def eval_hamel(field, pt):
    if not isinstance(field, HamelN0A):
        raise TypeError("eval_hamel expects a HamelN0 or HamelN0A field")
    return field.evaluate(*_unpack(pt))


def eval_stokes_reference(field, pt):
    if not isinstance(field, (StokesTorque, StokesQuadrupole)):
        raise TypeError("eval_stokes_reference expects a StokesTorque or StokesQuadrupole field")
    return field.evaluate(*_unpack(pt))


def to_cartesian(sample, theta):
    """Rotate polar velocity components to ``(u_x, u_y)``.

    ``sample`` is a :class:`FlowSample` or any ``(u_r, u_theta)`` pair; ``theta``
    may also be a :class:`PolarPoint`.
    """
    if isinstance(theta, PolarPoint):
        theta = theta.theta
    u_r, u_theta = sample[0], sample[1]
    c, s = np.cos(theta), np.sin(theta)
    return u_r * c - u_theta * s, u_r * s + u_theta * c


def _momentum_terms(field, r, j):
    r2 = r * r
    lap_ur = j.ur_rr + j.ur_r / r + j.ur_tt / r2
    lap_ut = j.ut_rr + j.ut_r / r + j.ut_tt / r2
    viscous = (lap_ur - j.ur / r2 - 2.0 * j.ut_t / r2,
               lap_ut - j.ut / r2 + 2.0 * j.ur_t / r2)
    grad_p = (j.p_r, j.p_t / r)
    if field.stokes:
        conv = (np.zeros_like(r), np.zeros_like(r))
    else:
        conv = (j.ur * j.ur_r + j.ut * j.ur_t / r - j.ut * j.ut / r,
                j.ur * j.ut_r + j.ut * j.ut_t / r + j.ur * j.ut / r)
    return viscous, grad_p, conv


def momentum_residual(field, r, theta, jet=None):
    """Polar components of ``Delta u - grad p - u.grad u``.

    The convective term is dropped for Stokes reference fields. Uses the
    closed-form jet unless one is supplied (e.g. from :func:`fd_jet`).
    """
    r, theta = _polar(r, theta)
    j = field.jet(r, theta) if jet is None else jet
    (vr, vt), (gr, gt), (cr, ct) = _momentum_terms(field, r, j)
    return vr - gr - cr, vt - gt - ct


def momentum_scale(field, r, theta):
    """Pointwise magnitude of the largest of the three momentum terms."""
    r, theta = _polar(r, theta)
    terms = _momentum_terms(field, r, field.jet(r, theta))
    return np.max([np.hypot(*t) for t in terms], axis=0)


def fd_jet(field, r, theta, h=3e-4):
    """Finite-difference jet of ``field.evaluate`` (radial step ``h r``, angular step ``h``).

    Fourth-order five-point central stencils for first and second derivatives.
    """
    r, theta = _polar(r, theta)
    hr = h * r
    ht = h

    def uvp(rr, tt):
        s = field.evaluate(rr, tt)
        return np.stack([s.u_r, s.u_theta, s.p])

    c = uvp(r, theta)
    rk = {k: uvp(r + k * hr, theta) for k in (-2, -1, 1, 2)}
    tk = {k: uvp(r, theta + k * ht) for k in (-2, -1, 1, 2)}

    def first(f, step):
        return (8.0 * (f[1] - f[-1]) - (f[2] - f[-2])) / (12.0 * step)

    def second(f, step):
        return (16.0 * (f[1] + f[-1]) - (f[2] + f[-2]) - 30.0 * c) / (12.0 * step**2)

    d_r, d_t = first(rk, hr), first(tk, ht)
    d_rr, d_tt = second(rk, hr), second(tk, ht)
    return PolarJet(c[0], c[1], d_r[0], d_t[0], d_rr[0], d_tt[0],
                    d_r[1], d_t[1], d_rr[1], d_tt[1], c[2], d_r[2], d_t[2])


def divergence_fd(field, r, theta, h=1e-5):
    """``(d_r(r u_r) + d_theta u_theta) / r`` by central differences, step ``h r``.

    A fourth-order five-point stencil is used: large-amplitude profiles have
    steep third derivatives that swamp the second-order truncation error.
    """
    r, theta = _polar(r, theta)
    hr = h * r
    ht = h

    def d(fun, step):
        return (8.0 * (fun(1) - fun(-1)) - (fun(2) - fun(-2))) / (12.0 * step)

    def rur(k):
        rk = r + k * hr
        return rk * field.evaluate(rk, theta).u_r

    def ut(k):
        return field.evaluate(r, theta + k * ht).u_theta

    return (d(rur, hr) + d(ut, ht)) / r


def symmetry_defect(field, lam, r, theta):
    """``|lam u(lam x) - R^-1 u(R x)|`` for the field's rotation rate.

    With ``c = field.rotation_rate()`` the rotation ``R`` turns the polar
    angle by ``c log lam``; in polar components the identity reads
    ``lam u(lam r, theta) = u(r, theta + c log lam)``. For the spiral family
    ``c = a``, i.e. ``R(lam) = -a log lam`` in the convention
    ``lam u_r(lam r, theta) = u_r(r, theta - R(lam))``.
    """
    rate = field.rotation_rate()
    if rate is None:
        raise ValueError("field is not invariant under a scaling-rotation symmetry")
    r, theta = _polar(r, theta)
    lam = np.asarray(lam, dtype=float)
    lhs = field.evaluate(lam * r, theta)
    rhs = field.evaluate(r, theta + rate * np.log(lam))
    return np.hypot(lam * lhs.u_r - rhs.u_r, lam * lhs.u_theta - rhs.u_theta)


@dataclass
class Streamline:
    """Polyline through a seed point, ordered along the flow.

    ``status`` holds the reason each branch stopped: ``"arc_span"``,
    ``"r_min"``, ``"r_max"``, ``"stagnation"`` or ``"failed"``.
    """

    points: np.ndarray
    seed: PolarPoint
    status: dict

    @property
    def truncated(self):
        return any(s != "arc_span" for s in self.status.values())


STAGNATION_SPEED = 1e-14


def _branch(field, start, arc_span, sign, rtol, r_min, r_max, max_step):
    def rhs(_, y):
        ux, uy = field.velocity_xy(y[0], y[1])
        speed = math.hypot(float(ux), float(uy))
        if speed < STAGNATION_SPEED:
            return [0.0, 0.0]
        return [sign * float(ux) / speed, sign * float(uy) / speed]

    def hit_rmin(_, y):
        return math.hypot(y[0], y[1]) - r_min

    def hit_rmax(_, y):
        return math.hypot(y[0], y[1]) - r_max

    def stagnant(_, y):
        ux, uy = field.velocity_xy(y[0], y[1])
        return math.hypot(float(ux), float(uy)) - STAGNATION_SPEED

    if stagnant(0.0, start) < 0.0:
        return np.array([start], dtype=float), "stagnation"
    events = [hit_rmin, hit_rmax, stagnant]
    for ev in events:
        ev.terminal = True
    sol = solve_ivp(rhs, (0.0, arc_span), start, method="RK45", rtol=rtol,
                    atol=rtol * 1e-2, max_step=max_step, events=events)
    if sol.status == 1:
        hit = [len(t) > 0 for t in sol.t_events]
        status = ("r_min", "r_max", "stagnation")[hit.index(True)]
    elif sol.status == 0:
        status = "arc_span"
    else:
        status = "failed"
    return sol.y.T, status


def streamline(field, seed, arc_span, step_control=1e-8, r_min=1e-3, r_max=1e3,
               direction="both", max_step=None):
    """Trace the streamline through ``seed`` by integrating ``dx/ds = u/|u|``.

    An adaptive Dormand-Prince 4(5) pair with relative tolerance
    ``step_control`` is used; each branch runs for arc length ``arc_span`` or
    until it leaves ``r_min < r < r_max`` or reaches a stagnation point.
    """
    r0, t0 = _unpack(seed)
    if not r0 > 0:
        raise ValueError("seed must have r > 0")
    if direction not in ("both", "forward", "backward"):
        raise ValueError(f"unknown direction {direction!r}")
    start = [r0 * math.cos(t0), r0 * math.sin(t0)]
    if max_step is None:
        max_step = arc_span / 256.0
    status = {}
    pieces = []
    if direction in ("both", "backward"):
        back, status["backward"] = _branch(field, start, arc_span, -1.0, step_control,
                                           r_min, r_max, max_step)
        pieces.append(back[::-1])
    if direction in ("both", "forward"):
        fwd, status["forward"] = _branch(field, start, arc_span, 1.0, step_control,
                                         r_min, r_max, max_step)
        pieces.append(fwd[1:] if pieces else fwd)
    return Streamline(np.concatenate(pieces), PolarPoint(r0, t0), status)
