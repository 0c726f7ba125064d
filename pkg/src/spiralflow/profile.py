"""Periodic profiles of the reduced oscillator equation.

The velocity field is generated by a ``2*pi/n``-periodic profile ``phi(z)``
solving the undamped oscillator (``mu = -4a``)::

    (1 + a^2) phi'' + 4 phi = phi^2 - C

The cubic ``2E - 2V(phi)`` factors as ``2/(3(1+a^2)) (phi-phi1)(phi-phi2)(phi-phi3)``
and the solution oscillating between the two smaller roots is::

    phi(z) = phi1 + (phi2 - phi1) sn^2(kappa z; alpha),   kappa = n K(alpha) / pi

Matching the cubic coefficients gives ``phi1 + phi2 + phi3 = 6``,
``C = -(phi1 phi2 + phi1 phi3 + phi2 phi3) / 3`` and
``E = -phi1 phi2 phi3 / (3 (1 + a^2))``. The modulus ``alpha`` is fixed by the
flux through the transcendental equation ``H(alpha) = (pi^2 + pi Phi/4) / (n^2 (1+a^2))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .elliptic import complete_K, complete_KE, jacobi

__all__ = [
    "ProfileError",
    "NoSolution",
    "DegenerateProfile",
    "ModulusRangeError",
    "InternalInconsistency",
    "SolutionParams",
    "ProfileSolution",
    "ModulusSolve",
    "flux_bound",
    "shape_H",
    "shape_H_deficit",
    "solve_modulus",
    "compute_roots",
    "build_profile",
    "eval_phi",
    "phi_jet",
    "antiderivative",
    "flux_closed_form",
    "potential",
    "energy_bounds",
]

ALPHA_MIN = 1e-12
ALPHA_MAX = 1.0 - 1e-12
BRACKET_WIDTH = 1e-14
FLUX_CHECK_TOL = 1e-8

# pi^2/4 - H(alpha) = pi^2/4 * sum_k c_k alpha^(2k), k = 2..17
_H_SERIES = (
    (2, 3 / 32),
    (3, 3 / 32),
    (4, 705 / 8192),
    (5, 321 / 4096),
    (6, 18795 / 262144),
    (7, 17313 / 262144),
    (8, 32881149 / 536870912),
    (9, 7669245 / 134217728),
    (10, 920719701 / 17179869184),
    (11, 867557865 / 17179869184),
    (12, 210117858093 / 4398046511104),
    (13, 99746404359 / 2199023255552),
    (14, 6079964749755 / 140737488355328),
    (15, 5806739611197 / 140737488355328),
    (16, 91088184225228405 / 2305843009213693952),
    (17, 10925725159835253 / 288230376151711744),
)
_H_SERIES_CUTOFF = 0.25


class ProfileError(ValueError):
    """Base class for failures to build a periodic profile."""


class NoSolution(ProfileError):
    """Parameters violate the existence condition (4 + Phi/pi)/(1 + a^2) <= n^2."""


class DegenerateProfile(ProfileError):
    """Parameters sit exactly on the existence boundary; the profile is constant."""


class ModulusRangeError(ProfileError):
    """The modulus would lie outside the double-precision bracket."""


class InternalInconsistency(ProfileError):
    """The constructed profile does not reproduce the requested flux."""


def flux_bound(n, a):
    """Largest flux admitting an ``n``-branch solution: ``pi (n^2 (1 + a^2) - 4)``."""
    return math.pi * (n * n * (1.0 + a * a) - 4.0)


def _flux_gap(n, flux, a):
    # flux_bound(n, a) - flux, arranged so that the boundary cases cancel exactly
    return math.pi * (n * n - 4) + math.pi * n * n * a * a - flux


@dataclass(frozen=True)
class SolutionParams:
    """Public parameters of a spiral solution.

    ``n`` is the number of branches, ``flux`` the flux through any curve around
    the origin, ``a`` the spiral parameter and ``theta0`` a free phase.
    """

    n: int
    flux: float
    a: float
    theta0: float = 0.0

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        for name in ("flux", "a", "theta0"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, value)

    @property
    def mu(self):
        """Mean swirl; periodic profiles force ``mu = -4a``."""
        return -4.0 * self.a

    @property
    def flux_max(self):
        return flux_bound(self.n, self.a)

    def in_region(self):
        """True when the strict existence inequality holds."""
        return _flux_gap(self.n, self.flux, self.a) > 0


@dataclass(frozen=True)
class ProfileSolution:
    params: SolutionParams
    alpha: float
    roots: tuple[float, float, float]
    c_const: float
    energy: float
    kappa: float

    @cached_property
    def K(self):
        return complete_K(self.alpha)

    @property
    def period(self):
        return 2.0 * math.pi / self.params.n

    @property
    def amplitude(self):
        """Half the peak-to-peak oscillation ``(phi2 - phi1) / 2``."""
        return 0.5 * (self.roots[1] - self.roots[0])


class ModulusSolve(NamedTuple):
    alpha: float
    lo: float
    hi: float
    iterations: int
    target: float


def shape_H(alpha):
    """``H(alpha) = [(alpha^2 - 2) K(alpha) + 3 E(alpha)] K(alpha)``.

    Decreases monotonically from ``pi^2/4`` at ``alpha = 0`` to ``-inf``.
    """
    K, E = complete_KE(alpha)
    return ((alpha * alpha - 2.0) * K + 3.0 * E) * K


def shape_H_deficit(alpha):
    """``pi^2/4 - H(alpha)``, evaluated by power series for small moduli.

    The direct difference loses all significant digits once
    ``alpha^4 < 1e-16``; the series keeps full relative accuracy there.
    """
    alpha = float(alpha)
    if alpha < _H_SERIES_CUTOFF:
        a2 = alpha * alpha
        total = 0.0
        for k, coeff in reversed(_H_SERIES):
            total += coeff * a2**k
        return 0.25 * math.pi**2 * total
    return 0.25 * math.pi**2 - shape_H(alpha)


def _check_region(n, flux, a):
    gap = _flux_gap(n, flux, a)
    if gap == 0.0:
        raise DegenerateProfile(
            f"(n={n}, flux={flux}, a={a}) lies on the boundary flux = pi(n^2(1+a^2)-4); "
            "the periodic profile degenerates to a constant"
        )
    if gap < 0.0:
        raise NoSolution(
            f"no {n}-branch solution for flux={flux}, a={a}: requires "
            f"(4 + flux/pi)/(1 + a^2) <= n^2, i.e. flux < {flux_bound(n, a)!r}"
        )
    return gap


def solve_modulus(n, flux, a, full_output=False):
    """Find the unique modulus with ``H(alpha) = (pi^2 + pi flux/4) / (n^2 (1 + a^2))``.

    The equation is solved in the equivalent deficit form
    ``pi^2/4 - H(alpha) = pi (flux_max - flux) / (4 n^2 (1 + a^2))`` by
    bisection on ``[1e-12, 1 - 1e-12]`` down to a bracket narrower than
    ``1e-14``, followed by one secant step inside the final bracket.

    Raises
    ------
    DegenerateProfile
        On the existence boundary (the profile would be constant).
    NoSolution
        Outside the existence region.
    ModulusRangeError
        If the modulus would exceed ``1 - 1e-12`` (extremely negative flux).
    """
    SolutionParams(n, flux, a)
    gap = _check_region(n, flux, a)
    target = math.pi * gap / (4.0 * n * n * (1.0 + a * a))

    lo, hi = ALPHA_MIN, ALPHA_MAX
    f_lo = shape_H_deficit(lo) - target
    f_hi = shape_H_deficit(hi) - target
    if f_lo >= 0.0:
        # below the bracket the leading series term is exact to rounding
        alpha = (128.0 * target / (3.0 * math.pi**2)) ** 0.25
        result = ModulusSolve(alpha, alpha, alpha, 0, target)
        return result if full_output else alpha
    if f_hi < 0.0:
        raise ModulusRangeError(
            f"flux={flux} is too negative: modulus exceeds {ALPHA_MAX} for n={n}, a={a}"
        )

    iterations = 0
    while hi - lo >= BRACKET_WIDTH:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = shape_H_deficit(mid) - target
        iterations += 1
        if f_mid == 0.0:
            lo = hi = mid
            f_lo = f_hi = 0.0
            break
        if f_mid < 0.0:
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid

    if hi > lo and f_hi != f_lo:
        alpha = lo - f_lo * (hi - lo) / (f_hi - f_lo)
        alpha = min(max(alpha, lo), hi)
    else:
        alpha = 0.5 * (lo + hi)
    result = ModulusSolve(alpha, lo, hi, iterations, target)
    return result if full_output else alpha


def compute_roots(alpha, n, a):
    """Roots ``phi1 < phi2 < phi3`` of the cubic for a given modulus.

    Uses the spread ``phi3 - phi1 = 6 n^2 (1 + a^2) K^2 / pi^2`` (periodicity),
    ``phi2 - phi1 = alpha^2 (phi3 - phi1)`` and ``phi1 + phi2 + phi3 = 6``.
    """
    K = complete_K(alpha)
    spread = 6.0 * n * n * (1.0 + a * a) * (K / math.pi) ** 2
    a2 = alpha * alpha
    phi1 = (6.0 - (1.0 + a2) * spread) / 3.0
    return phi1, phi1 + a2 * spread, phi1 + spread


def _assemble(params, alpha, roots):
    phi1, phi2, phi3 = roots
    a = params.a
    c_const = -(phi1 * phi2 + phi1 * phi3 + phi2 * phi3) / 3.0
    energy = -phi1 * phi2 * phi3 / (3.0 * (1.0 + a * a))
    kappa = params.n * complete_K(alpha) / math.pi
    return ProfileSolution(params, float(alpha), tuple(float(r) for r in roots),
                           float(c_const), float(energy), float(kappa))


def build_profile(params):
    """Resolve the periodic profile for ``params``.

    The closed-form flux of the result is checked against ``params.flux``
    (absolute tolerance 1e-8) before returning.
    """
    alpha = solve_modulus(params.n, params.flux, params.a)
    roots = compute_roots(alpha, params.n, params.a)
    profile = _assemble(params, alpha, roots)
    flux = flux_closed_form(profile)
    if not abs(flux - params.flux) <= FLUX_CHECK_TOL:
        raise InternalInconsistency(
            f"closed-form flux {flux!r} differs from requested {params.flux!r}"
        )
    return profile


def phi_jet(profile, z, order=3):
    """``phi`` and its first ``order`` derivatives from the Jacobi representation.

    No use is made of the differential equation, so the jet can serve as an
    independent check of it. Returns a list ``[phi, phi', ...]``.
    """
    phi1, phi2, _ = profile.roots
    amp = phi2 - phi1
    kap = profile.kappa
    m = profile.alpha**2
    s, c, d = jacobi(kap * np.asarray(z, dtype=float), profile.alpha, K=profile.K)
    out = [phi1 + amp * s * s]
    if order >= 1:
        out.append(2.0 * amp * kap * s * c * d)
    if order >= 2:
        out.append(2.0 * amp * kap**2 * (c * c * d * d - s * s * d * d - m * s * s * c * c))
    if order >= 3:
        out.append(-8.0 * amp * kap**3 * s * c * d * (d * d + m * c * c - m * s * s))
    return out


def eval_phi(profile, z, d2="ode"):
    """Return ``(phi, dphi, d2phi)`` at ``z``; ``z = 0`` is the minimum ``phi1``.

    By default ``d2phi`` comes from the differential equation,
    ``(phi^2 - C - 4 phi) / (1 + a^2)``; pass ``d2="jacobi"`` to differentiate
    the elliptic representation instead.
    """
    if d2 == "ode":
        phi, dphi = phi_jet(profile, z, order=1)
        d2phi = (phi * phi - profile.c_const - 4.0 * phi) / (1.0 + profile.params.a ** 2)
    elif d2 == "jacobi":
        phi, dphi, d2phi = phi_jet(profile, z, order=2)
    else:
        raise ValueError(f"unknown d2 mode {d2!r}")
    return phi, dphi, d2phi


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)
_GL_PANELS = 16


def _integrate_phi(profile, upper):
    """int_0^upper phi for each ``0 <= upper <= period``, composite Gauss-Legendre."""
    upper = np.asarray(upper, dtype=float)
    width = upper / _GL_PANELS
    left = np.arange(_GL_PANELS) * width[..., None]
    nodes = left[..., None] + 0.5 * width[..., None, None] * (_GL_NODES + 1.0)
    values = phi_jet(profile, nodes, order=0)[0]
    return 0.5 * width * np.einsum("...pq,q->...", values, _GL_WEIGHTS)


def antiderivative(profile, z):
    """``Gamma(z) = int_0^z phi``, normalized by ``Gamma(0) = 0``.

    Whole periods are accumulated from a single quadrature over one period.
    """
    scalar_input = np.ndim(z) == 0
    z = np.asarray(z, dtype=float)
    period = profile.period
    turns = np.floor(z / period)
    rest = z - turns * period
    per_period = _integrate_phi(profile, np.array(period))
    value = turns * per_period + _integrate_phi(profile, rest)
    return float(value) if scalar_input else value


def flux_closed_form(profile):
    """Flux implied by the roots: ``-2 sqrt(6) n sqrt(1+a^2)/sqrt(D) [phi3 K - D E]``."""
    phi1, _, phi3 = profile.roots
    n, a = profile.params.n, profile.params.a
    spread = phi3 - phi1
    K, E = complete_KE(profile.alpha)
    return (-2.0 * math.sqrt(6.0) * n * math.sqrt(1.0 + a * a) / math.sqrt(spread)
            * (phi3 * K - spread * E))


def potential(profile, phi):
    """Oscillator potential ``V(phi) = (C phi + 2 phi^2 - phi^3/3) / (1 + a^2)``."""
    c = profile.c_const
    return (c * phi + 2.0 * phi * phi - phi**3 / 3.0) / (1.0 + profile.params.a ** 2)


def energy_bounds(c_const, a):
    """Open interval of mechanical energies giving bounded oscillations.

    The bounds are the potential at its minimum and maximum,
    ``phi = 2 -/+ sqrt(C + 4)``; requires ``C > -4``.
    """
    if c_const <= -4.0:
        raise ValueError("the potential has no minimum for C <= -4")
    s = math.sqrt(c_const + 4.0)
    scale = 2.0 / (3.0 * (1.0 + a * a))
    return scale * (s - 2.0) * (s - 2.0 - c_const), scale * (s + 2.0) * (s + 2.0 + c_const)
