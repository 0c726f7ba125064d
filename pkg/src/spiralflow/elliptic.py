"""Elliptic integrals and Jacobi elliptic functions.

All routines take the *modulus* ``alpha`` (not the parameter ``m = alpha**2``),
following the Gradshteyn & Ryzhik convention::

    F(x; alpha) = int_0^x dt / sqrt((1 - t^2) (1 - alpha^2 t^2))

Complete integrals use the arithmetic-geometric mean, the incomplete integral
of the first kind uses Carlson's symmetric form R_F, and the Jacobi functions
are computed by descending Landen transformation (the AGM sequence run
backwards).
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

__all__ = [
    "DomainError",
    "JacobiTriple",
    "complete_K",
    "complete_E",
    "complete_KE",
    "incomplete_F",
    "carlson_rf",
    "jacobi",
]

# below this modulus the alpha = 0 closed forms are exact to double precision
SMALL_MODULUS = 1e-8
AGM_RTOL = 1e-15
_MAX_AGM_STEPS = 64


class DomainError(ValueError):
    """Argument outside the domain where an elliptic function is finite."""


class JacobiTriple(NamedTuple):
    sn: np.ndarray | float
    cn: np.ndarray | float
    dn: np.ndarray | float


def _unwrap(value, scalar_input):
    if scalar_input:
        return float(value)
    return value


def _check_modulus(alpha, allow_one=False):
    alpha = np.asarray(alpha, dtype=float)
    if np.any(~np.isfinite(alpha)) or np.any(alpha < 0):
        raise DomainError("modulus must be finite and non-negative")
    if allow_one:
        if np.any(alpha > 1):
            raise DomainError("modulus must satisfy 0 <= alpha <= 1")
    elif np.any(alpha >= 1):
        raise DomainError("modulus must satisfy 0 <= alpha < 1 (K diverges at alpha = 1)")
    return alpha


def _complementary(alpha):
    """sqrt(1 - alpha^2) without cancellation near alpha = 1."""
    return np.sqrt((1.0 - alpha) * (1.0 + alpha))


def complete_KE(alpha):
    """Return ``(K(alpha), E(alpha))`` from a single AGM sweep.

    Uses ``E = K (1 - sum_n 2^(n-1) c_n^2)`` with ``c_0 = alpha``, where the
    ``c_n`` are generated as ``c_n^2 / (4 a_{n+1})`` to avoid the cancellation
    in ``(a_n - b_n) / 2`` for small moduli.
    """
    scalar_input = np.ndim(alpha) == 0
    alpha = _check_modulus(alpha)
    a = np.ones_like(alpha)
    b = _complementary(alpha)
    c = alpha.copy()
    weight = 0.5
    total = weight * c * c
    for _ in range(_MAX_AGM_STEPS):
        a_next = 0.5 * (a + b)
        c = c * c / (4.0 * a_next)
        b = np.sqrt(a * b)
        a = a_next
        weight *= 2.0
        total = total + weight * c * c
        if np.all(np.abs(a - b) <= AGM_RTOL * a) and np.all(weight * c * c <= 1e-17 * total + 1e-300):
            break
    else:  # pragma: no cover - AGM converges in < 10 steps for alpha < 1
        raise RuntimeError("AGM iteration failed to converge")
    K = np.pi / (2.0 * a)
    E = K * (1.0 - total)
    small = alpha < SMALL_MODULUS
    if np.any(small):
        K = np.where(small, 0.5 * np.pi, K)
        E = np.where(small, 0.5 * np.pi, E)
    return _unwrap(K, scalar_input), _unwrap(E, scalar_input)


def complete_K(alpha):
    """Complete elliptic integral of the first kind, ``K(alpha) = F(1; alpha)``.

    Raises :class:`DomainError` unless ``0 <= alpha < 1``.
    """
    return complete_KE(alpha)[0]


def complete_E(alpha):
    """Complete elliptic integral of the second kind on ``0 <= alpha <= 1``."""
    scalar_input = np.ndim(alpha) == 0
    alpha = _check_modulus(alpha, allow_one=True)
    one = alpha == 1.0
    if not np.any(one):
        return complete_KE(alpha if not scalar_input else float(alpha))[1]
    E = np.ones_like(alpha)
    if np.any(~one):
        E[~one] = complete_KE(alpha[~one])[1]
    return _unwrap(E, scalar_input)


def carlson_rf(x, y, z):
    """Carlson's symmetric integral R_F(x, y, z) for non-negative arguments.

    At most one argument may vanish. Duplication is iterated until the
    arguments agree to 1e-3 relative, after which the fifth-order Taylor
    expansion is accurate to roughly machine precision.
    """
    x, y, z = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (x, y, z)))
    x, y, z = x.copy(), y.copy(), z.copy()
    for _ in range(60):
        mean = (x + y + z) / 3.0
        spread = np.max(np.abs(np.stack([x, y, z]) - mean) / mean)
        if spread < 1e-3:
            break
        sx, sy, sz = np.sqrt(x), np.sqrt(y), np.sqrt(z)
        lam = sx * sy + sy * sz + sz * sx
        x = 0.25 * (x + lam)
        y = 0.25 * (y + lam)
        z = 0.25 * (z + lam)
    mean = (x + y + z) / 3.0
    dx = 1.0 - x / mean
    dy = 1.0 - y / mean
    dz = -(dx + dy)
    e2 = dx * dy - dz * dz
    e3 = dx * dy * dz
    series = 1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0
    return series / np.sqrt(mean)


def incomplete_F(x, alpha):
    """Incomplete elliptic integral of the first kind in the algebraic form.

    ``F(x; alpha) = int_0^x dt / sqrt((1 - t^2)(1 - alpha^2 t^2))`` for
    ``0 <= x <= 1``; equivalently the Legendre form with amplitude ``arcsin x``.
    """
    scalar_input = np.ndim(x) == 0
    alpha = float(_check_modulus(alpha))
    x = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(x)) or np.any(x < 0) or np.any(x > 1):
        raise DomainError("incomplete_F requires 0 <= x <= 1")
    if alpha < SMALL_MODULUS:
        return _unwrap(np.arcsin(x), scalar_input)
    one_minus_x2 = (1.0 - x) * (1.0 + x)
    one_minus_ax2 = (1.0 - alpha * x) * (1.0 + alpha * x)
    value = x * carlson_rf(one_minus_x2, one_minus_ax2, np.ones_like(x))
    return _unwrap(value, scalar_input)


def _landen_sn_cn(u, alpha):
    """sn and cn on a reduced argument via the descending Landen/AGM scheme."""
    a = [1.0]
    c = [alpha]
    b = float(_complementary(alpha))
    while c[-1] > 1e-17 * a[-1] and len(a) < _MAX_AGM_STEPS:
        a_next = 0.5 * (a[-1] + b)
        c.append(c[-1] * c[-1] / (4.0 * a_next))
        b = np.sqrt(a[-1] * b)
        a.append(a_next)
    phi = (2.0 ** (len(a) - 1)) * a[-1] * u
    for k in range(len(a) - 1, 0, -1):
        phi = 0.5 * (phi + np.arcsin(c[k] / a[k] * np.sin(phi)))
    return np.sin(phi), np.cos(phi)


def jacobi(u, alpha, K=None):
    """Jacobi elliptic functions ``(sn, cn, dn)`` of real argument ``u``.

    ``sn(., alpha)`` inverts :func:`incomplete_F` on ``[0, K]`` and is continued
    to the real line with ``sn(-u) = -sn(u)``, ``sn(2K - u) = sn(u)`` and
    period ``4K``. ``dn`` is evaluated as ``sqrt(alpha'^2 + alpha^2 cn^2)``,
    which keeps ``dn^2 + alpha^2 sn^2 = 1`` exact up to rounding even for
    moduli close to one. A precomputed ``K = complete_K(alpha)`` may be passed
    to skip one AGM sweep in tight loops.
    """
    scalar_input = np.ndim(u) == 0
    alpha = float(_check_modulus(alpha))
    u = np.asarray(u, dtype=float)
    if np.any(~np.isfinite(u)):
        raise DomainError("jacobi requires a finite argument")
    if alpha < SMALL_MODULUS:
        sn, cn = np.sin(u), np.cos(u)
        dn = np.sqrt(1.0 - alpha * alpha * sn * sn)
        return JacobiTriple(*(_unwrap(v, scalar_input) for v in (sn, cn, dn)))

    if K is None:
        K = complete_K(alpha)
    # reduce to t in [0, K] using odd symmetry, half-period and reflection
    odd = np.where(u < 0, -1.0, 1.0)
    t = np.mod(np.abs(u), 4.0 * K)
    flip = t >= 2.0 * K
    t = np.where(flip, t - 2.0 * K, t)
    reflect = t > K
    t = np.where(reflect, 2.0 * K - t, t)
    sn, cn = _landen_sn_cn(t, alpha)
    half = np.where(flip, -1.0, 1.0)
    sn = odd * half * sn
    cn = half * np.where(reflect, -cn, cn)
    comp2 = (1.0 - alpha) * (1.0 + alpha)
    dn = np.sqrt(comp2 + alpha * alpha * cn * cn)
    return JacobiTriple(*(_unwrap(v, scalar_input) for v in (sn, cn, dn)))
