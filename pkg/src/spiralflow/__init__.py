"""Exact spiral solutions of the stationary 2D Navier-Stokes equations.

Stationary solutions on the punctured plane that are invariant under scaling
combined with a rotation, together with the classical Hamel solutions, the
Stokes reference fields and quadrature-based verification tools.
"""

from .elliptic import DomainError, complete_E, complete_K, incomplete_F, jacobi
from .profile import (
    DegenerateProfile,
    InternalInconsistency,
    ModulusRangeError,
    NoSolution,
    ProfileError,
    ProfileSolution,
    SolutionParams,
    antiderivative,
    build_profile,
    compute_roots,
    eval_phi,
    flux_bound,
    flux_closed_form,
    shape_H,
    solve_modulus,
)
from .flowfield import (
    FlowSample,
    GeneralizedSpiral,
    HamelN0,
    HamelN0A,
    PolarPoint,
    StokesQuadrupole,
    StokesTorque,
    eval_hamel,
    eval_spiral,
    eval_stokes_reference,
    evaluate,
    streamline,
    to_cartesian,
)
from .diagnostics import (
    Case,
    DiagnosticsReport,
    VerifyConfig,
    asymptotic_compare,
    asymptotic_predict,
    existence_flux_bound,
    flux_quadrature,
    force_torque,
    torque_formula,
    verify,
)

__version__ = "0.1.0"
