"""Derivative-coupling two-point kernels for the six field states.

The kernels are written without an i-epsilon term: the distributional
prescription is supplied entirely by the contour engine, which deforms the
second (inner) time argument into the upper half plane.  Evaluating a kernel
at a real-axis pole is therefore a contour-configuration bug and raises.
"""

from __future__ import annotations

import math
from enum import Enum

import numpy as np

from ._backend import get_backend
from ._kernels_numpy import KIND_COLLAPSE, KIND_MIXED, KIND_RATIONAL, KIND_THERMAL
from .geometry import DomainError, StaticDetector, metric_f, shell_admissible, tortoise


class VacuumKind(Enum):
    BOULWARE = "boulware"
    UNRUH = "unruh"
    HHI = "hhi"
    VAIDYA = "vaidya"
    MINKOWSKI = "minkowski"
    THERMAL_FLAT = "thermal_flat"


BLACK_HOLE_VACUA = (VacuumKind.BOULWARE, VacuumKind.UNRUH, VacuumKind.HHI, VacuumKind.VAIDYA)

_KIND_OF = {
    VacuumKind.BOULWARE: KIND_RATIONAL,
    VacuumKind.MINKOWSKI: KIND_RATIONAL,
    VacuumKind.UNRUH: KIND_MIXED,
    VacuumKind.HHI: KIND_THERMAL,
    VacuumKind.THERMAL_FLAT: KIND_THERMAL,
    VacuumKind.VAIDYA: KIND_COLLAPSE,
}

_FLAT = (VacuumKind.MINKOWSKI, VacuumKind.THERMAL_FLAT)


class PoleEvaluationError(ArithmeticError):
    """A kernel denominator fell below the 1e-300 guard (bad contour)."""


def _detector_pack(vacuum: VacuumKind, det: StaticDetector, M: float):
    """(sqrt_f, rstar) for curved vacua; (1, position) for the flat ones."""
    if vacuum in _FLAT:
        return 1.0, det.radius
    if M <= 0:
        raise DomainError("black-hole vacua need M > 0")
    f = metric_f(det.radius, M)
    if f <= 0:
        raise DomainError("detector must be strictly outside the horizon")
    return math.sqrt(f), tortoise(det.radius, M)


def require_kernel_preconditions(vacuum: VacuumKind, dets, M: float, b: float = 5.0):
    if vacuum is VacuumKind.THERMAL_FLAT and M <= 0:
        raise DomainError("flat thermal bath needs M > 0 (temperature 1/(8 pi M))")
    if vacuum is VacuumKind.VAIDYA:
        for det in dets:
            if not shell_admissible(det, M, b):
                raise DomainError(
                    f"switching support of detector at r={det.radius} crosses the shell "
                    f"(tau0={det.tau0}, M={M}, b={b})")


def kernel_evaluator(vacuum: VacuumKind, det_i: StaticDetector, det_j: StaticDetector,
                     M: float, drop_cross: bool = False, backend=None):
    """Fast paired-array evaluator f(tau_i, tau_j) -> values for fixed detectors."""
    kind = _KIND_OF[vacuum]
    sfi, rsti = _detector_pack(vacuum, det_i, M)
    sfj, rstj = _detector_pack(vacuum, det_j, M)
    mod = backend or get_backend()

    def evaluate(tau_i, tau_j):
        vals, nbad = mod.kernel_vals(kind, M, sfi, rsti, sfj, rstj,
                                     np.asarray(tau_i, dtype=np.complex128),
                                     np.asarray(tau_j, dtype=np.complex128),
                                     drop_cross)
        if nbad:
            raise PoleEvaluationError(
                f"{vacuum.value} kernel hit {nbad} near-pole/non-finite points "
                "(denominator below 1e-300); the contour is misconfigured")
        return vals

    return evaluate


def kernel(vacuum: VacuumKind, det_i: StaticDetector, tau, det_j: StaticDetector,
           taup, M: float, drop_cross: bool = False):
    """Kernel value(s) A_alpha(x_i(tau), x_j(taup)); taup may be complex.

    Scalars in, scalar out; arrays broadcast elementwise.
    """
    ev = kernel_evaluator(vacuum, det_i, det_j, M, drop_cross=drop_cross)
    ti, tj = np.broadcast_arrays(np.asarray(tau, dtype=np.complex128),
                                 np.asarray(taup, dtype=np.complex128))
    vals = ev(ti.ravel(), tj.ravel()).reshape(ti.shape)
    if vals.shape == ():
        return complex(vals)
    return vals


def commutator_kernel(vacuum: VacuumKind, det_i: StaticDetector, tau,
                      det_j: StaticDetector, taup, M: float, drop_cross: bool = False):
    """State-independent antisymmetrization kernel(i,tau;j,taup) - kernel(j,taup;i,tau).

    Pointwise this vanishes off the poles (the kernels are symmetric); the
    distributional content only appears once each ordering is integrated with
    its own contour, which `correlations.signalling_estimator` does.
    """
    a = kernel(vacuum, det_i, tau, det_j, taup, M, drop_cross)
    b = kernel(vacuum, det_j, taup, det_i, tau, M, drop_cross)
    return a - b


def strip_clearance(vacuum: VacuumKind, det_inner: StaticDetector, M: float) -> float:
    """Height of the first thermal-image pole above the real inner-time axis.

    The exponential (Kruskal) kernels are periodic in imaginary proper time
    with the local inverse temperature 8 pi M sqrt(f); the strip must stay
    below the first image.  Rational kernels have no ladder (returns inf).
    """
    if vacuum in (VacuumKind.BOULWARE, VacuumKind.MINKOWSKI):
        return math.inf
    if vacuum is VacuumKind.THERMAL_FLAT:
        return 8.0 * math.pi * M
    f = metric_f(det_inner.radius, M)
    if f <= 0:
        raise DomainError("detector must be strictly outside the horizon")
    return 8.0 * math.pi * M * math.sqrt(f)
