"""Leading-order joint-density-matrix ingredients for one or two static detectors.

Local terms L_ij and the nonlocal term M are switching-weighted double
integrals of the derivative kernels, evaluated with the strip contour.  The
strip height is clamped below the first thermal-image pole of the inner
detector (local inverse temperature 8 pi M sqrt(f)); above it the deformation
theorem no longer applies and the result would pick up spurious residues.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional

import numpy as np

from .contour_quadrature import ContourSpec, QuadResult, QuadratureConfig, strip_double_integral
from .geometry import DomainError, SpacetimeParams, StaticDetector, metric_f, redshift_gamma
from .wightman import (VacuumKind, kernel_evaluator, require_kernel_preconditions,
                       strip_clearance)

_STRIP_SAFETY = 0.45  # fraction of the first image-pole height the strip may use


class Switching(Enum):
    MAIN_BODY = "main"      # exp(-(tau - tau0)^2 / sigma^2)
    APPENDIX = "appendix"   # exp(-tau^2 / (2 sigma^2)), peak pinned at 0


@dataclass(frozen=True)
class Scenario:
    spacetime: SpacetimeParams
    vacuum: VacuumKind
    det_a: StaticDetector
    det_b: StaticDetector
    switching: Switching = Switching.MAIN_BODY
    contour: ContourSpec = field(default_factory=ContourSpec)
    quad: QuadratureConfig = field(default_factory=QuadratureConfig)
    drop_vaidya_cross: bool = False

    def __post_init__(self):
        if self.det_b.radius < self.det_a.radius:
            raise DomainError("convention: r_B >= r_A")
        require_kernel_preconditions(self.vacuum, (self.det_a, self.det_b),
                                     self.spacetime.mass, self.contour.b)

    def detector(self, which: str) -> StaticDetector:
        if which == "A":
            return self.det_a
        if which == "B":
            return self.det_b
        raise ValueError("detector label must be 'A' or 'B'")


@dataclass
class PairState:
    """The four leading-order density-matrix ingredients (coupling absorbed)."""
    L_AA: complex
    L_BB: complex
    L_AB: complex
    M_nonlocal: complex
    errors: dict = field(default_factory=dict)
    converged: bool = True


def switching_fn(scenario: Scenario, det: StaticDetector):
    if scenario.switching is Switching.MAIN_BODY:
        tau0 = det.tau0
        return lambda tau: np.exp(-(tau - tau0) ** 2)
    return lambda tau: np.exp(-0.5 * tau * tau)


def support(scenario: Scenario, det: StaticDetector) -> tuple[float, float]:
    peak = det.tau0 if scenario.switching is Switching.MAIN_BODY else 0.0
    b = scenario.contour.b
    return (peak - b, peak + b)


def effective_strip_height(scenario: Scenario, inner: StaticDetector) -> float:
    clearance = strip_clearance(scenario.vacuum, inner, scenario.spacetime.mass)
    if math.isinf(clearance):
        return scenario.contour.h
    return min(scenario.contour.h, _STRIP_SAFETY * clearance)


def _double_integral(scenario: Scenario, outer: StaticDetector, inner: StaticDetector,
                     phase: str, omega: float, ordered: bool,
                     h_override: Optional[float] = None) -> QuadResult:
    """Strip integral of chi chi e^{i phase} A(x_outer(tau), x_inner(tau')).

    phase: "minus" -> exp(-i omega (tau - tau')) (local terms),
           "plus"  -> exp(+i omega (tau + tau')) (nonlocal term),
           "none"  -> no phase (commutator estimator).
    """
    M = scenario.spacetime.mass
    ev = kernel_evaluator(scenario.vacuum, outer, inner, M,
                          drop_cross=scenario.drop_vaidya_cross)
    chi_o = switching_fn(scenario, outer)
    chi_i = switching_fn(scenario, inner)
    out_lo, out_hi = support(scenario, outer)
    in_lo, in_hi = support(scenario, inner)
    if h_override is not None:
        h = h_override
    else:
        h = effective_strip_height(scenario, inner)
        # the deformed phase grows like e^{-omega h}: cap the height so the
        # growth stays ~e^15 and cancellation noise sits below the tolerances
        growth = max(0.0, -omega)
        if growth > 0.0:
            h = min(h, 15.0 / growth)

    if phase == "minus":
        def F(tau, zp):
            return (chi_o(tau) * chi_i(zp) * np.exp(-1j * omega * (tau - zp))
                    * ev(np.full(zp.shape, tau, dtype=np.complex128), zp))
    elif phase == "plus":
        def F(tau, zp):
            return (chi_o(tau) * chi_i(zp) * np.exp(1j * omega * (tau + zp))
                    * ev(np.full(zp.shape, tau, dtype=np.complex128), zp))
    else:
        def F(tau, zp):
            return (chi_o(tau) * chi_i(zp)
                    * ev(np.full(zp.shape, tau, dtype=np.complex128), zp))

    if ordered:
        if scenario.vacuum in (VacuumKind.MINKOWSKI, VacuumKind.THERMAL_FLAT):
            gamma = 1.0
        else:
            gamma = redshift_gamma(inner.radius, outer.radius, M)
        breaks = []
        pad = scenario.contour.edge_pad
        for edge in (in_lo - pad, in_hi + pad):
            if gamma != 0:
                t = edge / gamma
                if out_lo < t < out_hi:
                    breaks.append(t)
        spec = replace(scenario.contour, h=h, inner_upper=lambda tau: gamma * tau,
                       outer_breaks=tuple(breaks))
    else:
        spec = replace(scenario.contour, h=h, inner_upper=None, outer_breaks=())

    return strip_double_integral(F, (out_lo, out_hi), spec, scenario.quad,
                                 inner_interval=(in_lo, in_hi))


def L_element(scenario: Scenario, i: str, j: str,
              omega_override: Optional[float] = None) -> QuadResult:
    """lambda^2 * double integral of chi chi e^{-i Omega (tau - tau')} A(x_i, x_j)."""
    det_i = scenario.detector(i)
    det_j = scenario.detector(j)
    omega = omega_override if omega_override is not None else det_i.gap
    res = _double_integral(scenario, det_i, det_j, "minus", omega, ordered=False)
    lam2 = det_i.coupling * det_j.coupling
    return QuadResult(lam2 * res.value, lam2 * res.error, res.neval, res.converged)


def M_element(scenario: Scenario) -> QuadResult:
    """Nonlocal term: the sum of the two time-ordered strip integrals.

    Each term deforms its own inner (second kernel argument) time upward; the
    moving upper limit is the redshift-scaled ordering boundary gamma * tau.
    """
    omega = scenario.det_a.gap
    t1 = _double_integral(scenario, scenario.det_a, scenario.det_b, "plus", omega, ordered=True)
    t2 = _double_integral(scenario, scenario.det_b, scenario.det_a, "plus", omega, ordered=True)
    lam2 = scenario.det_a.coupling * scenario.det_b.coupling
    value = -lam2 * (t1.value + t2.value)
    error = lam2 * (t1.error + t2.error)
    # convergence is judged on the assembled sum, not per ordered term
    ok = error <= max(scenario.quad.abs_tol, scenario.quad.rel_tol * abs(value))
    return QuadResult(value, error, t1.neval + t2.neval, ok)


def ordered_M_terms(scenario: Scenario) -> tuple[QuadResult, QuadResult]:
    """The two time-ordered contributions to M separately (sign not applied)."""
    omega = scenario.det_a.gap
    t1 = _double_integral(scenario, scenario.det_a, scenario.det_b, "plus", omega, ordered=True)
    t2 = _double_integral(scenario, scenario.det_b, scenario.det_a, "plus", omega, ordered=True)
    return t1, t2


def pair_state(scenario: Scenario) -> PairState:
    """All four density-matrix ingredients, with quadrature error estimates."""
    laa = L_element(scenario, "A", "A")
    lbb = L_element(scenario, "B", "B")
    lab = L_element(scenario, "A", "B")
    m = M_element(scenario)
    total_noise = laa.value.real + lbb.value.real
    if total_noise > 0.1:
        warnings.warn(f"L_AA + L_BB = {total_noise:.3g} exceeds 0.1; "
                      "leading-order perturbation theory is strained")
    return PairState(
        L_AA=laa.value, L_BB=lbb.value, L_AB=lab.value, M_nonlocal=m.value,
        errors={"L_AA": laa.error, "L_BB": lbb.error, "L_AB": lab.error,
                "M_nonlocal": m.error},
        converged=laa.converged and lbb.converged and lab.converged and m.converged)


def transition_probability(scenario: Scenario, which: str,
                           omega_override: Optional[float] = None) -> float:
    """Excitation probability Re L_ii; negative gap override gives de-excitation."""
    return L_element(scenario, which, which, omega_override=omega_override).value.real


def edr_ratio(scenario: Scenario, which: str) -> float:
    """Excitation-to-deexcitation ratio Pr(+Omega) / Pr(-Omega)."""
    det = scenario.detector(which)
    up = transition_probability(scenario, which)
    down = transition_probability(scenario, which, omega_override=-det.gap)
    if down <= 0 or not math.isfinite(down):
        raise ArithmeticError(f"de-excitation probability {down} is not positive")
    return up / down


def tolman_beta(M: float, r: float) -> float:
    """Local inverse temperature 8 pi M sqrt(1 - 2M/r) of the static thermal state."""
    f = metric_f(r, M)
    if f <= 0:
        raise DomainError("Tolman temperature needs r > 2M")
    return 8.0 * math.pi * M * math.sqrt(f)


def longtime_rate(vacuum: VacuumKind, omega: float, beta_loc: float) -> float:
    """Long-interaction transition-rate reference curves for the static vacua.

    Signs follow positivity of the rates and the ratio identities
    R_HHI = e^{-beta O} and R_Unruh = 1/(2 e^{beta O} - 1): the zero-flux rate
    is |O| Theta(-O) and the one-sided-flux rate is its average with the
    thermal one (half the density of states).
    """
    if vacuum is VacuumKind.BOULWARE:
        return -omega if omega < 0 else 0.0
    if vacuum is VacuumKind.UNRUH:
        step = -0.5 * omega if omega < 0 else 0.0
        return step + 0.5 * omega / math.expm1(beta_loc * omega)
    if vacuum is VacuumKind.HHI:
        return omega / math.expm1(beta_loc * omega)
    raise ValueError(f"no stationary long-time rate for the {vacuum.value} vacuum")
