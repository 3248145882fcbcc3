"""Correlation measures built from the pair state: concurrence, mutual
information, and the commutator-based signalling estimator."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .contour_quadrature import QuadResult
from .detector_matrix import PairState, Scenario, _double_integral, pair_state


@dataclass
class CorrelationReport:
    concurrence: float
    mutual_information: float
    L_plus: float
    L_minus: float
    estimator: float
    pair: PairState


def concurrence(p: PairState) -> float:
    """2 max{0, |M| - sqrt(L_AA L_BB)} at leading order."""
    laa, lbb = p.L_AA.real, p.L_BB.real
    if laa < 0 or lbb < 0:
        raise ArithmeticError(f"negative local terms (L_AA={laa}, L_BB={lbb}): "
                              "upstream quadrature failure")
    return 2.0 * max(0.0, abs(p.M_nonlocal) - math.sqrt(laa * lbb))


def _xlogx(x: float) -> float:
    return 0.0 if x == 0.0 else x * math.log(x)


def mutual_information(p: PairState) -> float:
    """L+ log L+ + L- log L- - L_AA log L_AA - L_BB log L_BB (0 log 0 = 0).

    Roundoff negatives in (-1e-14, 0) are clamped to zero; anything more
    negative indicates an upstream failure and raises.
    """
    laa, lbb = p.L_AA.real, p.L_BB.real
    if laa <= 0 or lbb <= 0:
        raise ArithmeticError("mutual information needs positive local terms")
    rad = math.sqrt((laa - lbb) ** 2 + 4.0 * abs(p.L_AB) ** 2)
    lp = 0.5 * (laa + lbb + rad)
    lm = 0.5 * (laa + lbb - rad)
    lm = max(lm, 0.0)  # roundoff guard; exact lm >= laa*lbb-|L_AB|^2 side
    info = _xlogx(lp) + _xlogx(lm) - _xlogx(laa) - _xlogx(lbb)
    if info < 0:
        if info > -1e-14:
            return 0.0
        raise ArithmeticError(f"mutual information {info} < 0 beyond roundoff")
    return info


def eigenvalue_split(p: PairState) -> tuple[float, float]:
    laa, lbb = p.L_AA.real, p.L_BB.real
    rad = math.sqrt((laa - lbb) ** 2 + 4.0 * abs(p.L_AB) ** 2)
    return 0.5 * (laa + lbb + rad), max(0.5 * (laa + lbb - rad), 0.0)


def signalling_estimator(scenario: Scenario) -> QuadResult:
    """-(lambda^2/2) Im of the window-weighted, antisymmetrized kernel integral.

    Each ordering is integrated with its own upward deformation of the second
    kernel argument; the value is state-independent (the commutator is a
    c-number), which the validation suite checks across all four vacua.
    """
    term_ab = _double_integral(scenario, scenario.det_a, scenario.det_b,
                               "none", 0.0, ordered=False)
    term_ba = _double_integral(scenario, scenario.det_b, scenario.det_a,
                               "none", 0.0, ordered=False)
    lam2 = scenario.det_a.coupling * scenario.det_b.coupling
    value = -0.5 * lam2 * (term_ab.value - term_ba.value).imag
    error = 0.5 * lam2 * (term_ab.error + term_ba.error)
    # a difference of integrals can be exactly zero; relative convergence is
    # judged at the scale of the terms being subtracted
    scale = max(abs(value), 0.5 * lam2 * max(abs(term_ab.value), abs(term_ba.value)))
    ok = error <= max(scenario.quad.abs_tol, scenario.quad.rel_tol * scale)
    return QuadResult(value, error, term_ab.neval + term_ba.neval, ok)


def correlation_report(scenario: Scenario) -> CorrelationReport:
    p = pair_state(scenario)
    lp, lm = eigenvalue_split(p)
    est = signalling_estimator(scenario)
    return CorrelationReport(
        concurrence=concurrence(p),
        mutual_information=mutual_information(p),
        L_plus=lp, L_minus=lm,
        estimator=est.value,
        pair=p)
