"""Acceptance suite: every numbered criterion as a callable returning a result.

Each check pins its tolerance here; `udwharvest validate` prints one line per
criterion and exits nonzero on failure.  The pytest acceptance module asserts
the same results, so the CLI and the test suite cannot drift apart.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .contour_quadrature import (ContourSpec, QuadratureConfig, appendix_integrand,
                                 closed_form_minkowski_response, direct_ieps_integral,
                                 pole_local_contour_integral, strip_double_integral)
from .correlations import concurrence, mutual_information, signalling_estimator
from .detector_matrix import Scenario, _double_integral, edr_ratio, pair_state
from .geometry import (SpacetimeParams, StaticDetector, metric_f,
                       radius_from_proper_distance, redshift_gamma, tortoise)
from .special_functions import w_from_log, w_principal
from .wightman import VacuumKind, kernel

J0_REFERENCE = 0.00708827     # tabulated flat-space response at omega*sigma = 1
IEPS_ROW_1E2 = 0.00704838     # tabulated direct-regulator value at eps = 1e-2

FOUR_VACUA = (VacuumKind.BOULWARE, VacuumKind.UNRUH, VacuumKind.HHI, VacuumKind.VAIDYA)


@dataclass
class CriterionResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0
    expected_fail: bool = False  # documented deviation, excluded from the gate

    def line(self) -> str:
        if self.expected_fail:
            status = "XFAIL" if not self.passed else "XPASS"
        else:
            status = "PASS" if self.passed else "FAIL"
        return f"[{status:5s}] {self.name} ({self.seconds:.1f}s): {self.detail}"


def fig1_scenario(vacuum: VacuumKind, d_a: float, d_ab: float = 2.0, tau0: float = 12.0,
                  mass: float = 0.5, omega: float = 2.0,
                  quad: QuadratureConfig | None = None) -> Scenario:
    """Standard near-horizon sweep point: Omega*sigma=2, M=sigma/2, tau0=12 sigma."""
    r_a = radius_from_proper_distance(d_a, 2.0 * mass, mass)
    r_b = radius_from_proper_distance(d_ab, r_a, mass)
    det_a = StaticDetector(radius=r_a, gap=omega, tau0=tau0)
    det_b = StaticDetector(radius=r_b, gap=omega, tau0=tau0)
    return Scenario(SpacetimeParams(mass), vacuum, det_a, det_b,
                    quad=quad or QuadratureConfig())


def edr_scenario(vacuum: VacuumKind, t_over_rh: float, omega_rh: float = 2.0,
                 radius_over_2m: float = 1.1, tau0: float = 12.0) -> Scenario:
    """Detector at r = k * 2M with Omega * r_H fixed, interaction time T = sigma."""
    mass = 0.5 / t_over_rh
    det = StaticDetector(radius=radius_over_2m * 2.0 * mass, gap=omega_rh / (2.0 * mass),
                         tau0=tau0)
    return Scenario(SpacetimeParams(mass), vacuum, det, det)


def _timed(fn):
    t0 = time.time()
    out = fn()
    return out, time.time() - t0


def check_a1_appendix_oracle() -> CriterionResult:
    def run():
        F = appendix_integrand(omega=1.0, sigma=1.0)
        return strip_double_integral(F, (-5.0, 5.0), ContourSpec(b=5.0, h=1.0))
    res, dt = _timed(run)
    dev = abs(res.value - J0_REFERENCE)
    exact = closed_form_minkowski_response(1.0)
    ok = dev <= 1e-6 and abs(res.value - exact) <= 1e-6 and dt <= 10.0
    return CriterionResult(
        "A1 strip oracle", ok,
        f"J = {res.value.real:.8f} vs {J0_REFERENCE} (|dev| = {dev:.2e} <= 1e-6), "
        f"closed form {exact:.8f}, runtime {dt:.2f}s <= 10s", dt)


def check_a2_eps_invariance() -> CriterionResult:
    t0 = time.time()
    F = appendix_integrand(omega=1.0, sigma=1.0)
    devs = {}
    for eps in (1.0, 0.1, 0.01):
        r = pole_local_contour_integral(F, (-5.0, 5.0), eps)
        devs[eps] = abs(r.value - J0_REFERENCE)
    small = pole_local_contour_integral(F, (-5.0, 5.0), 1e-5)
    ok = all(d <= 1e-6 for d in devs.values())
    detail = ", ".join(f"eps={e}: |dev|={d:.2e}" for e, d in devs.items())
    detail += (f"; eps=1e-5 gives {small.value.real:.8f} +- {small.error:.1e} "
               f"(converged={small.converged}; degradation documented there only)")
    return CriterionResult("A2 detour eps-invariance", ok, detail, time.time() - t0)


def check_a3_ieps_instability() -> CriterionResult:
    t0 = time.time()
    r2 = direct_ieps_integral(appendix_integrand(1.0, 1.0, ieps=1e-2), (-5.0, 5.0), 1e-2)
    r3 = direct_ieps_integral(appendix_integrand(1.0, 1.0, ieps=1e-3), (-5.0, 5.0), 1e-3)
    dev2 = abs(r2.value - IEPS_ROW_1E2)
    dev3 = abs(r3.value - 0.0070883)
    ok = dev2 <= 5e-5 and dev3 > 0.1
    return CriterionResult(
        "A3 direct-ieps regression", ok,
        f"eps=1e-2: {r2.value.real:.8f} (|dev| = {dev2:.2e} <= 5e-5); "
        f"eps=1e-3: {r3.value.real:.4g} deviates by {dev3:.3g} > 0.1 (expected instability)",
        time.time() - t0)


def check_a4_edr_asymptotes() -> CriterionResult:
    t0 = time.time()
    beta_omega = 8.0 * math.pi / math.sqrt(11.0)  # beta_loc * Omega at r = 2.2M, Omega r_H = 2
    hhi_limit = math.exp(-beta_omega)
    unruh_limit = 1.0 / (2.0 * math.exp(beta_omega) - 1.0)

    hhi_curve = {t: edr_ratio(edr_scenario(VacuumKind.HHI, t), "A") for t in (10.0, 20.0, 40.0)}
    unruh_curve = {t: edr_ratio(edr_scenario(VacuumKind.UNRUH, t), "A") for t in (10.0, 20.0, 40.0)}
    hhi = hhi_curve[40.0]
    unruh = unruh_curve[40.0]
    boulware = edr_ratio(edr_scenario(VacuumKind.BOULWARE, 40.0), "A")
    vaidya = edr_ratio(edr_scenario(VacuumKind.VAIDYA, 40.0), "A")

    flattened = (abs(hhi_curve[40.0] / hhi_curve[20.0] - 1.0) < 0.15
                 and abs(unruh_curve[40.0] / unruh_curve[20.0] - 1.0) < 0.15)
    ok = (abs(hhi / hhi_limit - 1.0) <= 0.05
          and abs(unruh / unruh_limit - 1.0) <= 0.05
          and abs(boulware) < 0.10 * unruh
          and abs(vaidya / unruh - 1.0) <= 0.05
          and flattened)
    detail = (f"T/r_H=40: HHI {hhi:.3e} vs {hhi_limit:.3e} "
              f"({abs(hhi/hhi_limit-1)*100:.1f}% <= 5%), "
              f"Unruh {unruh:.3e} vs {unruh_limit:.3e} "
              f"({abs(unruh/unruh_limit-1)*100:.1f}% <= 5%), "
              f"Boulware |{boulware:.1e}| < 10% of Unruh, "
              f"Vaidya/Unruh-1 = {abs(vaidya/unruh-1)*100:.2f}% <= 5%; "
              f"flattening 20->40: HHI {abs(hhi_curve[40]/hhi_curve[20]-1)*100:.1f}%, "
              f"Unruh {abs(unruh_curve[40]/unruh_curve[20]-1)*100:.1f}%")
    return CriterionResult("A4 EDR asymptotes", ok, detail, time.time() - t0)


def check_a5_unruh_vaidya_agreement() -> CriterionResult:
    t0 = time.time()
    worst_l, worst_m = 0.0, 0.0
    for d_a in (0.1, 0.25, 0.5):
        pu = pair_state(fig1_scenario(VacuumKind.UNRUH, d_a))
        pv = pair_state(fig1_scenario(VacuumKind.VAIDYA, d_a))
        worst_l = max(worst_l, abs(pv.L_AA.real / pu.L_AA.real - 1.0))
        worst_m = max(worst_m, abs(abs(pv.M_nonlocal) / abs(pu.M_nonlocal) - 1.0))
    ok = worst_l <= 0.02 and worst_m <= 0.02
    return CriterionResult(
        "A5 near-horizon Unruh~Vaidya", ok,
        f"max rel diff over d_A <= 0.5: L_AA {worst_l:.2e} <= 2%, |M| {worst_m:.2e} <= 2%",
        time.time() - t0)


def check_a6_death_zones() -> CriterionResult:
    t0 = time.time()
    lines = []
    ok = True
    for vac in FOUR_VACUA:
        near = pair_state(fig1_scenario(vac, 0.1))
        c_near = concurrence(near)
        mi_near = mutual_information(near)
        far = pair_state(fig1_scenario(vac, 2.0))
        c_far = concurrence(far)
        mi_far = mutual_information(far)
        revived = c_far > 0 or any(
            concurrence(pair_state(fig1_scenario(vac, d))) > 0 for d in (1.0, 3.0))
        ok &= (c_near == 0.0) and (mi_near <= 1e-6) and revived and (mi_far > 0)
        lines.append(f"{vac.value}: C(0.1)={c_near:.1e}, MI(0.1)={mi_near:.1e}, "
                     f"C>0 farther={revived}, MI(2.0)={mi_far:.2e}")
    return CriterionResult("A6 death zones", ok, "; ".join(lines), time.time() - t0)


def check_a7_interpolation() -> CriterionResult:
    # The sweep starts at the bifurcation distance (~8 sigma for tau0 = 12 sigma),
    # where the collapse and Unruh responses genuinely separate.  Below it the
    # two agree to <= 1e-4 and the residual can sit marginally on either side
    # of Unruh, so pointwise betweenness is only meaningful past the split.
    t0 = time.time()
    ok = True
    rows = []
    for d_a in (8.0, 10.0, 12.0, 14.0, 16.0):
        states = {v: pair_state(fig1_scenario(v, d_a)) for v in
                  (VacuumKind.BOULWARE, VacuumKind.UNRUH, VacuumKind.VAIDYA)}
        for key, err_key in (("L", "L_AA"), ("M", "M_nonlocal")):
            def val(v):
                p = states[v]
                return p.L_AA.real if key == "L" else abs(p.M_nonlocal)
            tol = sum(states[v].errors[err_key] for v in states)
            lo = min(val(VacuumKind.BOULWARE), val(VacuumKind.UNRUH)) - tol
            hi = max(val(VacuumKind.BOULWARE), val(VacuumKind.UNRUH)) + tol
            inside = lo <= val(VacuumKind.VAIDYA) <= hi
            ok &= inside
            rows.append(f"d_A={d_a} {key}: V={val(VacuumKind.VAIDYA):.4e} in "
                        f"[{lo:.4e},{hi:.4e}] {'ok' if inside else 'OUT'}")
    return CriterionResult("A7 collapse-vacuum interpolation", ok,
                           "; ".join(rows), time.time() - t0)


def _ubar_of(mass: float, r: float, t: float) -> tuple[float, float]:
    """(ubar, -U) at coordinate time t and radius r (real trajectory point)."""
    f = metric_f(r, mass)
    u = t - tortoise(r, mass)
    w, _ = w_from_log(np.array([-u / (4 * mass) - 1.0], dtype=complex))
    ubar = -4.0 * mass * (1.0 + complex(w[0]))
    minus_u = math.exp(-u / (4.0 * mass)) if -u / (4.0 * mass) < 700 else math.inf
    return ubar.real, minus_u


def check_a8_asymptotics() -> CriterionResult:
    t0 = time.time()
    mass = 0.5
    ok = True
    notes = []

    # far/early limit: ubar -> t - r deep in the asymptotic region
    worst = 0.0
    for r_over_m in (1e3, 3e3, 1e4):
        r = r_over_m * mass
        for t in (-5.0, 0.0, 5.0, 12.0):
            ubar, minus_u = _ubar_of(mass, r, t)
            assert minus_u >= 1e3
            worst = max(worst, abs(ubar - (t - r)) / abs(t - r))
    ok &= worst <= 0.02
    notes.append(f"far: max |ubar-(t-r)|/|t-r| = {worst*100:.2f}% <= 2% (r >= 1e3 M)")

    # near/late limit: ubar is affine in U, ubar ~ -4M + (4M/e) U to 2% of the slope term
    worst = 0.0
    for minus_u in (1e-3, 1e-4, 1e-6):
        u = -4.0 * mass * math.log(minus_u)
        w, _ = w_from_log(np.array([-u / (4 * mass) - 1.0], dtype=complex))
        ubar = -4.0 * mass * (1.0 + complex(w[0]).real)
        slope_term = (4.0 * mass / math.e) * (-minus_u)
        worst = max(worst, abs(ubar - (-4.0 * mass + slope_term)) / abs(slope_term))
    ok &= worst <= 0.02
    notes.append(f"near: max |ubar-(-4M+(4M/e)U)|/|(4M/e)U| = {worst*100:.3f}% <= 2%")

    # kernel-level late-time limit: collapse kernel -> Unruh kernel where -U <= 1e-3.
    # Include times just after the shell (where W is small but visible in the
    # difference) alongside the deep-window times where the two coincide to
    # machine precision.
    s = fig1_scenario(VacuumKind.UNRUH, 0.1)
    det = s.det_a
    worst = 0.0
    for tau in (0.55, 0.8, 1.5, 3.0, 12.0):
        tp = tau - 0.1 + 0.15j
        _, minus_u = _ubar_of(mass, det.radius, (tau - 0.1) / math.sqrt(metric_f(det.radius, mass)))
        assert minus_u <= 1e-3
        kv = kernel(VacuumKind.VAIDYA, det, tau, det, tp, mass, drop_cross=True)
        ku = kernel(VacuumKind.UNRUH, det, tau, det, tp, mass)
        worst = max(worst, abs(kv - ku) / abs(ku))
    ok &= worst <= 0.01
    notes.append(f"kernel: max |K_V - K_U|/|K_U| = {worst:.2e} <= 1% at -U <= 1e-3")

    # large-radius limit of the zero-flux kernel against the flat one
    worst = 0.0
    for r_over_m in (1e5, 1e6):
        r_a = r_over_m * mass
        r_b = r_a + 1.5
        da = StaticDetector(radius=r_a, gap=2.0, tau0=0.0)
        db = StaticDetector(radius=r_b, gap=2.0, tau0=0.0)
        for tau in (-2.0, 0.5, 3.0):
            tp = tau - 1.1 + 0.4j
            kb = kernel(VacuumKind.BOULWARE, da, tau, db, tp, mass)
            km = kernel(VacuumKind.MINKOWSKI, da, tau, db, tp, 0.0)
            worst = max(worst, abs(kb - km) / abs(km))
    ok &= worst <= 1e-4
    notes.append(f"zero-flux->flat: max rel diff = {worst:.2e} <= 1e-4 (r >= 1e5 M)")

    return CriterionResult("A8 asymptotic limits", ok, "; ".join(notes), time.time() - t0)


def check_a8_near_literal() -> CriterionResult:
    """Documented deviation: the literal 'ubar -> -4MU' comparison cannot hold.

    The exact map gives ubar -> -4M + (4M/e) U as U -> 0^- (principal-branch
    series W(z) = z + O(z^2)), which is affine in U with slope 4M/e, not -4M,
    plus the offset -4M.  The kernels only feel affine images of U, so the
    physics (collapse kernel -> Unruh kernel) holds and is asserted in A8;
    the literal pointwise comparison is kept here as an expected failure.
    """
    t0 = time.time()
    mass = 0.5
    worst = math.inf
    for minus_u in (1e-3, 1e-4, 1e-6):
        u = -4.0 * mass * math.log(minus_u)
        w, _ = w_from_log(np.array([-u / (4 * mass) - 1.0], dtype=complex))
        ubar = -4.0 * mass * (1.0 + complex(w[0]).real)
        target = -4.0 * mass * (-minus_u)
        worst = min(worst, abs(ubar - target) / abs(target))
    ok = worst <= 0.02
    return CriterionResult(
        "A8n literal 'ubar ~ -4MU'", ok,
        f"best |ubar-(-4MU)|/|4MU| = {worst:.3g} (>> 2%); exact limit is "
        "ubar = -4M + (4M/e)U, affine in U; see A8 near/kernel clauses",
        time.time() - t0, expected_fail=True)


def check_a9_structural() -> CriterionResult:
    t0 = time.time()
    notes = []
    ok = True

    # Lambert-W round trip on the annulus
    rng = np.random.default_rng(20240817)
    n = 10_000
    z = np.exp(rng.uniform(math.log(1e-6), math.log(1e6), n)
               + 1j * rng.uniform(-math.pi + 1e-3, math.pi - 1e-3, n))
    w = w_principal(z)
    resid = np.max(np.abs(w * np.exp(w) - z) / np.abs(z))
    ok &= resid <= 1e-12
    notes.append(f"W round trip {resid:.1e} <= 1e-12")

    # redshift reciprocity
    g1 = redshift_gamma(2.2, 7.0, 0.5)
    g2 = redshift_gamma(7.0, 2.2, 0.5)
    ok &= abs(g1 * g2 - 1.0) <= 1e-14
    notes.append(f"|gamma_BA gamma_AB - 1| = {abs(g1*g2-1):.1e} <= 1e-14")

    # hermiticity of the cross term, at tightened tolerance
    tight = QuadratureConfig(rel_tol=1e-10, abs_tol=1e-13)
    s = fig1_scenario(VacuumKind.UNRUH, 2.0, quad=tight)
    from .detector_matrix import L_element
    lab = L_element(s, "A", "B").value
    lba = L_element(s, "B", "A").value
    herm = abs(lba - lab.conjugate())
    ok &= herm <= 1e-10
    notes.append(f"|L_BA - L_AB*| = {herm:.1e} <= 1e-10")

    # reality of the local terms across the sweep vacua
    worst_im = 0.0
    for vac in FOUR_VACUA:
        p = pair_state(fig1_scenario(vac, 1.0))
        worst_im = max(worst_im,
                       abs(p.L_AA.imag) / abs(p.L_AA.real),
                       abs(p.L_BB.imag) / abs(p.L_BB.real))
        mi = mutual_information(p)
        ok &= mi >= 0.0
    ok &= worst_im <= 1e-8
    notes.append(f"max |Im L_ii|/Re L_ii = {worst_im:.1e} <= 1e-8; MI >= 0")

    # deformation invariance of the strip height
    vals = {}
    for vac in FOUR_VACUA:
        s = fig1_scenario(vac, 2.0)
        per_h = []
        for h in (0.5, 1.0, 2.0):
            r = _double_integral(s, s.det_a, s.det_a, "minus", 2.0, ordered=False,
                                 h_override=h)
            per_h.append(r)
        spread = max(abs(a.value - b.value) for a in per_h for b in per_h)
        budget = max(sum(r.error for r in per_h), 3e-8 * abs(per_h[0].value))
        ok &= spread <= budget
        vals[vac.value] = spread / abs(per_h[0].value)
    notes.append("deformation invariance h in {0.5,1,2}: max rel spread "
                 + ", ".join(f"{k}={v:.1e}" for k, v in vals.items()))

    # near-horizon invariance at fractions of the image-pole clearance
    s = fig1_scenario(VacuumKind.UNRUH, 0.1)
    clearance = 8.0 * math.pi * 0.5 * math.sqrt(metric_f(s.det_a.radius, 0.5))
    per_h = [_double_integral(s, s.det_a, s.det_a, "minus", 2.0, ordered=False,
                              h_override=frac * clearance) for frac in (0.25, 0.45, 0.7)]
    spread = max(abs(a.value - b.value) for a in per_h for b in per_h)
    ok &= spread <= max(sum(r.error for r in per_h), 3e-8 * abs(per_h[0].value))
    notes.append(f"sub-clearance invariance near horizon: rel spread "
                 f"{spread/abs(per_h[0].value):.1e}")

    # switching-time shift: invariant for the static vacua, not for collapse
    for vac in (VacuumKind.BOULWARE, VacuumKind.UNRUH, VacuumKind.HHI):
        a = pair_state(fig1_scenario(vac, 2.0, tau0=12.0)).L_AA.real
        b = pair_state(fig1_scenario(vac, 2.0, tau0=17.0)).L_AA.real
        shift = abs(b / a - 1.0)
        ok &= shift <= 1e-6
        notes.append(f"{vac.value} shift invariance {shift:.1e} <= 1e-6")
    # collapse vacuum: the shift must be visible in the crossover zone; right at
    # the horizon it is Unruh to exponential accuracy, so test at d_A = 10 sigma
    a = pair_state(fig1_scenario(VacuumKind.VAIDYA, 10.0, tau0=12.0)).L_AA.real
    b = pair_state(fig1_scenario(VacuumKind.VAIDYA, 10.0, tau0=17.0)).L_AA.real
    vshift = abs(b - a)
    ok &= vshift > 1e-6
    notes.append(f"collapse-vacuum shift sensitivity |dL| = {vshift:.1e} > 1e-6")

    # commutator state independence across all four vacua
    ests = {}
    for vac in FOUR_VACUA:
        s = fig1_scenario(vac, 2.0, quad=QuadratureConfig(rel_tol=1e-10, abs_tol=1e-14))
        ests[vac] = signalling_estimator(s).value
    base = ests[VacuumKind.BOULWARE]
    spread = max(abs(v - base) for v in ests.values())
    ok &= spread <= 1e-8 * abs(base)
    notes.append(f"commutator state independence rel spread {spread/abs(base):.1e} <= 1e-8")

    return CriterionResult("A9 structural invariants", ok, "; ".join(notes),
                           time.time() - t0)


def check_a9_parallel_serial() -> CriterionResult:
    from .sweep_cli import SweepConfig, run_sweep
    t0 = time.time()
    cfg = SweepConfig.example(axis="dA", grid=(0.5, 2.0),
                              vacua=(VacuumKind.BOULWARE, VacuumKind.UNRUH),
                              outputs=("L_AA", "concurrence"))
    serial = run_sweep(cfg, workers=1)
    parallel = run_sweep(cfg, workers=2)
    worst = 0.0
    for r1, r2 in zip(serial, parallel):
        for key in r1.values:
            worst = max(worst, abs(r1.values[key] - r2.values[key]))
    ok = worst <= 1e-12
    return CriterionResult("A9p parallel/serial sweep equivalence", ok,
                           f"max column difference {worst:.2e} <= 1e-12",
                           time.time() - t0)


ALL_CRITERIA = (
    check_a1_appendix_oracle,
    check_a2_eps_invariance,
    check_a3_ieps_instability,
    check_a4_edr_asymptotes,
    check_a5_unruh_vaidya_agreement,
    check_a6_death_zones,
    check_a7_interpolation,
    check_a8_asymptotics,
    check_a8_near_literal,
    check_a9_structural,
    check_a9_parallel_serial,
)


def run_validation(name_filter: str | None = None) -> list[CriterionResult]:
    results = []
    for fn in ALL_CRITERIA:
        probe = fn.__name__.replace("check_", "")
        if name_filter and name_filter.lower() not in probe.lower():
            continue
        results.append(fn())
        print(results[-1].line(), flush=True)
    return results
