"""Pure-numpy evaluation of the derivative two-point kernels (fallback backend).

Keep in lockstep with `_kernels_numba`, the jitted twin.  Kernel families are
keyed by term structure, not vacuum name:

  KIND_RATIONAL  1/du^2 + 1/dv^2                     (Boulware, Minkowski)
  KIND_MIXED     thermal u-part + rational v-part    (Unruh)
  KIND_THERMAL   thermal in both null directions     (HHI, flat thermal bath)
  KIND_COLLAPSE  Lambert-W outgoing null + image terms

The exponential (Kruskal) ratio forms are evaluated through the identity
X' X''/(X - X'')^2 = csch^2((log X - log X'')/2)/4, which is exact and immune
to the overflow/underflow of the raw exponentials at late times.
"""

from __future__ import annotations

import numpy as np

from .special_functions import w_from_log

KIND_RATIONAL = 0
KIND_MIXED = 1
KIND_THERMAL = 2
KIND_COLLAPSE = 3

PREF = -1.0 / (4.0 * np.pi)
_RE_CLIP = 250.0      # sinh of larger |Re| would overflow when squared
_DEN_FLOOR = 1e-150   # squared-denominator magnitude guard (|den|^2 ~ 1e-300)


def _csch2(z):
    """csch^2 with the real part clipped so the square never overflows."""
    zr = np.clip(z.real, -_RE_CLIP, _RE_CLIP)
    s = np.sinh(zr + 1j * z.imag)
    return 1.0 / (s * s), np.abs(s)


def kernel_vals(kind, M, sfi, rstari, sfj, rstarj, tau_i, tau_j, drop_cross=False):
    """Kernel values on paired (tau_i, tau_j) arrays; returns (values, n_bad).

    For the flat kinds pass sfi = sfj = 1 and rstar = position; then u = tau - x,
    v = tau + x with tau the proper (=coordinate) time.
    """
    tau_i = np.asarray(tau_i, dtype=np.complex128)
    tau_j = np.asarray(tau_j, dtype=np.complex128)
    with np.errstate(over="ignore", under="ignore", invalid="ignore", divide="ignore"):
        t_i = tau_i / sfi
        t_j = tau_j / sfj
        u_i = t_i - rstari
        u_j = t_j - rstarj
        v_i = t_i + rstari
        v_j = t_j + rstarj
        du = u_i - u_j
        dv = v_i - v_j

        bad = np.zeros(du.shape, dtype=bool)
        if kind == KIND_RATIONAL:
            terms = 1.0 / (du * du) + 1.0 / (dv * dv)
            bad |= (np.abs(du) < _DEN_FLOOR) | (np.abs(dv) < _DEN_FLOOR)
        elif kind == KIND_MIXED:
            c2, su = _csch2(du / (8.0 * M))
            terms = c2 / (64.0 * M * M) + 1.0 / (dv * dv)
            bad |= (su < _DEN_FLOOR) | (np.abs(dv) < _DEN_FLOOR)
        elif kind == KIND_THERMAL:
            c2u, su = _csch2(du / (8.0 * M))
            c2v, sv = _csch2(dv / (8.0 * M))
            terms = (c2u + c2v) / (64.0 * M * M)
            bad |= (su < _DEN_FLOOR) | (sv < _DEN_FLOOR)
        elif kind == KIND_COLLAPSE:
            ell_i = -u_i / (4.0 * M) - 1.0
            ell_j = -u_j / (4.0 * M) - 1.0
            Wi, oi = w_from_log(ell_i)
            Wj, oj = w_from_log(ell_j)
            c2, su = _csch2(0.5 * (oi - oj))
            uu = c2 / (64.0 * M * M * (1.0 + Wi) * (1.0 + Wj))
            vv = 1.0 / (dv * dv)
            bad |= (su < _DEN_FLOOR) | (np.abs(dv) < _DEN_FLOOR)
            bad |= (np.abs(1.0 + Wi) < 1e-12) | (np.abs(1.0 + Wj) < 1e-12)
            if drop_cross:
                terms = uu + vv
            else:
                ub_i = -4.0 * M * (1.0 + Wi)
                ub_j = -4.0 * M * (1.0 + Wj)
                g_i = Wi / (1.0 + Wi)
                g_j = Wj / (1.0 + Wj)
                d1 = ub_i - v_j
                d2 = v_i - ub_j
                terms = uu + vv - g_i / (d1 * d1) - g_j / (d2 * d2)
                bad |= (np.abs(d1) < _DEN_FLOOR) | (np.abs(d2) < _DEN_FLOOR)
        else:
            raise ValueError(f"unknown kernel kind {kind}")

        vals = (PREF / (sfi * sfj)) * terms
        bad |= ~np.isfinite(vals.real) | ~np.isfinite(vals.imag)
    return vals, int(np.count_nonzero(bad))
