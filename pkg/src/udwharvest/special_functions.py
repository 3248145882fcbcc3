"""Lambert W (principal and -1 branches) and the complementary error function.

The principal branch accepts complex arguments: the null-coordinate map of the
collapse vacuum is evaluated on a contour in the upper half of the inner-time
plane, so W has to follow analytically off the real axis.  The branch cut is
the standard one along (-inf, -1/e), continuous from above.
"""

from __future__ import annotations

import math
from enum import Enum

import numpy as np

INV_E = math.exp(-1.0)
BRANCH_POINT = -INV_E


class WBranch(Enum):
    PRINCIPAL = 0
    MINUS_ONE = -1


class BranchCutError(ValueError):
    """Lambert W requested on (or across) the principal-branch cut."""


def erfc(x: float) -> float:
    """Complementary error function on the reals (total, underflows to 0)."""
    return math.erfc(float(x))


def _w_halley(z: np.ndarray, w: np.ndarray, maxiter: int = 80) -> np.ndarray:
    """Halley refinement of w*e^w = z from a seed w (complex arrays)."""
    for _ in range(maxiter):
        ew = np.exp(w)
        res = w * ew - z
        # Halley step; denominator never vanishes away from the branch point
        denom = ew * (w + 1.0) - (w + 2.0) * res / (2.0 * w + 2.0)
        dw = res / denom
        w = w - dw
        if np.all(np.abs(dw) <= 2e-16 * (2.0 + np.abs(w))):
            break
    return w


def w_principal(z) -> np.ndarray:
    """Principal-branch Lambert W for complex array input (vectorized)."""
    z = np.asarray(z, dtype=np.complex128)
    w = np.empty_like(z)

    small = np.abs(z) < 0.8
    near = (~small) & (np.abs(z - BRANCH_POINT) < 0.3)
    rest = ~(small | near)

    zs = z[small]
    w[small] = zs * (1.0 - zs)

    p = np.sqrt(2.0 * (np.e * z[near] + 1.0))  # +p selects the principal sheet
    w[near] = -1.0 + p * (1.0 - p * (1.0 / 3.0 - p * (11.0 / 72.0)))

    lz = np.log(z[rest])
    seed = np.where(np.abs(lz) < 1.2, 0.45 + 0.5 * lz, lz - np.log(np.where(lz == 0, 1.0, lz)))
    w[rest] = seed

    exact0 = z == 0
    w = _w_halley(z, w)
    w[exact0] = 0.0
    return w


def w_minus_one(x) -> np.ndarray:
    """Lower real branch W_{-1} on [-1/e, 0) (vectorized, real in/out)."""
    x = np.asarray(x, dtype=np.float64)
    if np.any((x < BRANCH_POINT - 1e-15) | (x >= 0)):
        raise ValueError("W_{-1} branch requires real argument in [-1/e, 0)")
    w = np.empty_like(x)
    near = x < -0.27
    p = -np.sqrt(np.maximum(2.0 * (np.e * x[near] + 1.0), 0.0))  # -p: lower sheet
    w[near] = -1.0 + p * (1.0 - p * (1.0 / 3.0 - p * (11.0 / 72.0)))
    lx = np.log(-x[~near])
    w[~near] = lx - np.log(-lx)
    w = _w_halley(x.astype(np.complex128), w.astype(np.complex128)).real
    return w


def lambert_w(branch: WBranch, z, on_cut: str = "raise"):
    """Lambert W on the requested branch.

    Parameters
    ----------
    branch : WBranch
        PRINCIPAL (complex z allowed) or MINUS_ONE (real z in [-1/e, 0)).
    z : scalar
        Argument.  For PRINCIPAL, real z on (-inf, -1/e) lies on the branch
        cut: raises BranchCutError unless on_cut="above" (limit from above).
    """
    if branch is WBranch.MINUS_ONE:
        zr = complex(z)
        if zr.imag != 0.0:
            raise ValueError("W_{-1} branch requires a real argument")
        if abs(zr.real - BRANCH_POINT) <= 5e-16:
            return complex(-1.0)
        return complex(w_minus_one(np.array([zr.real]))[0])

    zc = complex(z)
    if zc.imag == 0.0:
        if abs(zc.real - BRANCH_POINT) <= 5e-16:
            return complex(-1.0)  # the two real branches meet here
        if zc.real < BRANCH_POINT:
            if on_cut != "above":
                raise BranchCutError(
                    f"z={zc.real} lies on the principal-branch cut (-inf, -1/e)")
            zc = complex(zc.real, 0.0)  # principal log is the limit from above there
    return complex(w_principal(np.array([zc]))[0])


def w_from_log(ell) -> tuple[np.ndarray, np.ndarray]:
    """(W(e^ell), log W(e^ell)) without forming e^ell when it would over/underflow.

    Used by the collapse-vacuum kernel, where ell is an affine image of the
    outgoing null coordinate and can have |Re ell| of several thousand.
    """
    ell = np.asarray(ell, dtype=np.complex128)
    w = np.empty_like(ell)
    lw = np.empty_like(ell)
    re = ell.real

    small = re < -36.0
    big = re > 690.0
    mid = ~(small | big)

    if small.any():
        zs = np.exp(ell[small])  # may underflow to 0; that limit is exact here
        w[small] = zs * (1.0 - zs)
        lw[small] = ell[small] + np.log1p(-zs)

    if mid.any():
        wm = w_principal(np.exp(ell[mid]))
        w[mid] = wm
        lw[mid] = np.log(wm)

    if big.any():
        lb = ell[big]
        wb = lb - np.log(lb)  # Newton on w + log w = ell (no exponentials)
        for _ in range(60):
            dw = (lb - wb - np.log(wb)) * wb / (wb + 1.0)
            wb = wb + dw
            if np.all(np.abs(dw) <= 1e-15 * np.abs(wb)):
                break
        w[big] = wb
        lw[big] = np.log(wb)

    return w, lw
