"""Coordinate machinery for the (1+1) static exterior and the null-collapse geometry.

All lengths are in units of the switching width sigma (= 1).  Static
trajectories have t(tau) = tau / sqrt(f(r)); tau may be complex (the contour
engine analytically continues the inner time argument).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .special_functions import w_from_log

SIGMA = 1.0  # global unit of length / proper time


class DomainError(ValueError):
    """Coordinate request outside the static exterior region."""


@dataclass(frozen=True)
class SpacetimeParams:
    """Black-hole mass in units of sigma (0 only for the flat kernels)."""

    mass: float

    def __post_init__(self):
        if self.mass < 0:
            raise DomainError("mass must be >= 0")


@dataclass(frozen=True)
class StaticDetector:
    """One static detector: radius, gap, switching peak, coupling (units of sigma)."""

    radius: float
    gap: float
    tau0: float = 0.0
    coupling: float = 1.0


@dataclass(frozen=True)
class NullCoords:
    u: complex
    v: complex
    U: complex
    V: complex
    ubar: complex
    du: complex
    dv: complex
    dU: complex
    dV: complex
    dubar: complex


def metric_f(r: float, M: float):
    """f(r) = 1 - 2M/r."""
    if np.any(np.asarray(r) <= 0):
        raise DomainError("r must be positive")
    return 1.0 - 2.0 * M / r


def tortoise(r: float, M: float):
    """r_* = r + 2M log(r/2M - 1); -> -inf at the horizon.  M=0 gives r."""
    if M == 0.0:
        return r
    if np.any(np.asarray(r) <= 2.0 * M):
        raise DomainError("tortoise coordinate needs r > 2M")
    return r + 2.0 * M * np.log(r / (2.0 * M) - 1.0)


def _proper_antideriv(r: float, M: float) -> float:
    # closed form of int dr/sqrt(1-2M/r); integrable at r = 2M
    if M == 0.0:
        return r
    s = math.sqrt(max(r - 2.0 * M, 0.0))
    return math.sqrt(r) * s + 2.0 * M * math.log((math.sqrt(r) + s) / math.sqrt(2.0 * M))


def proper_distance(r1: float, r2: float, M: float) -> float:
    """Static-slice proper distance between radii 2M <= r1 <= r2."""
    if r1 < 2.0 * M - 1e-15 or r1 > r2:
        raise DomainError("need 2M <= r1 <= r2")
    return _proper_antideriv(r2, M) - _proper_antideriv(max(r1, 2.0 * M), M)


def radius_from_proper_distance(d: float, r_ref: float, M: float,
                                tol: float = 1e-12, max_iter: int = 200) -> float:
    """Radius r >= r_ref at proper distance d from r_ref (bracketed bisection)."""
    if d < 0:
        raise DomainError("d must be >= 0")
    if d == 0:
        return r_ref
    lo, hi = r_ref, r_ref + d  # proper distance >= coordinate distance
    if proper_distance(r_ref, hi, M) < d:
        hi = r_ref + 2.0 * d + 2.0 * M
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if proper_distance(r_ref, mid, M) < d:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol:
            return 0.5 * (lo + hi)
    raise RuntimeError(f"radius_from_proper_distance did not converge to {tol} in {max_iter} steps")


def redshift_gamma(r_i: float, r_j: float, M: float) -> float:
    """gamma_ij = sqrt(f(r_i)/f(r_j)) relating the two static proper-time rates."""
    fi, fj = metric_f(r_i, M), metric_f(r_j, M)
    if fi <= 0 or fj <= 0:
        raise DomainError("redshift factor needs both radii outside the horizon")
    return math.sqrt(fi / fj)


def shell_admissible(detector: StaticDetector, M: float, b: float = 5.0) -> bool:
    """True iff the +-b*sigma strong support sits after the collapsing shell (v > 0).

    The shell is at v = 0, i.e. coordinate time t > -r_*(r); with t = tau/sqrt(f)
    that is tau0 - b*sigma > -r_*(r) * sqrt(f(r)).
    """
    if M == 0.0:
        return True
    f = metric_f(detector.radius, M)
    if f <= 0:
        return False
    rstar = tortoise(detector.radius, M)
    return detector.tau0 - b * SIGMA > -rstar * math.sqrt(f)


def pullback(detector: StaticDetector, tau, M: float) -> NullCoords:
    """All null coordinates and their tau-derivatives on the static worldline.

    Accepts complex tau (analytic continuation for the contour engine).  The
    Kruskal exponentials can over/underflow at extreme arguments; the kernel
    layer works with rescaled forms and does not route through them.
    """
    if M <= 0.0:
        raise DomainError("pullback needs M > 0 (flat kernels bypass it)")
    f = metric_f(detector.radius, M)
    if f <= 0:
        raise DomainError("detector must sit strictly outside the horizon")
    sf = math.sqrt(f)
    rstar = tortoise(detector.radius, M)

    t = tau / sf
    u = t - rstar
    v = t + rstar
    with np.errstate(over="ignore", under="ignore"):
        U = -np.exp(-u / (4.0 * M))
        V = np.exp(v / (4.0 * M))
    # ubar(U) = -4M (1 + W(-U/e)) evaluated through log W for stability
    ell = -u / (4.0 * M) - 1.0
    W, _ = w_from_log(np.asarray(ell, dtype=np.complex128))
    W = complex(W) if np.ndim(tau) == 0 else W
    ubar = -4.0 * M * (1.0 + W)

    du = 1.0 / sf
    dv = 1.0 / sf
    dU = -U / (4.0 * M * sf)
    dV = V / (4.0 * M * sf)
    dubar = (W / (1.0 + W)) / sf
    return NullCoords(u=u, v=v, U=U, V=V, ubar=ubar,
                      du=du, dv=dv, dU=dU, dV=dV, dubar=dubar)
