"""Negative-volume decay curves and threshold decay times."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .channel import evolve_points, evolve_wigner
from .errors import NotNonclassicalError
from .phase_space import GridSpec, min_location, negative_volume
from .states import (ChannelParams, PacsSpec, PacsWigner, spacs_evolved,
                     wigner_spacs_evolved)

EPS_FLOOR = 1e-10
LOCAL_STEP = 0.005
LOCAL_HALF_WIDTH = 0.05
MAX_WIDENINGS = 8

METHOD_ANALYTIC = "analytic_threshold"
METHOD_MAP = "analytic_loss_map"
METHOD_NUMERIC = "bisection_numeric"


@dataclass(frozen=True)
class ThresholdResult:
    gamma_t_c: float
    method: str
    bisection_width: float = 0.0


def evolved_field(spec: PacsSpec, ch: ChannelParams, grid: GridSpec | None = None):
    """Evolved field: closed form for m=1, Gauss-Hermite smoothing otherwise."""
    grid = grid or GridSpec.default()
    if spec.m == 1:
        return wigner_spacs_evolved(spec.alpha, ch, grid)
    return evolve_wigner(PacsWigner(spec), ch, grid)


def pnw_curve(spec: PacsSpec, n_bar: float, times: Sequence[float],
              grid: GridSpec | None = None) -> list[tuple[float, float]]:
    times = [float(t) for t in times]
    if any(t < 0 for t in times) or any(b < a for a, b in zip(times, times[1:])):
        raise ValueError("times must be ascending and nonnegative")
    out = []
    for t in times:
        field = evolved_field(spec, ChannelParams(t, n_bar), grid)
        out.append((t, negative_volume(field).p_nw))
    return out


def threshold_analytic(n_bar: float) -> ThresholdResult:
    """ln((2+2n)/(1+2n)), independent of alpha."""
    if n_bar < 0:
        raise ValueError("n_bar must be >= 0")
    return ThresholdResult(math.log1p(1.0 / (1.0 + 2.0 * n_bar)), METHOD_ANALYTIC)


def threshold_map(gamma_t_c0: float, n_bar: float) -> ThresholdResult:
    """Thermal-channel threshold from the photon-loss threshold ``gamma_t_c0``."""
    if gamma_t_c0 <= 0 or n_bar < 0:
        raise ValueError("need gamma_t_c0 > 0 and n_bar >= 0")
    return ThresholdResult(math.log1p(math.expm1(gamma_t_c0) / (1.0 + 2.0 * n_bar)), METHOD_MAP)


def asymptotic_thresholds(gamma_t_c0: float, n_bar: float) -> tuple[float, float]:
    """(large-n, small-n) approximations of ``threshold_map``."""
    if gamma_t_c0 <= 0 or n_bar <= 0:
        raise ValueError("need gamma_t_c0 > 0 and n_bar > 0")
    large = math.expm1(gamma_t_c0) / (2.0 * n_bar)
    small = gamma_t_c0 + 2.0 * math.expm1(-gamma_t_c0) * n_bar
    return large, small


def _spacs_min(alpha: complex, n_bar: float, grid: GridSpec) -> Callable[[float], float]:
    a = complex(alpha)

    def field_min(t: float) -> float:
        ch = ChannelParams(t, n_bar)
        coarse = min_location(wigner_spacs_evolved(a, ch, grid))[2]
        # predicted disc centre, meaningful even after the disc has closed
        shrink = math.exp(-t / 2.0) / 2.0 * (1.0 - ch.c_squared)
        local = GridSpec.centred(a.real * shrink, a.imag * shrink, LOCAL_HALF_WIDTH, LOCAL_STEP)
        fine = min_location(wigner_spacs_evolved(a, ch, local))[2]
        return min(coarse, fine)

    return field_min


def _generic_min(spec: PacsSpec, n_bar: float, grid: GridSpec) -> Callable[[float], float]:
    initial = PacsWigner(spec)

    def field_min(t: float) -> float:
        ch = ChannelParams(t, n_bar)
        q, p, coarse = min_location(evolve_wigner(initial, ch, grid))
        local = GridSpec.centred(q, p, LOCAL_HALF_WIDTH, LOCAL_STEP)
        qq, pp = local.mesh()
        fine = float(np.min(evolve_points(initial, ch, qq, pp)))
        return min(coarse, fine)

    return field_min


def threshold_numeric(spec: PacsSpec, n_bar: float, tol: float = 1e-6,
                      grid: GridSpec | None = None) -> ThresholdResult:
    """Bisect on gamma_t for the last time the evolved field dips below -EPS_FLOOR."""
    grid = grid or GridSpec.default()
    field_min = _spacs_min(spec.alpha, n_bar, grid) if spec.m == 1 else _generic_min(spec, n_bar, grid)

    def negative(t: float) -> bool:
        return field_min(t) < -EPS_FLOOR

    if not negative(0.0):
        raise NotNonclassicalError()
    lo, hi = 0.0, 1.0
    for _ in range(MAX_WIDENINGS):
        if not negative(hi):
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise NotNonclassicalError(f"field still negative at gamma_t={hi:g}; bracket not found")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if negative(mid):
            lo = mid
        else:
            hi = mid
    return ThresholdResult(0.5 * (lo + hi), METHOD_NUMERIC, hi - lo)


def threshold_record(spec: PacsSpec, n_bar: float, result: ThresholdResult) -> dict:
    return {
        "alpha_re": spec.alpha.real,
        "alpha_im": spec.alpha.imag,
        "m": spec.m,
        "n": n_bar,
        "gamma_t_c": result.gamma_t_c,
        "method": result.method,
        "bisection_width": result.bisection_width,
    }


def spacs_min_value(alpha: complex, ch: ChannelParams, grid: GridSpec) -> float:
    """Minimum of the analytic evolved SPACS field on ``grid``."""
    qq, pp = grid.mesh()
    return float(np.min(spacs_evolved(alpha, ch, qq, pp)))
