"""Thermal-channel evolution of Wigner functions by Gaussian smoothing.

With eta = exp(-gamma_t) the thermal channel solution reads

    W(q, p, t) = (1/eta) * Int W_T(x, y) W0((q - sqrt(1-eta) x) / sqrt(eta),
                                           (p - sqrt(1-eta) y) / sqrt(eta)) dx dy

where W_T is the thermal Wigner function with variance (1+2n)/4 per axis.
Substituting q0 = (q - sqrt(1-eta) x) / sqrt(eta) (and p0 likewise), so that
dx dy = eta / (1-eta) dq0 dp0 and x = (q - sqrt(eta) q0) / sqrt(1-eta):

    W_T(x, y) = 2 / (pi (1+2n)) exp(-2 ((q - sqrt(eta) q0)^2 + ...) / ((1+2n)(1-eta)))
              = (1-eta) G_sigma(q - sqrt(eta) q0, p - sqrt(eta) p0),

with G_sigma the normalised bivariate Gaussian of per-axis variance
sigma = (1+2n)(1-eta)/4.  The factors (1/eta) (1-eta) eta/(1-eta) cancel,
leaving the smoothing form

    W(q, p, t) = Int G_sigma(q - sqrt(eta) q0, p - sqrt(eta) p0) W0(q0, p0) dq0 dp0.

Its normalisation is Int G_sigma dq dp * Int W0 = 1, so the two forms agree
exactly, including the exp(gamma_t) prefactor.  As a density in q0 the
kernel is (1/eta) N(q0; q/sqrt(eta), sigma/eta), which is what the
Gauss-Hermite rule below integrates against.  For closed-form PACS
evaluators the state's own Gaussian factor is merged into that weight (see
``_kernels.pyx``), so the rule stays accurate when sigma/eta is much wider
than the state.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _backend
from .errors import InvalidChannelError, SeriesConvergenceError
from .phase_space import Evaluator, GridSpec, WignerField
from .states import ChannelParams, PacsWigner

DEFAULT_NODES = 40
MAX_NODES = 320
NODE_TOL = 1e-9
_GENERIC_CHUNK = 1 << 21  # integrand evaluations per numpy batch


@dataclass(frozen=True)
class KernelParams:
    ch: ChannelParams
    sigma: float
    scale: float

    @classmethod
    def from_channel(cls, ch: ChannelParams) -> KernelParams:
        sigma = (1.0 + 2.0 * ch.n_bar) * -math.expm1(-ch.gamma_t) / 4.0
        return cls(ch, sigma, math.exp(-ch.gamma_t / 2.0))


@lru_cache(maxsize=None)
def gauss_hermite(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.hermite.hermgauss(n)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def _check_channel(ch: ChannelParams) -> None:
    if not isinstance(ch, ChannelParams):
        raise InvalidChannelError(f"expected ChannelParams, got {type(ch).__name__}")


def _smooth_points(initial: Evaluator, kp: KernelParams, q: np.ndarray, p: np.ndarray,
                   n_nodes: int) -> np.ndarray:
    nodes, weights = gauss_hermite(n_nodes)
    if isinstance(initial, PacsWigner):
        a, b = initial.centre
        return _backend.kernels().convolve_pacs_points(
            q, p, a, b, *initial.terms, kp.scale, kp.sigma, nodes, weights)
    eta = kp.scale * kp.scale
    spread = math.sqrt(2.0 * kp.sigma / eta)
    offs = spread * nodes
    w2 = (weights[:, None] * weights[None, :] / math.pi).ravel()
    dq = np.repeat(offs, n_nodes)
    dp = np.tile(offs, n_nodes)
    out = np.empty(q.size)
    step = max(1, _GENERIC_CHUNK // w2.size)
    for start in range(0, q.size, step):
        sl = slice(start, start + step)
        q0 = q[sl, None] / kp.scale + dq[None, :]
        p0 = p[sl, None] / kp.scale + dp[None, :]
        out[sl] = initial(q0, p0) @ w2
    return out / eta


def _probe_points(initial: Evaluator, kp: KernelParams) -> tuple[np.ndarray, np.ndarray]:
    cq, cp = getattr(initial, "centre", (0.0, 0.0))
    cq, cp = kp.scale * cq, kp.scale * cp
    dq = np.array([0.0, 0.5, -0.5, 0.0, 0.0])
    dp = np.array([0.0, 0.0, 0.0, 0.5, -0.5])
    return cq + dq, cp + dp


def converged_nodes(initial: Evaluator, ch: ChannelParams, start: int = DEFAULT_NODES) -> int:
    """Smallest node count (start, doubled) whose result moves < NODE_TOL
    on doubling at five probe points around the state's centre."""
    kp = KernelParams.from_channel(ch)
    q, p = _probe_points(initial, kp)
    n = start
    prev = _smooth_points(initial, kp, q, p, n)
    while n < MAX_NODES:
        nxt = _smooth_points(initial, kp, q, p, 2 * n)
        if np.max(np.abs(nxt - prev)) < NODE_TOL:
            return n
        n, prev = 2 * n, nxt
    raise SeriesConvergenceError(
        f"Gauss-Hermite smoothing not converged at {MAX_NODES} nodes for {ch}")


def evolve_points(initial: Evaluator, ch: ChannelParams, q, p, nodes: int | None = None) -> np.ndarray:
    """Evolved Wigner function at the paired points (q[i], p[i])."""
    _check_channel(ch)
    q = np.ascontiguousarray(q, dtype=float).ravel()
    p = np.ascontiguousarray(p, dtype=float).ravel()
    if ch.gamma_t == 0.0:
        return np.asarray(initial(q, p), dtype=float)
    n = nodes if nodes is not None else converged_nodes(initial, ch)
    return _smooth_points(initial, KernelParams.from_channel(ch), q, p, n)


def evolve_wigner(initial: Evaluator, ch: ChannelParams, grid: GridSpec,
                  nodes: int | None = None) -> WignerField:
    """Sample the evolved Wigner function of ``initial`` on ``grid``."""
    _check_channel(ch)
    if ch.gamma_t == 0.0:
        qq, pp = grid.mesh()
        return WignerField(grid, initial(qq, pp))
    n = nodes if nodes is not None else converged_nodes(initial, ch)
    kp = KernelParams.from_channel(ch)
    if isinstance(initial, PacsWigner):
        xs, ws = gauss_hermite(n)
        a, b = initial.centre
        values = _backend.kernels().convolve_pacs_grid(
            grid.q, grid.p, a, b, *initial.terms, kp.scale, kp.sigma, xs, ws)
        return WignerField(grid, values)
    qq, pp = grid.mesh()
    values = _smooth_points(initial, kp, qq.ravel(), pp.ravel(), n)
    return WignerField(grid, values.reshape(qq.shape))


def scaled_time(ch: ChannelParams) -> float:
    """Photon-loss decay time equivalent to ``ch``: ln(1 + (1+2n)(e^gt - 1))."""
    if ch.n_bar == 0.0:
        return ch.gamma_t
    return math.log1p((1.0 + 2.0 * ch.n_bar) * math.expm1(ch.gamma_t))


def scaled_coordinates(ch: ChannelParams, q, p):
    tp = scaled_time(ch)
    factor = math.exp((ch.gamma_t - tp) / 2.0)
    return np.asarray(q) * factor, np.asarray(p) * factor


def scaling_identity_residual(initial: Evaluator, ch: ChannelParams, sample_points) -> float:
    """Max over points of |W(q,p,gt)/e^gt - W0(q',p',gt')/e^gt'|.

    The right-hand side is the photon-loss evolution at the scaled time;
    both sides run their own quadrature.
    """
    pts = np.asarray(sample_points, dtype=float).reshape(-1, 2)
    q, p = pts[:, 0], pts[:, 1]
    lhs = evolve_points(initial, ch, q, p) / math.exp(ch.gamma_t)
    tp = scaled_time(ch)
    qs, ps = scaled_coordinates(ch, q, p)
    rhs = evolve_points(initial, ChannelParams(tp, 0.0), qs, ps) / math.exp(tp)
    return float(np.max(np.abs(lhs - rhs)))


def _shift(f: np.ndarray, axis: int, k: int) -> np.ndarray:
    # interior window (two-point margin) displaced by k along axis
    idx = [slice(None)] * f.ndim
    idx[axis] = slice(2 + k, f.shape[axis] - 2 + k)
    return f[tuple(idx)]


def _d1(f: np.ndarray, h: float, axis: int) -> np.ndarray:
    # fourth-order central differences
    return (_shift(f, axis, -2) - 8 * _shift(f, axis, -1)
            + 8 * _shift(f, axis, 1) - _shift(f, axis, 2)) / (12 * h)


def _d2(f: np.ndarray, h: float, axis: int) -> np.ndarray:
    return (-_shift(f, axis, -2) + 16 * _shift(f, axis, -1) - 30 * _shift(f, axis, 0)
            + 16 * _shift(f, axis, 1) - _shift(f, axis, 2)) / (12 * h * h)


def fokker_planck_residual(w_of_time, n_bar: float, gamma_t: float, grid: GridSpec,
                           dt: float = 1e-4) -> float:
    """Max-norm residual of the phase-space Fokker-Planck equation.

    ``w_of_time(gt, q, p)`` evaluates the candidate solution.  With
    tau = gamma t the equation is
    dW/dtau = 1/2 (d_q q + d_p p) W + (1+2n)/8 (d_qq + d_pp) W.
    """
    qq, pp = grid.mesh()
    w = w_of_time(gamma_t, qq, pp)
    if gamma_t >= dt:
        dw_dt = (w_of_time(gamma_t + dt, qq, pp) - w_of_time(gamma_t - dt, qq, pp)) / (2 * dt)
    else:
        dw_dt = (w_of_time(gamma_t + dt, qq, pp) - w) / dt
    h_q, h_p = grid.hq, grid.hp
    drift = 0.5 * (_d1(qq * w, h_q, 0)[:, 2:-2] + _d1(pp * w, h_p, 1)[2:-2, :])
    diffusion = (1.0 + 2.0 * n_bar) / 8.0 * (_d2(w, h_q, 0)[:, 2:-2] + _d2(w, h_p, 1)[2:-2, :])
    residual = dw_dt[2:-2, 2:-2] - drift - diffusion
    return float(np.max(np.abs(residual)))
