"""Closed-form Wigner functions of thermal states and photon-added coherent states.

Coordinates follow beta = q + i p with the vacuum Wigner function
(2/pi) exp(-2|beta|^2), i.e. a quadrature variance of 1/4 per axis.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidChannelError, UnsupportedOrderError
from .phase_space import GridSpec, WignerField, sample

MAX_GAMMA_T = 50.0

# L_m(x) = c0 + c1 x + c2 x^2
_LAGUERRE_COEFFS = {0: (1.0, 0.0, 0.0), 1: (1.0, -1.0, 0.0), 2: (1.0, -2.0, 0.5)}


def laguerre(m: int, x):
    """Laguerre polynomial L_m(x) for m in {0, 1, 2}."""
    try:
        c0, c1, c2 = _LAGUERRE_COEFFS[m]
    except (KeyError, TypeError):
        raise UnsupportedOrderError(f"Laguerre order {m!r} not supported (use 0, 1 or 2)") from None
    return c0 + x * (c1 + c2 * x)


@dataclass(frozen=True)
class PacsSpec:
    """Photon-added coherent state a^dag^m |alpha> / sqrt(N(alpha, m))."""

    alpha: complex
    m: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        if self.m not in _LAGUERRE_COEFFS or isinstance(self.m, bool):
            raise UnsupportedOrderError(f"added-photon count {self.m!r} not supported (use 0, 1 or 2)")
        if not (math.isfinite(self.alpha.real) and math.isfinite(self.alpha.imag)):
            raise ValueError("alpha must be finite")


@dataclass(frozen=True)
class ChannelParams:
    """Thermal channel after dimensionless decay time ``gamma_t``."""

    gamma_t: float
    n_bar: float

    def __post_init__(self):
        for name in ("gamma_t", "n_bar"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0:
                raise InvalidChannelError(f"{name} must be finite and >= 0, got {v!r}")
        if self.gamma_t > MAX_GAMMA_T:
            raise InvalidChannelError(f"gamma_t must be <= {MAX_GAMMA_T:g}, got {self.gamma_t!r}")

    @property
    def c_squared(self) -> float:
        return math.expm1(self.gamma_t) * (1.0 + 2.0 * self.n_bar)


def pacs_norm(spec: PacsSpec) -> float:
    """N(alpha, m) = m! L_m(-|alpha|^2)."""
    return math.factorial(spec.m) * laguerre(spec.m, -abs(spec.alpha) ** 2)


def pacs_wigner_terms(spec: PacsSpec) -> tuple[float, float, float, float]:
    """(prefactor, c0, c1, c2) with W = pref * poly(|2 beta - alpha|^2) * exp(-2|beta - alpha|^2)."""
    c0, c1, c2 = _LAGUERRE_COEFFS[spec.m]
    sign = -1.0 if spec.m % 2 else 1.0
    pref = sign * 2.0 / (math.pi * laguerre(spec.m, -abs(spec.alpha) ** 2))
    return pref, c0, c1, c2


class PacsWigner:
    """Initial Wigner function of a PACS as a vectorised evaluator ``w(q, p)``.

    The channel module recognises instances and dispatches them to the
    compiled smoothing kernel.
    """

    def __init__(self, spec: PacsSpec):
        self.spec = spec
        self.terms = pacs_wigner_terms(spec)

    def __call__(self, q, p):
        q = np.asarray(q, dtype=float)
        p = np.asarray(p, dtype=float)
        a, b = self.spec.alpha.real, self.spec.alpha.imag
        pref, c0, c1, c2 = self.terms
        x = (2.0 * q - a) ** 2 + (2.0 * p - b) ** 2
        return pref * (c0 + x * (c1 + c2 * x)) * np.exp(-2.0 * ((q - a) ** 2 + (p - b) ** 2))

    @property
    def centre(self) -> tuple[float, float]:
        return self.spec.alpha.real, self.spec.alpha.imag

    def __repr__(self):
        return f"PacsWigner({self.spec!r})"


class ThermalWigner:
    def __init__(self, n_bar: float):
        if not math.isfinite(n_bar) or n_bar < 0:
            raise InvalidChannelError(f"n_bar must be finite and >= 0, got {n_bar!r}")
        self.n_bar = n_bar

    def __call__(self, q, p):
        v = 1.0 + 2.0 * self.n_bar
        return 2.0 / (math.pi * v) * np.exp(-2.0 * (np.asarray(q) ** 2 + np.asarray(p) ** 2) / v)

    centre = (0.0, 0.0)


def wigner_thermal(n_bar: float, grid: GridSpec) -> WignerField:
    return sample(ThermalWigner(n_bar), grid)


def wigner_pacs_initial(spec: PacsSpec, grid: GridSpec) -> WignerField:
    return sample(PacsWigner(spec), grid)


def spacs_evolved(alpha: complex, ch: ChannelParams, q, p):
    """Analytic SPACS Wigner function after the thermal channel, at points (q, p)."""
    alpha = complex(alpha)
    q = np.asarray(q, dtype=float)
    p = np.asarray(p, dtype=float)
    a, b = alpha.real, alpha.imag
    c2 = ch.c_squared
    grow = math.exp(ch.gamma_t / 2.0)
    mu = a - q * grow
    nu = b - p * grow
    xi = a - 2.0 * q * grow
    zeta = b - 2.0 * p * grow
    numer = (xi - c2 * a) ** 2 + (zeta - c2 * b) ** 2 + c2 * c2 - 1.0
    denom = math.pi * pacs_norm(PacsSpec(alpha, 1)) * (1.0 + c2) ** 3
    return 2.0 * math.exp(ch.gamma_t) * numer * np.exp(-2.0 * (mu ** 2 + nu ** 2) / (1.0 + c2)) / denom


def wigner_spacs_evolved(alpha: complex, ch: ChannelParams, grid: GridSpec) -> WignerField:
    return sample(lambda q, p: spacs_evolved(alpha, ch, q, p), grid)


def spacs_negative_disc(alpha: complex, ch: ChannelParams) -> tuple[float, float, float] | None:
    """(q_centre, p_centre, radius) of the evolved SPACS negative disc, or None once c >= 1."""
    alpha = complex(alpha)
    c2 = ch.c_squared
    if c2 >= 1.0:
        return None
    shrink = math.exp(-ch.gamma_t / 2.0) / 2.0
    return (alpha.real * (1.0 - c2) * shrink,
            alpha.imag * (1.0 - c2) * shrink,
            math.sqrt(1.0 - c2 * c2) * shrink)


def in_spacs_negative_disc(alpha: complex, ch: ChannelParams, q, p):
    """Pointwise predicate for strict negativity of the evolved SPACS field."""
    alpha = complex(alpha)
    c2 = ch.c_squared
    grow = 2.0 * math.exp(ch.gamma_t / 2.0)
    dq = alpha.real * (1.0 - c2) - grow * np.asarray(q)
    dp = alpha.imag * (1.0 - c2) - grow * np.asarray(p)
    return dq ** 2 + dp ** 2 < 1.0 - c2 * c2
