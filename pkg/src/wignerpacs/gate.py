"""Beam-splitter gate on the vacuum / single-photon-added-coherent-state encoding.

The numeric oracle builds the two-mode input in a truncated number basis
and applies exp[i phi (a b^dag + a^dag b)] block by block: the generator
conserves total photon number N, and on the block {|k, N-k>} it is the
real symmetric tridiagonal matrix with off-diagonal sqrt(k+1) sqrt(N-k).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import SeriesConvergenceError, TruncationError, UndefinedPhaseError
from .states import PacsSpec, pacs_norm

TAIL_TOL = 1e-12
SERIES_TOL = 1e-12
MAX_TERMS = 200
BLOCK_WEIGHT_FLOOR = 1e-32
REGIME_SMALL = 0.1
PAIRS = ((0, 0), (1, 0), (0, 1), (1, 1))


def min_cutoff(alpha: complex) -> int:
    a2 = abs(alpha) ** 2
    return max(30, math.ceil(a2 + 10.0 * math.sqrt(a2 + 1.0)))


@dataclass(frozen=True, eq=False)
class FockVector:
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.ndim != 1:
            raise ValueError("amplitudes must be one-dimensional")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > 1e-10:
            raise ValueError(f"Fock vector not normalised (norm^2 = {norm!r})")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def cutoff(self) -> int:
        return self.amplitudes.size - 1


@dataclass(frozen=True)
class GateConfig:
    alpha: complex
    phi: float
    cutoff: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        need = min_cutoff(self.alpha)
        if self.cutoff is None:
            object.__setattr__(self, "cutoff", need)
        elif self.cutoff < need:
            raise TruncationError(f"cutoff {self.cutoff} below required {need} for |alpha|^2="
                                  f"{abs(self.alpha) ** 2:g}")
        if not math.isfinite(self.phi):
            raise ValueError("phi must be finite")


def logical_state(bit: int, alpha: complex, cutoff: int | None = None) -> FockVector:
    """|0> for bit 0, a^dag|alpha>/sqrt(N(alpha,1)) for bit 1."""
    alpha = complex(alpha)
    cutoff = min_cutoff(alpha) if cutoff is None else cutoff
    if cutoff < min_cutoff(alpha):
        raise TruncationError(f"cutoff {cutoff} below required {min_cutoff(alpha)}")
    amps = np.zeros(cutoff + 1, dtype=complex)
    if bit == 0:
        amps[0] = 1.0
        return FockVector(amps)
    if bit != 1:
        raise ValueError(f"bit must be 0 or 1, got {bit!r}")
    # coherent amplitudes alpha^j e^{-|alpha|^2/2} / sqrt(j!) by recurrence
    coh = np.empty(cutoff, dtype=complex)
    coh[0] = math.exp(-abs(alpha) ** 2 / 2.0)
    for j in range(1, cutoff):
        coh[j] = coh[j - 1] * alpha / math.sqrt(j)
    k = np.arange(1, cutoff + 1)
    amps[1:] = np.sqrt(k) * coh
    norm = pacs_norm(PacsSpec(alpha, 1))
    tail = 1.0 - float(np.vdot(amps, amps).real) / norm
    if tail > TAIL_TOL:
        raise TruncationError(f"truncation tail {tail:.3g} exceeds {TAIL_TOL:g}")
    return FockVector(amps / math.sqrt(norm))


def _generator(n_total: int) -> np.ndarray:
    k = np.arange(n_total)
    off = np.sqrt(k + 1.0) * np.sqrt(n_total - k)
    return np.diag(off, -1) + np.diag(off, 1)


@lru_cache(maxsize=4096)
def _block_unitary_cached(n_total: int, phi: float, tol: float) -> np.ndarray:
    m = 1j * phi * _generator(n_total)
    norm = np.max(np.sum(np.abs(m), axis=0)) if n_total else 0.0
    squarings = max(0, math.ceil(math.log2(norm / 0.5))) if norm > 0.5 else 0
    m = m / 2.0 ** squarings
    term_tol = tol / 2.0 ** squarings
    result = np.eye(n_total + 1, dtype=complex)
    term = np.eye(n_total + 1, dtype=complex)
    for j in range(1, MAX_TERMS + 1):
        term = term @ m / j
        result = result + term
        if np.max(np.abs(term)) <= term_tol * np.max(np.abs(result)):
            break
    else:
        raise SeriesConvergenceError(f"exponential series for block N={n_total} did not converge")
    for _ in range(squarings):
        result = result @ result
    result.flags.writeable = False
    return result


def block_unitary(n_total: int, phi: float, tol: float = SERIES_TOL) -> np.ndarray:
    """exp[i phi (a b^dag + a^dag b)] on the block of total photon number ``n_total``.

    Basis order is |k, N-k> for k = 0..N (k photons in mode a).
    """
    return _block_unitary_cached(int(n_total), float(phi), float(tol))


def _input_blocks(bits: tuple[int, int], cfg: GateConfig):
    a = logical_state(bits[0], cfg.alpha, cfg.cutoff).amplitudes
    b = logical_state(bits[1], cfg.alpha, cfg.cutoff).amplitudes
    k_max = cfg.cutoff
    for n_total in range(2 * k_max + 1):
        k = np.arange(max(0, n_total - k_max), min(n_total, k_max) + 1)
        block = np.zeros(n_total + 1, dtype=complex)
        block[k] = a[k] * b[n_total - k]
        if float(np.vdot(block, block).real) < BLOCK_WEIGHT_FLOOR:
            continue
        yield n_total, block


def overlap_numeric(bits: tuple[int, int], cfg: GateConfig) -> complex:
    """<in| U_BS |in> by brute force in the truncated two-mode space."""
    total = 0j
    for n_total, block in _input_blocks(tuple(bits), cfg):
        total += complex(np.vdot(block, block_unitary(n_total, cfg.phi) @ block))
    return total


def overlap_analytic(bits: tuple[int, int], cfg: GateConfig) -> complex:
    bits = tuple(bits)
    a2 = abs(cfg.alpha) ** 2
    phi = cfg.phi
    norm = pacs_norm(PacsSpec(cfg.alpha, 1))
    if bits == (0, 0):
        return 1.0 + 0j
    if bits in ((1, 0), (0, 1)):
        c = math.cos(phi)
        return complex((c * c * a2 + c) / norm * math.exp(a2 * (c - 1.0)))
    if bits == (1, 1):
        e = cmath.exp(1j * phi)
        poly = a2 * a2 * e ** 4 + 2.0 * a2 * e ** 3 + math.cos(2.0 * phi)
        return poly / norm ** 2 * cmath.exp(2.0 * a2 * (e - 1.0))
    raise ValueError(f"bits must be a pair of 0/1, got {bits!r}")


def overlap_approx(bits: tuple[int, int], cfg: GateConfig) -> complex:
    """Small-angle, large-amplitude limit of ``overlap_analytic``."""
    bits = tuple(bits)
    if bits == (1, 1):
        return cmath.exp(2j * cfg.phi * abs(cfg.alpha) ** 2)
    if bits in ((0, 0), (1, 0), (0, 1)):
        return 1.0 + 0j
    raise ValueError(f"bits must be a pair of 0/1, got {bits!r}")


def regime_ok(alpha: complex, phi: float) -> bool:
    """phi^2 |alpha|^2 << 1 while phi |alpha|^2 is of order one."""
    a2 = abs(alpha) ** 2
    return phi * phi * a2 < REGIME_SMALL and REGIME_SMALL <= abs(phi) * a2 <= 1.0 / REGIME_SMALL


def cz_phase(alpha: complex) -> float:
    """Beam-splitter angle giving a pi conditional phase: pi / (2|alpha|^2)."""
    a2 = abs(alpha) ** 2
    if a2 == 0.0:
        raise UndefinedPhaseError("controlled-phase angle undefined for alpha = 0")
    return math.pi / (2.0 * a2)


def gate_record(bits: tuple[int, int], cfg: GateConfig) -> dict:
    ana = overlap_analytic(bits, cfg)
    num = overlap_numeric(bits, cfg)
    app = overlap_approx(bits, cfg)
    return {
        "alpha_re": cfg.alpha.real,
        "alpha_im": cfg.alpha.imag,
        "phi": cfg.phi,
        "pair": list(bits),
        "analytic_re": ana.real,
        "analytic_im": ana.imag,
        "numeric_re": num.real,
        "numeric_im": num.imag,
        "approx_re": app.real,
        "approx_im": app.imag,
        "regime_ok": regime_ok(cfg.alpha, cfg.phi),
    }
