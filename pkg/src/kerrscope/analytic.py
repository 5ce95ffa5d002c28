"""Closed-form steady-state photon statistics of the driven Kerr oscillator.

The stationary populations are

    P_q = Z^-1 sum_{m=0}^{2s-q} C_mm (q+m)! (2s-q)! / (q! (2s-q-m)!)

    C_mm = |sigma|^(-2m) |Gamma(1+m+i phi*) / (m! Gamma(1+i phi*))|^2

with ``sigma`` and ``phi`` from :func:`kerrscope.model.resolve_sign_convention`.
Every factorial is handled in log space: ``(2s+m+1)! (m!)^2`` already
overflows a double near ``2s = 50``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln, logsumexp

from .model import ModelParams, ScaledParams

#: drive strength (in units of alpha) above which the weak-excitation
#: solution is flagged as approximate
OMEGA_WARN_RATIO = 1.0
#: mean occupation per excitation (<n>/2s) above which the same warning fires
FILLING_WARN_RATIO = 0.02

_Z_CHECK_RTOL = 1e-10


class ValidityWarning(UserWarning):
    """Parameters are outside the weak-excitation regime of the closed form."""


@dataclass(frozen=True)
class PhotonDistribution:
    """Diagonal steady-state populations ``probs[q]`` for ``q = 0..q_max``."""

    probs: np.ndarray

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=float)
        if probs.ndim != 1 or probs.size == 0:
            raise ValueError("probs must be a non-empty 1-d array")
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)

    @property
    def q_max(self) -> int:
        return self.probs.size - 1

    def tail_mass(self, start: int | None = None) -> float:
        """Population at photon numbers above ``start`` (default ``q_max // 2``)."""
        if start is None:
            start = self.q_max // 2
        return float(self.probs[start + 1:].sum())


@dataclass(frozen=True)
class ScalarObservables:
    """Mean photon number, ``G2(0) = <a^dag^2 a^2>`` and ``g2(0)``.

    ``g2`` is None when ``mean_n`` is zero.
    """

    mean_n: float
    g2_unnorm: float
    g2: float | None


@lru_cache(maxsize=None)
def _log_factorials(n: int) -> np.ndarray:
    # read-only so the cached table can be shared across threads
    table = gammaln(np.arange(n + 1, dtype=float) + 1.0)
    table.setflags(write=False)
    return table


def _log_cmm_table(scaled: ScaledParams, m_max: int) -> np.ndarray:
    """``ln C_mm`` for ``m = 0..m_max`` via the finite product for the Gamma ratio."""
    out = np.zeros(m_max + 1)
    if m_max == 0:
        return out
    if scaled.omega == 0:
        raise ValueError("C_mm vanishes for m > 0 when omega == 0")
    z = 1j * np.conj(scaled.phi)
    k = np.arange(1, m_max + 1)
    # Gamma(1+m+z)/Gamma(1+z) = prod_{k=1..m} (k+z)
    log_prod = np.cumsum(np.log(np.abs(k + z) ** 2))
    out[1:] = -2.0 * k * math.log(abs(scaled.sigma)) + log_prod - 2.0 * _log_factorials(m_max)[1:]
    return out


def log_cmm(scaled: ScaledParams, m: int) -> float:
    """Natural log of the coefficient ``C_mm``.

    Raises ValueError for ``m > 0`` at zero drive, where ``C_mm = 0``.
    """
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    return float(_log_cmm_table(scaled, m)[m])


def photon_distribution(scaled: ScaledParams, check: bool = True) -> PhotonDistribution:
    """Steady-state populations ``P_0 .. P_2s`` from the closed-form solution.

    The unnormalized sums are normalized directly and compared against the
    explicit normalization constant ``Z``; a mismatch larger than 1e-10
    relative raises ArithmeticError.
    """
    two_s = scaled.two_s
    if scaled.omega == 0:
        probs = np.zeros(two_s + 1)
        probs[0] = 1.0
        return PhotonDistribution(probs)

    lf = _log_factorials(2 * two_s + 2)
    log_c = _log_cmm_table(scaled, two_s)

    q = np.arange(two_s + 1)[:, None]
    m = np.arange(two_s + 1)[None, :]
    valid = q + m <= two_s
    qm = np.where(valid, q + m, 0)
    rest = np.where(valid, two_s - q - m, 0)
    terms = log_c[None, :] + lf[qm] + lf[two_s - q] - lf[q] - lf[rest]
    terms = np.where(valid, terms, -np.inf)
    log_num = logsumexp(terms, axis=1)
    if not np.all(np.isfinite(log_num)):
        raise FloatingPointError("non-finite term in the photon distribution")

    log_norm = logsumexp(log_num)
    if check:
        mm = np.arange(two_s + 1)
        log_z = logsumexp(log_c + lf[two_s + mm + 1] + 2.0 * lf[mm]
                          - lf[two_s - mm] - lf[2 * mm + 1])
        if abs(math.expm1(log_z - log_norm)) > _Z_CHECK_RTOL:
            raise ArithmeticError(
                f"normalization mismatch: ln Z={log_z!r} vs ln sum={log_norm!r}")

    probs = np.exp(log_num - log_norm)
    dist = PhotonDistribution(probs)
    _warn_if_outside_validity(scaled, dist)
    return dist


def _warn_if_outside_validity(scaled: ScaledParams, dist: PhotonDistribution):
    if scaled.omega >= OMEGA_WARN_RATIO * scaled.alpha:
        warnings.warn(f"omega/alpha = {scaled.omega / scaled.alpha:.3g} is not small; "
                      "closed-form populations are approximate", ValidityWarning, stacklevel=3)
        return
    mean_n = float(np.arange(dist.probs.size) @ dist.probs)
    if mean_n / scaled.two_s > FILLING_WARN_RATIO:
        warnings.warn(f"<n>/2s = {mean_n / scaled.two_s:.3g} exceeds {FILLING_WARN_RATIO}; "
                      "closed-form populations are approximate", ValidityWarning, stacklevel=3)


def observables(dist: PhotonDistribution) -> ScalarObservables:
    q = np.arange(dist.probs.size, dtype=float)
    mean_n = float(q @ dist.probs)
    g2_unnorm = float((q * (q - 1.0)) @ dist.probs)
    g2 = g2_unnorm / mean_n**2 if mean_n > 0 else None
    return ScalarObservables(mean_n=mean_n, g2_unnorm=g2_unnorm, g2=g2)


def linear_limit(params: ModelParams) -> ScalarObservables:
    """Exact observables of the harmonic (``alpha = 0``) oscillator.

    ``params.alpha`` is ignored. The steady state is coherent, so ``g2 = 1``
    whenever the drive is on.
    """
    mean_n = params.epsilon**2 / (params.kappa**2 + params.delta**2)
    return ScalarObservables(mean_n=mean_n, g2_unnorm=mean_n**2,
                             g2=1.0 if mean_n > 0 else None)
