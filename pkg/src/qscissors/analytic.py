"""Closed-form scissors output for a thermal input.

These are the printed expressions, evaluated as they stand; the numeric
pipeline is checked against them, never the other way round.
"""

from __future__ import annotations

import math

import numpy as np


class DomainError(ValueError):
    """A closed form was evaluated outside the region where it is defined."""


def _den(nbar, T):
    # 1 - T is exact near T = 1; nbar + 1 - T would swamp a small nbar
    return nbar + (1 - T)


def _check(nbar, T):
    if nbar < 0:
        raise DomainError(f"nbar must be >= 0, got {nbar}")
    if not 0 <= T <= 1:
        raise DomainError(f"T must lie in [0, 1], got {T}")
    if _den(nbar, T) == 0:
        raise DomainError("(nbar, T) = (0, 1) is the degenerate corner: p_d = 0")


def cf_populations(nbar: float, T: float) -> tuple[float, float]:
    _check(nbar, T)
    den = _den(nbar, T)
    return (1 - T) * (nbar + 1) / den, nbar * T / den


def cf_pd(nbar: float, T: float) -> float:
    if nbar < 0 or not 0 <= T <= 1:
        raise DomainError(f"invalid (nbar, T) = ({nbar}, {T})")
    return _den(nbar, T) / (2 * (nbar + 1) ** 2)


def cf_mean(nbar: float, T: float) -> float:
    _check(nbar, T)
    return nbar * T / _den(nbar, T)


def cf_gain(nbar: float, T: float) -> float:
    _check(nbar, T)
    if nbar == 0:
        raise DomainError("gain is undefined for nbar = 0")
    return T / _den(nbar, T)


def cf_snr(nbar: float, T: float) -> float:
    _check(nbar, T)
    if T == 1:
        raise DomainError("output SNR diverges at T = 1 (single-photon Fock state)")
    return math.sqrt(nbar * T / ((1 - T) * (nbar + 1)))


def cf_parity(nbar: float, T: float) -> float:
    _check(nbar, T)
    return (_den(nbar, T) - 2 * T * nbar) / _den(nbar, T)


def cf_thresholds(nbar: float) -> tuple[float, float, float]:
    """Critical transmissivities for gain > 1, SNR > 1 and a negative Wigner function.

    ``T_gain >= 1`` means amplification is out of reach for this ``nbar``.
    The SNR and Wigner thresholds are the same expression.
    """
    if nbar <= 0:
        raise DomainError("thresholds need nbar > 0")
    t_gain = (nbar + 1) / 2
    t_snr = (nbar + 1) / (2 * nbar + 1)
    t_wigner = (nbar + 1) / (1 + 2 * nbar)
    assert t_snr == t_wigner
    return t_gain, t_snr, t_wigner


def cf_wigner_out(nbar: float, T: float, beta) -> np.ndarray | float:
    """``p0 W_0(beta) + p1 W_1(beta)``."""
    p0, p1 = cf_populations(nbar, T)
    b2 = np.abs(np.asarray(beta)) ** 2
    w = (2 / np.pi) * np.exp(-2 * b2) * (p0 + p1 * (4 * b2 - 1))
    return float(w) if np.ndim(w) == 0 else w


def cf_wigner_thermal(nbar: float, beta) -> np.ndarray | float:
    s = 2 * nbar + 1
    w = 2 / (np.pi * s) * np.exp(-2 * np.abs(np.asarray(beta)) ** 2 / s)
    return float(w) if np.ndim(w) == 0 else w


def cf_parity_thermal(nbar: float) -> float:
    return 1 / (2 * nbar + 1)


def cf_thermal_snr(nbar: float) -> float:
    return 0.0 if nbar == 0 else nbar / math.sqrt(nbar + nbar**2)
