"""Figures of merit for single-mode density matrices.

Phase-space convention: ``beta = (q + i p) / sqrt(2)``, with the vacuum
Wigner function ``(2/pi) exp(-2|beta|^2)``, so ``W`` is normalised against
``d^2 beta = dq dp / 2`` and bounded by ``+-2/pi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import TOL_HERM, DensityMatrix

ZERO_VARIANCE = 1e-14
DEFAULT_MAX_POINTS = 4_000_000
_CHUNK_ELEMENTS = 4_000_000


class UndefinedGainError(ValueError):
    pass


class GridTooLargeError(ValueError):
    pass


def _single_mode(rho: DensityMatrix) -> np.ndarray:
    if rho.space.n_modes != 1:
        raise ValueError(f"expected a single-mode state, got dims {rho.dims}")
    return rho.data


def _diag_moment(rho: DensityMatrix, power: int) -> float:
    d = _single_mode(rho)
    n = np.arange(d.shape[0], dtype=float)
    return float(np.sum(np.diag(d).real * n**power))


def mean_photon(rho: DensityMatrix) -> float:
    return _diag_moment(rho, 1)


def second_moment(rho: DensityMatrix) -> float:
    return _diag_moment(rho, 2)


def photon_variance(rho: DensityMatrix) -> float:
    return second_moment(rho) - mean_photon(rho) ** 2


def intensity_gain(mean_out: float, mean_in: float) -> float:
    if mean_in <= 0:
        raise UndefinedGainError("gain is undefined for a vacuum input (mean photon number 0)")
    return mean_out / mean_in


def snr(rho: DensityMatrix) -> float:
    """Mean photon number over its standard deviation.

    Zero-variance states get ``inf``, except the vacuum, which gets 0 (the
    limit of the thermal and scissors-output SNR as the signal vanishes).
    """
    mean = mean_photon(rho)
    var = photon_variance(rho)
    if var <= ZERO_VARIANCE:
        return 0.0 if abs(mean) <= ZERO_VARIANCE else math.inf
    return mean / math.sqrt(var)


def parity(rho: DensityMatrix) -> float:
    """``Tr(rho (-1)^n)``."""
    d = _single_mode(rho)
    signs = (-1.0) ** np.arange(d.shape[0])
    return float(np.sum(np.diag(d).real * signs))


def negativity_region_radius(nbar: float, T: float) -> float | None:
    """Radius ``|beta|`` inside which the scissors output has ``W < 0``.

    ``None`` when the Wigner function is non-negative everywhere, i.e. for
    ``T <= (nbar + 1) / (2 nbar + 1)``.
    """
    if nbar <= 0 or not 0 < T <= 1:
        raise ValueError("need nbar > 0 and 0 < T <= 1")
    if T < (nbar + 1) / (2 * nbar + 1) - 1e-12:
        return None
    bracket = (2 * T * nbar - (nbar + (1 - T))) / (4 * nbar * T)
    return math.sqrt(max(0.0, bracket))


# Wigner function


@dataclass(frozen=True)
class GridSpec:
    q_min: float = -3.0
    q_max: float = 3.0
    n_q: int = 121
    p_min: float = -3.0
    p_max: float = 3.0
    n_p: int = 121

    def __post_init__(self):
        if self.n_q < 2 or self.n_p < 2:
            raise ValueError("a grid needs at least two points per axis")
        if not (self.q_max > self.q_min and self.p_max > self.p_min):
            raise ValueError("grid bounds must satisfy min < max")

    @property
    def q_axis(self) -> np.ndarray:
        return np.linspace(self.q_min, self.q_max, self.n_q)

    @property
    def p_axis(self) -> np.ndarray:
        return np.linspace(self.p_min, self.p_max, self.n_p)

    @property
    def n_points(self) -> int:
        return self.n_q * self.n_p

    def betas(self) -> np.ndarray:
        """Complex ``beta`` on the grid, shape ``(n_q, n_p)``."""
        q, p = np.meshgrid(self.q_axis, self.p_axis, indexing="ij")
        return (q + 1j * p) / math.sqrt(2)


@dataclass(frozen=True, eq=False)
class WignerGrid:
    q_axis: np.ndarray
    p_axis: np.ndarray
    values: np.ndarray  # values[i, j] = W(q_i, p_j)

    def argmin(self) -> tuple[float, float, float]:
        """``(W_min, q, p)`` at the grid minimum."""
        i, j = np.unravel_index(np.argmin(self.values), self.values.shape)
        return float(self.values[i, j]), float(self.q_axis[i]), float(self.p_axis[j])

    def integral(self) -> float:
        """Trapezoid estimate of the integral of ``W`` over ``d^2 beta``."""
        inner = np.trapezoid(self.values, self.p_axis, axis=1)
        return float(np.trapezoid(inner, self.q_axis)) / 2.0


def laguerre_table(n_max: int, x: np.ndarray) -> np.ndarray:
    """``L_0(x) .. L_{n_max}(x)`` stacked on a new leading axis (three-term recurrence)."""
    x = np.asarray(x, dtype=float)
    out = np.empty((n_max + 1,) + x.shape)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = 1.0 - x
    for n in range(1, n_max):
        out[n + 1] = ((2 * n + 1 - x) * out[n] - n * out[n - 1]) / (n + 1)
    return out


def wigner_laguerre(populations, beta) -> np.ndarray:
    """Wigner function of a Fock-diagonal state at the points ``beta``.

    ``W = (2/pi) exp(-2|beta|^2) sum_n p_n (-1)^n L_n(4|beta|^2)``.
    """
    p = np.asarray(populations, dtype=float)
    x = 4.0 * np.abs(np.asarray(beta)) ** 2
    L = laguerre_table(p.size - 1, x)
    weights = p * (-1.0) ** np.arange(p.size)
    series = np.tensordot(weights, L, axes=1)
    return (2.0 / math.pi) * np.exp(-x / 2.0) * series


def working_cutoff(dim: int, max_abs_alpha: float) -> int:
    """Truncation used for displacement matrices reaching amplitude ``max_abs_alpha``.

    A fixed pad of 20 levels is not enough once ``|alpha|`` grows past a few
    units; the extra ``|alpha|^2 + 6|alpha|`` keeps the low block of the
    truncated exponential converged to round-off.
    """
    a = float(max_abs_alpha)
    return dim + 20 + math.ceil(a * a + 6 * a)


def displacement_block(alphas, dim: int, cutoff: int) -> np.ndarray:
    """``<n|D(alpha)|m>`` for ``n, m < dim``, shape ``alphas.shape + (dim, dim)``.

    Built from one eigendecomposition of the truncated ``a^dag - a`` on
    ``cutoff`` levels, using ``D(|alpha| e^{i phi}) = R D(|alpha|) R^dag``
    with ``R = exp(i phi n)``.
    """
    alphas = np.asarray(alphas, dtype=complex)
    s = np.sqrt(np.arange(1, cutoff))
    X = np.diag(s, -1) - np.diag(s, 1)
    lam, V = np.linalg.eigh(1j * X)
    Vs = V[:dim]
    radius, phase = np.abs(alphas).ravel(), np.angle(alphas).ravel()
    uniq, inv = np.unique(radius, return_inverse=True)
    # D(x) = exp(x X) = V exp(-i x lam) V^dag
    real_blocks = (Vs[None, :, :] * np.exp(-1j * np.outer(uniq, lam))[:, None, :]) @ Vs.conj().T
    n = np.arange(dim)
    rot = np.exp(1j * np.multiply.outer(phase, n[:, None] - n[None, :]))
    return (real_blocks[inv] * rot).reshape(alphas.shape + (dim, dim))


def wigner_displaced_parity(rho: DensityMatrix, beta, cutoff: int | None = None) -> np.ndarray:
    """``W = (2/pi) Tr[rho D(beta) Pi D(-beta)]`` for a general single-mode ``rho``.

    Uses ``D(beta) Pi D(-beta) = D(2 beta) Pi``, so only the block of
    ``D(2 beta)`` on the support of ``rho`` is needed.
    """
    d = _single_mode(rho)
    dim = d.shape[0]
    beta = np.asarray(beta, dtype=complex)
    alphas = 2.0 * beta.ravel()
    if cutoff is None:
        cutoff = working_cutoff(dim, float(np.max(np.abs(alphas), initial=0.0)))
    # rho_mn (-1)^m, contracted against D_nm
    weighted = d * ((-1.0) ** np.arange(dim))[:, None]
    out = np.empty(alphas.size)
    chunk = max(1, _CHUNK_ELEMENTS // (dim * dim))
    for start in range(0, alphas.size, chunk):
        D = displacement_block(alphas[start:start + chunk], dim, cutoff)
        out[start:start + chunk] = np.einsum("mn,pnm->p", weighted, D).real
    return (2.0 / math.pi) * out.reshape(beta.shape)


def is_fock_diagonal(rho: DensityMatrix, tol: float = TOL_HERM) -> bool:
    d = _single_mode(rho)
    return float(np.max(np.abs(d - np.diag(np.diag(d))), initial=0.0)) <= tol


def wigner(
    rho: DensityMatrix,
    grid: GridSpec = GridSpec(),
    method: str = "auto",
    max_points: int = DEFAULT_MAX_POINTS,
) -> WignerGrid:
    """Wigner function of ``rho`` on a ``(q, p)`` grid.

    ``method`` is ``"laguerre"`` (Fock-diagonal states only),
    ``"parity"`` (any state) or ``"auto"`` (Laguerre when ``rho`` is
    diagonal to within ``TOL_HERM``).
    """
    if grid.n_points > max_points:
        raise GridTooLargeError(f"{grid.n_points} grid points exceeds the cap of {max_points}")
    if method == "auto":
        method = "laguerre" if is_fock_diagonal(rho) else "parity"
    beta = grid.betas()
    if method == "laguerre":
        if not is_fock_diagonal(rho):
            raise ValueError("the Laguerre path needs a Fock-diagonal state")
        values = wigner_laguerre(rho.populations(), beta)
    elif method == "parity":
        values = wigner_displaced_parity(rho, beta)
    else:
        raise ValueError(f"unknown method {method!r}")
    return WignerGrid(grid.q_axis, grid.p_axis, values)


def wigner_at(rho: DensityMatrix, beta: complex, method: str = "auto") -> float:
    if method == "auto":
        method = "laguerre" if is_fock_diagonal(rho) else "parity"
    if method == "laguerre":
        return float(wigner_laguerre(rho.populations(), np.array([beta]))[0])
    return float(wigner_displaced_parity(rho, np.array([beta]))[0])
