"""Input states: truncated thermal light and Fock ancillas."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import DensityMatrix, FockSpace, make_fock_state

DEFAULT_TAIL_TOL = 1e-12


@dataclass(frozen=True)
class ThermalSpec:
    nbar: float
    tail_tol: float = DEFAULT_TAIL_TOL

    def __post_init__(self):
        if not (self.nbar >= 0 and math.isfinite(self.nbar)):
            raise ValueError(f"nbar must be a finite number >= 0, got {self.nbar}")
        if not 0 < self.tail_tol < 1:
            raise ValueError(f"tail_tol must lie in (0, 1), got {self.tail_tol}")

    @property
    def ratio(self) -> float:
        """Geometric ratio nbar / (nbar + 1) of successive populations."""
        return self.nbar / (self.nbar + 1.0)


def thermal_populations(nbar: float, dim: int) -> np.ndarray:
    """``p_n = nbar^n / (nbar + 1)^(n + 1)`` for ``n < dim``."""
    q = nbar / (nbar + 1.0)
    return q ** np.arange(dim) / (nbar + 1.0)


def thermal_tail(nbar: float, dim: int) -> float:
    """Probability mass of photon numbers ``>= dim``."""
    return (nbar / (nbar + 1.0)) ** dim


def thermal_moment_tails(nbar: float, dim: int) -> tuple[float, float]:
    """Contributions of photon numbers ``>= dim`` to the mean and second moment.

    The geometric law is memoryless: beyond ``dim`` the photon number is
    ``dim + m`` with ``m`` thermal again, weighted by the tail mass.
    """
    tail = thermal_tail(nbar, dim)
    return tail * (dim + nbar), tail * (dim**2 + 2 * dim * nbar + nbar + 2 * nbar**2)


def thermal_cutoff(spec: ThermalSpec) -> int:
    """Smallest dimension whose discarded tail is at most ``spec.tail_tol``.

    Never below 2, so the single-photon level always exists.
    """
    q = spec.ratio
    if q == 0.0:
        return 2
    d = max(2, math.ceil(math.log(spec.tail_tol) / math.log(q)))
    # guard the log estimate against rounding on either side
    while d > 2 and q ** (d - 1) <= spec.tail_tol:
        d -= 1
    while q**d > spec.tail_tol:
        d += 1
    return d


def make_thermal(spec: ThermalSpec, dim: int | None = None) -> DensityMatrix:
    """Truncated thermal state, diagonal in the Fock basis.

    Not renormalized: the trace is ``1 - thermal_tail(nbar, dim)``.
    """
    if dim is None:
        dim = thermal_cutoff(spec)
    return DensityMatrix(FockSpace((dim,)), np.diag(thermal_populations(spec.nbar, dim)))


def thermal_moments(nbar: float) -> tuple[float, float, float]:
    """Mean, second moment and SNR of the untruncated thermal state."""
    if nbar < 0:
        raise ValueError("nbar must be >= 0")
    mean = float(nbar)
    second = nbar + 2.0 * nbar**2
    snr = 0.0 if nbar == 0 else nbar / math.sqrt(nbar + nbar**2)
    return mean, second, snr


def fock_state(dim: int, n: int) -> DensityMatrix:
    """Single-mode ``|n><n|`` on ``dim`` levels."""
    return make_fock_state(FockSpace((dim,)), (n,))
