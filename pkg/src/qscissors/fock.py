"""Dense density matrices on truncated multimode Fock spaces.

Composite spaces are ordered tensor products with mode 0 as the leftmost
(slowest-varying) factor, so the basis state ``|n_0, n_1, ..., n_{k-1}>``
sits at ``np.ravel_multi_index(counts, dims)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

TOL_HERM = 1e-12
TOL_PSD = 1e-10
TOL_TRACE = 1e-12


class DimensionError(ValueError):
    """Raised when a mode index, photon count or matrix shape does not fit a space."""


@dataclass(frozen=True)
class FockSpace:
    """Ordered tensor product of truncated single-mode Fock spaces.

    ``dims[m]`` is the number of levels kept for mode ``m`` (photon numbers
    ``0 .. dims[m] - 1``). An empty ``dims`` is the trivial one-dimensional
    space left over after every mode has been measured.
    """

    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if any(d < 1 for d in dims):
            raise DimensionError(f"mode dimensions must be >= 1, got {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def n_modes(self) -> int:
        return len(self.dims)

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.dims, dtype=np.int64)) if self.dims else 1

    def check_mode(self, mode: int) -> int:
        if not 0 <= mode < self.n_modes:
            raise DimensionError(f"mode {mode} out of range for {self.n_modes} modes")
        return mode

    def index(self, counts) -> int:
        """Flat basis index of the product state with the given photon counts."""
        counts = tuple(int(c) for c in counts)
        if len(counts) != self.n_modes:
            raise DimensionError(f"expected {self.n_modes} counts, got {len(counts)}")
        for m, (c, d) in enumerate(zip(counts, self.dims)):
            if not 0 <= c < d:
                raise DimensionError(f"count {c} not representable in mode {m} (dim {d})")
        if not counts:
            return 0
        return int(np.ravel_multi_index(counts, self.dims))

    def without(self, mode: int) -> FockSpace:
        self.check_mode(mode)
        return FockSpace(self.dims[:mode] + self.dims[mode + 1:])

    # single-mode operators embedded into the composite space

    def _embed(self, mode: int, local: np.ndarray) -> np.ndarray:
        self.check_mode(mode)
        factors = [np.eye(d) for d in self.dims]
        factors[mode] = local
        return reduce(np.kron, factors)

    def annihilation(self, mode: int) -> np.ndarray:
        return self._embed(mode, annihilation(self.dims[mode]))

    def creation(self, mode: int) -> np.ndarray:
        return self._embed(mode, annihilation(self.dims[mode]).T)

    def number(self, mode: int) -> np.ndarray:
        return self._embed(mode, np.diag(np.arange(self.dims[mode], dtype=float)))


def annihilation(dim: int) -> np.ndarray:
    """Truncated lowering operator with ``<n-1|a|n> = sqrt(n)``."""
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1)


def creation(dim: int) -> np.ndarray:
    return annihilation(dim).T.copy()


def number(dim: int) -> np.ndarray:
    return np.diag(np.arange(dim, dtype=float))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A (possibly unnormalized) density operator stored as a dense matrix.

    The array is made read-only on construction; operations return new
    instances. Traces below one are allowed and mean either a truncated
    input or an unnormalized heralded branch.
    """

    space: FockSpace
    data: np.ndarray

    def __post_init__(self):
        space = self.space if isinstance(self.space, FockSpace) else FockSpace(self.space)
        data = np.array(self.data, dtype=complex)
        n = space.total_dim
        if data.shape != (n, n):
            raise DimensionError(f"matrix shape {data.shape} does not match space dim {n}")
        data.flags.writeable = False
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "data", data)

    @property
    def dims(self) -> tuple[int, ...]:
        return self.space.dims

    def trace(self) -> float:
        return float(np.trace(self.data).real)

    def normalized(self) -> DensityMatrix:
        tr = self.trace()
        if tr <= 0:
            raise ValueError("cannot normalize a density matrix with zero trace")
        return DensityMatrix(self.space, self.data / tr)

    def populations(self) -> np.ndarray:
        return np.diag(self.data).real.copy()

    def as_tensor(self) -> np.ndarray:
        """View with shape ``dims + dims`` (ket indices first, then bra indices)."""
        return self.data.reshape(self.dims + self.dims)

    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.data - self.data.conj().T), initial=0.0))

    def min_eigenvalue(self) -> float:
        herm = 0.5 * (self.data + self.data.conj().T)
        return float(np.linalg.eigvalsh(herm)[0])

    def validate(self, tol_herm=TOL_HERM, tol_psd=TOL_PSD, tol_trace=TOL_TRACE) -> None:
        """Full check of Hermiticity, positivity and trace; raises ValueError.

        Positivity needs an eigendecomposition, so this is kept out of the
        hot paths and called from tests and diagnostics only.
        """
        herr = self.hermiticity_error()
        if herr > tol_herm:
            raise ValueError(f"not Hermitian: max |rho - rho^dag| = {herr:.3e}")
        lam = self.min_eigenvalue()
        if lam < -tol_psd:
            raise ValueError(f"not positive semidefinite: min eigenvalue {lam:.3e}")
        tr = self.trace()
        if not -tol_trace <= tr <= 1 + tol_trace:
            raise ValueError(f"trace {tr!r} outside [0, 1]")


def _as_space(space) -> FockSpace:
    return space if isinstance(space, FockSpace) else FockSpace(tuple(space))


def make_fock_state(space, counts) -> DensityMatrix:
    """Projector onto the product Fock state ``|counts>``."""
    space = _as_space(space)
    i = space.index(counts)
    data = np.zeros((space.total_dim, space.total_dim), dtype=complex)
    data[i, i] = 1.0
    return DensityMatrix(space, data)


def diagonal_state(populations) -> DensityMatrix:
    """Single-mode state that is diagonal in the Fock basis."""
    p = np.asarray(populations, dtype=float)
    return DensityMatrix(FockSpace((p.size,)), np.diag(p))


def pure_state(amplitudes, dims=None) -> DensityMatrix:
    """``|psi><psi|`` for the given amplitude vector (not renormalized)."""
    psi = np.asarray(amplitudes, dtype=complex).ravel()
    space = FockSpace((psi.size,) if dims is None else tuple(dims))
    return DensityMatrix(space, np.outer(psi, psi.conj()))


def tensor(rho_a: DensityMatrix, rho_b: DensityMatrix) -> DensityMatrix:
    """``rho_a (x) rho_b``; the modes of ``rho_a`` come first."""
    space = FockSpace(rho_a.dims + rho_b.dims)
    return DensityMatrix(space, np.kron(rho_a.data, rho_b.data))


def permute_modes(rho: DensityMatrix, order) -> DensityMatrix:
    """Reorder modes so that new mode ``m`` is old mode ``order[m]``."""
    order = [int(m) for m in order]
    k = rho.space.n_modes
    if sorted(order) != list(range(k)):
        raise DimensionError(f"{order} is not a permutation of {k} modes")
    space = FockSpace(tuple(rho.dims[m] for m in order))
    t = np.transpose(rho.as_tensor(), order + [k + m for m in order])
    n = space.total_dim
    return DensityMatrix(space, t.reshape(n, n))


def pad(rho: DensityMatrix, dims) -> DensityMatrix:
    """Embed ``rho`` into a space with the same number of modes and larger dims."""
    dims = tuple(int(d) for d in dims)
    if len(dims) != rho.space.n_modes or any(d < d0 for d, d0 in zip(dims, rho.dims)):
        raise DimensionError(f"cannot pad dims {rho.dims} to {dims}")
    t = np.zeros(dims + dims, dtype=complex)
    t[tuple(slice(0, d) for d in rho.dims * 2)] = rho.as_tensor()
    space = FockSpace(dims)
    n = space.total_dim
    return DensityMatrix(space, t.reshape(n, n))


def partial_project(rho: DensityMatrix, mode: int, count: int) -> DensityMatrix:
    """Unnormalized ``<count|rho|count>`` on the remaining modes.

    The trace of the result is the probability of observing ``count``
    photons in ``mode``. Measuring the last mode leaves a 1x1 matrix.
    """
    space = rho.space
    space.check_mode(mode)
    if not 0 <= count < space.dims[mode]:
        raise DimensionError(
            f"count {count} not representable in mode {mode} (dim {space.dims[mode]})"
        )
    k = space.n_modes
    t = np.take(rho.as_tensor(), count, axis=mode)
    t = np.take(t, count, axis=k - 1 + mode)
    rest = space.without(mode)
    n = rest.total_dim
    return DensityMatrix(rest, t.reshape(n, n))


def partial_trace(rho: DensityMatrix, mode: int) -> DensityMatrix:
    space = rho.space
    space.check_mode(mode)
    k = space.n_modes
    t = np.trace(rho.as_tensor(), axis1=mode, axis2=k + mode)
    rest = space.without(mode)
    n = rest.total_dim
    return DensityMatrix(rest, t.reshape(n, n))


def expectation(rho: DensityMatrix, op) -> complex:
    """``Tr(rho O)``."""
    op = np.asarray(op)
    if op.shape != rho.data.shape:
        raise DimensionError(f"operator shape {op.shape} != state shape {rho.data.shape}")
    # Tr(AB) = sum_ij A_ij B_ji
    return complex(np.einsum("ij,ji->", rho.data, op))
