"""Two-mode beam splitters built sector by sector in total photon number.

A beam splitter on modes ``(i, j)`` with mixing angle ``theta`` is
``B = exp(theta (a_i^dag a_j - a_i a_j^dag))``. It conserves ``n_i + n_j``,
so it is block diagonal in that total; each block is exponentiated on its
own, which keeps the construction exact on any truncated space. In the
one-photon block

    |1,0> -> t|1,0> - r|0,1>,     |0,1> -> r|1,0> + t|0,1>

with ``t = cos(theta)``, ``r = sin(theta)``, matching
``B a_i B^dag = t a_i - r a_j`` and ``B a_j B^dag = r a_i + t a_j``.
"""

from __future__ import annotations

import math
import string
from dataclasses import dataclass

import numpy as np

from .fock import DensityMatrix, DimensionError, FockSpace


@dataclass(frozen=True)
class BeamSplitter:
    mode_i: int
    mode_j: int
    theta: float

    def __post_init__(self):
        if self.mode_i == self.mode_j:
            raise ValueError("beam splitter needs two distinct modes")
        if self.mode_i < 0 or self.mode_j < 0:
            raise ValueError("mode indices must be non-negative")
        if not 0.0 <= self.theta <= math.pi / 2 + 1e-15:
            raise ValueError(f"theta must lie in [0, pi/2], got {self.theta}")

    @classmethod
    def from_transmissivity(cls, mode_i: int, mode_j: int, T: float) -> BeamSplitter:
        if not 0.0 <= T <= 1.0:
            raise ValueError(f"transmissivity must lie in [0, 1], got {T}")
        return cls(mode_i, mode_j, math.acos(math.sqrt(T)))

    @classmethod
    def balanced(cls, mode_i: int, mode_j: int) -> BeamSplitter:
        return cls(mode_i, mode_j, math.pi / 4)

    @property
    def t(self) -> float:
        return math.cos(self.theta)

    @property
    def r(self) -> float:
        return math.sin(self.theta)

    @property
    def T(self) -> float:
        return self.t**2


def sector_levels(N: int, dim_i: int, dim_j: int) -> np.ndarray:
    """Photon numbers ``n_i`` of the states ``|n_i, N - n_i>`` kept by the truncation."""
    lo = max(0, N - dim_j + 1)
    hi = min(N, dim_i - 1)
    return np.arange(lo, hi + 1)


def sector_generator(N: int, dim_i: int = None, dim_j: int = None) -> np.ndarray:
    """Real antisymmetric matrix of ``a_i^dag a_j - a_i a_j^dag`` on one sector.

    Rows and columns follow ``sector_levels`` (ascending ``n_i``).
    """
    dim_i = N + 1 if dim_i is None else dim_i
    dim_j = N + 1 if dim_j is None else dim_j
    ks = sector_levels(N, dim_i, dim_j)
    # <k+1, N-k-1| a_i^dag a_j |k, N-k> = sqrt((k+1)(N-k))
    off = np.sqrt((ks[:-1] + 1.0) * (N - ks[:-1]))
    return np.diag(off, -1) - np.diag(off, 1)


def sector_block(theta: float, N: int, dim_i: int = None, dim_j: int = None) -> np.ndarray:
    """``exp(theta * G)`` for the sector generator ``G``.

    ``iG`` is Hermitian, so one ``eigh`` gives the exponential; the result is
    real orthogonal.
    """
    G = sector_generator(N, dim_i, dim_j)
    if G.shape[0] == 1 or theta == 0.0:
        return np.eye(G.shape[0])
    lam, W = np.linalg.eigh(1j * G)
    U = (W * np.exp(-1j * theta * lam)) @ W.conj().T
    return U.real


def local_unitary(theta: float, dim_i: int, dim_j: int) -> np.ndarray:
    """Beam splitter on the two-mode space ``dims = (dim_i, dim_j)``."""
    n = dim_i * dim_j
    U = np.zeros((n, n))
    for N in range(dim_i + dim_j - 1):
        ks = sector_levels(N, dim_i, dim_j)
        idx = ks * dim_j + (N - ks)
        U[np.ix_(idx, idx)] = sector_block(theta, N, dim_i, dim_j)
    return U


def bs_row(theta: float, dim_i: int, dim_j: int, counts) -> np.ndarray:
    """Row ``<n_i, n_j| B`` of the two-mode beam splitter, shaped ``(dim_i, dim_j)``.

    Only the sector ``N = n_i + n_j`` contributes, so this is exact and cheap
    even when the full unitary would be large.
    """
    ni, nj = counts
    if not (0 <= ni < dim_i and 0 <= nj < dim_j):
        raise DimensionError(f"counts {counts} not representable in dims {(dim_i, dim_j)}")
    N = ni + nj
    ks = sector_levels(N, dim_i, dim_j)
    block = sector_block(theta, N, dim_i, dim_j)
    row = np.zeros((dim_i, dim_j))
    row[ks, N - ks] = block[int(np.searchsorted(ks, ni))]
    return row


def embed_two_mode(space: FockSpace, mode_i: int, mode_j: int, local: np.ndarray) -> np.ndarray:
    """Lift an operator on ``(mode_i, mode_j)`` to the full composite space."""
    space.check_mode(mode_i)
    space.check_mode(mode_j)
    k = space.n_modes
    di, dj = space.dims[mode_i], space.dims[mode_j]
    letters = string.ascii_letters
    ket, bra = letters[:k], letters[k:2 * k]
    operands, subs = [np.asarray(local).reshape(di, dj, di, dj)], [
        ket[mode_i] + ket[mode_j] + bra[mode_i] + bra[mode_j]
    ]
    for m in range(k):
        if m not in (mode_i, mode_j):
            operands.append(np.eye(space.dims[m]))
            subs.append(ket[m] + bra[m])
    full = np.einsum(",".join(subs) + "->" + ket + bra, *operands)
    n = space.total_dim
    return full.reshape(n, n)


def bs_unitary(space, spec: BeamSplitter) -> np.ndarray:
    """Dense beam-splitter unitary on the full composite space.

    The caller is responsible for choosing mode dimensions large enough
    for the photon numbers that will actually pass through.
    """
    space = space if isinstance(space, FockSpace) else FockSpace(tuple(space))
    di, dj = space.dims[space.check_mode(spec.mode_i)], space.dims[space.check_mode(spec.mode_j)]
    return embed_two_mode(space, spec.mode_i, spec.mode_j, local_unitary(spec.theta, di, dj))


def apply_unitary(rho: DensityMatrix, U) -> DensityMatrix:
    """``U rho U^dag``."""
    U = np.asarray(U)
    if U.shape != rho.data.shape:
        raise DimensionError(f"unitary shape {U.shape} != state shape {rho.data.shape}")
    return DensityMatrix(rho.space, U @ rho.data @ U.conj().T)


def apply_beam_splitter(rho: DensityMatrix, spec: BeamSplitter) -> DensityMatrix:
    """``B rho B^dag`` by contracting only the two affected modes.

    Same result as ``apply_unitary(rho, bs_unitary(rho.space, spec))`` without
    forming the full-space unitary.
    """
    space = rho.space
    i, j = space.check_mode(spec.mode_i), space.check_mode(spec.mode_j)
    di, dj = space.dims[i], space.dims[j]
    L = local_unitary(spec.theta, di, dj).reshape(di, dj, di, dj)
    k = space.n_modes
    t = rho.as_tensor()
    letters = string.ascii_letters
    ket, bra = list(letters[:k]), list(letters[k:2 * k])
    x, y, u, v = letters[2 * k:2 * k + 4]
    # ket side: t[.., n_i, .., n_j, ..] -> sum L[x, y, n_i, n_j] t
    src = "".join(ket) + "".join(bra)
    out_ket = ket.copy()
    out_ket[i], out_ket[j] = x, y
    t = np.einsum(f"{x}{y}{ket[i]}{ket[j]},{src}->{''.join(out_ket)}{''.join(bra)}", L, t)
    # bra side: multiply by L^dag = L^T (real) from the right
    src = "".join(out_ket) + "".join(bra)
    out_bra = bra.copy()
    out_bra[i], out_bra[j] = u, v
    t = np.einsum(f"{u}{v}{bra[i]}{bra[j]},{src}->{''.join(out_ket)}{''.join(out_bra)}", L, t)
    n = space.total_dim
    return DensityMatrix(space, t.reshape(n, n))


def heisenberg_check(spec: BeamSplitter, dims=(4, 4)) -> float:
    """Largest entry of ``B a_i B^dag - (t a_i - r a_j)`` and ``B a_j B^dag - (r a_i + t a_j)``.

    Evaluated on a two-mode test space, restricted to basis states whose
    total photon number ``n_i + n_j`` stays below ``min(dims)``: only those
    sectors are complete under truncation, which in particular drops the
    top Fock level of each mode.
    """
    space = FockSpace(tuple(dims))
    U = bs_unitary(space, BeamSplitter(0, 1, spec.theta))
    ai = space.annihilation(0)
    aj = space.annihilation(1)
    t, r = spec.t, spec.r
    d1 = U @ ai @ U.T - (t * ai - r * aj)
    d2 = U @ aj @ U.T - (r * ai + t * aj)
    ni, nj = np.indices(space.dims).reshape(2, -1)
    keep = ni + nj < min(space.dims)
    sub = np.ix_(keep, keep)
    return float(max(np.max(np.abs(d1[sub])), np.max(np.abs(d2[sub]))))
