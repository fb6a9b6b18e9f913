"""The quantum scissors circuit with a thermal (or arbitrary) input.

Mode layout: ``a`` = 0 (ancilla photon in, truncated state out),
``b`` = 1 (input state in, one-photon detector), ``c`` = 2 (vacuum in,
zero-photon detector). Stages:

1. ``|1_a><1_a| (x) |0_c><0_c|`` through the asymmetric splitter ``B1`` on
   ``(a, c)`` with transmissivity ``T``;
2. input state placed in ``b``;
3. balanced splitter ``B2`` on ``(b, c)``;
4. herald ``<1_b, 0_c| ... |1_b, 0_c>``; the trace of what survives is the
   success probability, and the output is that operator divided by it.

``run_qsd`` / ``run_qsd_generic`` evaluate the herald by contracting
``rho_in`` and the post-``B1`` ancilla state with the single row
``<1_b, 0_c| B2``, which never materialises the three-mode state.
``run_qsd_dense`` does the same algebra stage by stage on the full
three-mode density matrix and is used to cross-check the contraction on
small cutoffs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import (
    DensityMatrix,
    FockSpace,
    make_fock_state,
    pad,
    partial_project,
    permute_modes,
    tensor,
)
from .optics import BeamSplitter, apply_beam_splitter, bs_row
from .states import DEFAULT_TAIL_TOL, ThermalSpec, make_thermal, thermal_cutoff, thermal_tail

MODE_A, MODE_B, MODE_C = 0, 1, 2
PD_FLOOR = 1e-15


class HeraldError(RuntimeError):
    """The requested detection pattern has (numerically) zero probability."""


@dataclass(frozen=True)
class QsdParams:
    nbar: float
    T: float
    tail_tol: float = DEFAULT_TAIL_TOL

    def __post_init__(self):
        if not 0.0 <= self.T <= 1.0:
            raise ValueError(f"T must lie in [0, 1], got {self.T}")
        ThermalSpec(self.nbar, self.tail_tol)  # validates nbar and tail_tol

    @property
    def thermal(self) -> ThermalSpec:
        return ThermalSpec(self.nbar, self.tail_tol)

    @property
    def degenerate(self) -> bool:
        """Vacuum input with a fully transmitting ``B1``: the herald can never fire."""
        return self.nbar == 0 and self.T == 1


@dataclass(frozen=True)
class HeraldOutcome:
    """Photon counts required on the detected modes ``b`` and ``c``."""

    mode_b_count: int = 1
    mode_c_count: int = 0


@dataclass(frozen=True, eq=False)
class QsdResult:
    rho_out: DensityMatrix
    p_d: float
    truncation_bound: float

    @property
    def populations(self) -> np.ndarray:
        return self.rho_out.populations()

    @property
    def p0(self) -> float:
        return float(self.populations[0])

    @property
    def p1(self) -> float:
        return float(self.populations[1])

    def off_diagonal(self) -> float:
        d = self.rho_out.data
        return float(np.max(np.abs(d - np.diag(np.diag(d)))))


def ancilla_state(T: float, dim_a: int, dim_c: int) -> DensityMatrix:
    """``B1 (|1><1| (x) |0><0|) B1^dag`` on modes ``(a, c)``."""
    # one photon stays in the N=1 sector, so the 2x2-level splitter is exact
    small = apply_beam_splitter(make_fock_state(FockSpace((2, 2)), (1, 0)),
                                BeamSplitter.from_transmissivity(0, 1, T))
    return pad(small, (dim_a, dim_c))


def _check_input(rho_in: DensityMatrix) -> None:
    if rho_in.space.n_modes != 1:
        raise ValueError(f"input must be a single-mode state, got dims {rho_in.dims}")


def _finish(unnorm: DensityMatrix, bound: float) -> QsdResult:
    p_d = unnorm.trace()
    if p_d <= PD_FLOOR:
        raise HeraldError(f"herald never fires (p_d = {p_d:.3e})")
    return QsdResult(rho_out=unnorm.normalized(), p_d=p_d, truncation_bound=bound)


def _input_bound(rho_in: DensityMatrix) -> float:
    return max(0.0, 1.0 - rho_in.trace())


def run_qsd_generic(
    rho_in: DensityMatrix,
    T: float,
    dim_a: int = 2,
    herald: HeraldOutcome = HeraldOutcome(),
    truncation_bound: float | None = None,
) -> QsdResult:
    """Scissors acting on an arbitrary single-mode input in mode ``b``.

    ``dim_b = dim_c = dim(rho_in) + 1``: the balanced splitter can move every
    input photon plus the ancilla photon into one port.
    """
    _check_input(rho_in)
    if not 0.0 <= T <= 1.0:
        raise ValueError(f"T must lie in [0, 1], got {T}")
    d = rho_in.dims[0] + 1
    sigma = ancilla_state(T, dim_a, d).as_tensor()  # [a, c, a', c']
    rho_b = np.zeros((d, d), dtype=complex)
    rho_b[:-1, :-1] = rho_in.data
    k = bs_row(np.pi / 4, d, d, (herald.mode_b_count, herald.mode_c_count))  # [b, c]
    out = np.einsum("bc,bB,acAC,BC->aA", k, rho_b, sigma, k.conj(), optimize=True)
    unnorm = DensityMatrix(FockSpace((dim_a,)), out)
    bound = _input_bound(rho_in) if truncation_bound is None else truncation_bound
    return _finish(unnorm, bound)


def run_qsd(params: QsdParams, dim_a: int = 2) -> QsdResult:
    """Thermal-input scissors at ``(nbar, T)``."""
    if params.degenerate:
        raise HeraldError("herald never fires at nbar = 0, T = 1")
    spec = params.thermal
    d = thermal_cutoff(spec)
    rho_th = make_thermal(spec, d)
    return run_qsd_generic(rho_th, params.T, dim_a=dim_a, truncation_bound=thermal_tail(spec.nbar, d))


def run_qsd_dense(
    rho_in: DensityMatrix,
    T: float,
    dim_a: int = 2,
    herald: HeraldOutcome = HeraldOutcome(),
) -> QsdResult:
    """Stage-by-stage evaluation on the full three-mode density matrix.

    Memory grows as ``(dim_a * d^2)^2``; intended for small cutoffs.
    """
    _check_input(rho_in)
    d = rho_in.dims[0] + 1
    sigma = ancilla_state(T, dim_a, d)  # modes (a, c)
    rho_b = pad(rho_in, (d,))
    # (a, c) (x) b -> (a, b, c)
    rho = permute_modes(tensor(sigma, rho_b), (0, 2, 1))
    rho = apply_beam_splitter(rho, BeamSplitter.balanced(MODE_B, MODE_C))
    rho = partial_project(rho, MODE_C, herald.mode_c_count)
    rho = partial_project(rho, MODE_B, herald.mode_b_count)
    return _finish(rho, _input_bound(rho_in))
