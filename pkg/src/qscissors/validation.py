"""Invariant and oracle checks run by ``qscissors validate``.

Each check returns the worst deviation it saw and the bound it must stay
under. Bounds tied to thermal truncation scale with ``tail_tol``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import analytic as cf
from .fock import FockSpace, diagonal_state
from .observables import GridSpec, parity, wigner, wigner_at
from .optics import BeamSplitter, bs_unitary, heisenberg_check
from .pipeline import QsdParams, run_qsd, run_qsd_dense, run_qsd_generic
from .report import QUANTITIES, merit_report
from .states import (
    ThermalSpec,
    make_thermal,
    thermal_cutoff,
    thermal_moment_tails,
    thermal_moments,
)

REFERENCE_NBARS = (0.0, 0.2, 0.5, 1.0, 1.2)
REFERENCE_TS = tuple(round(0.1 * k, 10) for k in range(11))


def reference_grid():
    """The reference ``(nbar, T)`` grid, minus the degenerate corner."""
    return [(n, T) for n in REFERENCE_NBARS for T in REFERENCE_TS if not (n == 0 and T == 1)]


@dataclass
class CheckResult:
    name: str
    value: float
    bound: float

    @property
    def passed(self) -> bool:
        return bool(self.value <= self.bound)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<34s} value {self.value: .3e}  bound {self.bound: .1e}"


def check_oracle(tail_tol):
    worst = 0.0
    for nbar, T in reference_grid():
        rep = merit_report(nbar, T, tail_tol)
        for q in QUANTITIES:
            e = rep.error(q)
            if e is not None:
                worst = max(worst, e)
    return worst, 10 * tail_tol


def check_pd_lines(tail_tol):
    Ts = np.linspace(0, 1, 11)
    worst = 0.0
    for nbar, (c0, c1) in ((1.0, (0.25, -0.125)), (0.0, (0.5, -0.5))):
        pts = [(T, run_qsd(QsdParams(nbar, T, tail_tol)).p_d) for T in Ts if not (nbar == 0 and T == 1)]
        x, y = np.array(pts).T
        worst = max(worst, float(np.max(np.abs(y - (c0 + c1 * x)))))
    return worst, 1e-12


def check_limits(tail_tol):
    worst = 0.0
    vac, one = np.diag([1.0, 0.0]), np.diag([0.0, 1.0])
    for nbar in REFERENCE_NBARS:
        r = run_qsd(QsdParams(nbar, 0.0, tail_tol)).rho_out.data
        worst = max(worst, float(np.max(np.abs(r - vac))))
        if nbar > 0:
            r = run_qsd(QsdParams(nbar, 1.0, tail_tol)).rho_out.data
            worst = max(worst, float(np.max(np.abs(r - one))))
    return worst, 1e-12


def check_diagonal(tail_tol):
    return max(run_qsd(QsdParams(n, T, tail_tol)).off_diagonal() for n, T in reference_grid()), 1e-12


def check_normalization(tail_tol):
    worst = 0.0
    for n, T in reference_grid():
        res = run_qsd(QsdParams(n, T, tail_tol))
        worst = max(worst, abs(res.p0 + res.p1 - 1))
    return worst, 1e-11


def check_unitarity(tail_tol):
    worst = 0.0
    for dims in ((2, 2), (2, 8), (6, 6), (2, 5, 5)):
        space = FockSpace(dims)
        for theta in (0.0, 0.3, math.pi / 4, 1.2, math.pi / 2):
            U = bs_unitary(space, BeamSplitter(0, len(dims) - 1, theta))
            worst = max(worst, float(np.max(np.abs(U.conj().T @ U - np.eye(U.shape[0])))))
    return worst, 1e-12


def check_heisenberg(tail_tol):
    thetas = (0.0, 0.2, math.pi / 4, 1.0, math.pi / 2)
    return max(heisenberg_check(BeamSplitter(0, 1, th), (5, 5)) for th in thetas), 1e-10


def check_ancilla_mode(tail_tol):
    worst = 0.0
    for n, T in reference_grid():
        worst = max(worst, abs(run_qsd(QsdParams(n, T, tail_tol), dim_a=3).populations[2]))
    return worst, 1e-12


def check_dense_route(tail_tol):
    worst = 0.0
    for n in (0.2, 1.0):
        rho = make_thermal(ThermalSpec(n, 1e-3))
        for T in (0.0, 0.35, 0.9):
            a = run_qsd_dense(rho, T)
            b = run_qsd_generic(rho, T)
            worst = max(worst, float(np.max(np.abs(a.rho_out.data - b.rho_out.data))), abs(a.p_d - b.p_d))
    return worst, 1e-12


def check_thermal_moments(tail_tol):
    """Truncated moments against the exact ones, as a fraction of 10x the discarded tail."""
    worst = 0.0
    for n in REFERENCE_NBARS:
        spec = ThermalSpec(n, tail_tol)
        d = thermal_cutoff(spec)
        pops = make_thermal(spec, d).populations()
        k = np.arange(d)
        mean, second, _ = thermal_moments(n)
        tail1, tail2 = thermal_moment_tails(n, d)
        b1 = max(10 * tail_tol * d, 10 * tail1) + 1e-14
        b2 = 10 * tail2 + 1e-14
        worst = max(worst, abs(pops @ k - mean) / b1, abs(pops @ k**2 - second) / b2)
    return worst, 1.0


def check_parity_wigner(tail_tol):
    worst = 0.0
    states = [make_thermal(ThermalSpec(n, tail_tol)) for n in REFERENCE_NBARS]
    states += [run_qsd(QsdParams(n, T, tail_tol)).rho_out for n, T in reference_grid()]
    for rho in states:
        worst = max(worst, abs(parity(rho) - math.pi / 2 * wigner_at(rho, 0.0)))
    return worst, 1e-10


def check_wigner_paths(tail_tol):
    worst = 0.0
    grid = GridSpec()
    for n in (0, 1, 4, 10):
        pops = np.zeros(11)
        pops[n] = 1.0
        rho = diagonal_state(pops)
        a = wigner(rho, grid, method="laguerre").values
        b = wigner(rho, grid, method="parity").values
        worst = max(worst, float(np.max(np.abs(a - b))))
    return worst, 1e-8


def check_wigner_analytic(tail_tol):
    worst = 0.0
    grid = GridSpec(n_q=61, n_p=61)
    for n, T in ((0.5, 0.4), (0.5, 0.9), (1.0, 0.8), (0.2, 1.0)):
        w = wigner(run_qsd(QsdParams(n, T, tail_tol)).rho_out, grid).values
        worst = max(worst, float(np.max(np.abs(w - cf.cf_wigner_out(n, T, grid.betas())))))
    return worst, 1e-10


def check_wigner_nonnegative(tail_tol):
    """(0.5, 0.4), below threshold: the most negative grid value, sign-flipped."""
    w = wigner(run_qsd(QsdParams(0.5, 0.4, tail_tol)).rho_out, GridSpec()).argmin()[0]
    return max(0.0, -w), 1e-12


def check_wigner_negative(tail_tol):
    """(0.5, 0.9), above threshold: the grid minimum itself must be below zero."""
    w = wigner(run_qsd(QsdParams(0.5, 0.9, tail_tol)).rho_out, GridSpec()).argmin()[0]
    return w, -1e-12


def check_wigner_normalization(tail_tol):
    worst = 0.0
    for n, T in ((0.5, 0.9), (1.2, 0.5), (0.0, 0.3)):
        half = 4 + math.sqrt(n)
        # |beta| <= half  <=>  |q|, |p| <= sqrt(2) * half
        lim = math.sqrt(2) * half
        grid = GridSpec(-lim, lim, 401, -lim, lim, 401)
        w = wigner(run_qsd(QsdParams(n, T, tail_tol)).rho_out, grid)
        worst = max(worst, abs(w.integral() - 1))
    return worst, 1e-6


CHECKS: dict[str, Callable] = {
    "oracle_equivalence": check_oracle,
    "pd_linear_lines": check_pd_lines,
    "limiting_states": check_limits,
    "output_diagonal": check_diagonal,
    "p0_plus_p1": check_normalization,
    "bs_unitarity": check_unitarity,
    "heisenberg_relations": check_heisenberg,
    "ancilla_mode_dim3": check_ancilla_mode,
    "dense_vs_contracted": check_dense_route,
    "thermal_moments": check_thermal_moments,
    "parity_equals_wigner0": check_parity_wigner,
    "wigner_path_agreement": check_wigner_paths,
    "wigner_vs_closed_form": check_wigner_analytic,
    "wigner_nonnegative_below_threshold": check_wigner_nonnegative,
    "wigner_negative_above_threshold": check_wigner_negative,
    "wigner_normalization": check_wigner_normalization,
}


def run_checks(tail_tol: float = 1e-12, names=None) -> list[CheckResult]:
    out = []
    for name, fn in CHECKS.items():
        if names is not None and name not in names:
            continue
        value, bound = fn(tail_tol)
        out.append(CheckResult(name, float(value), float(bound)))
    return out
