"""Per-point figures of merit from both the simulated circuit and the closed forms."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import analytic as cf
from .observables import (
    UndefinedGainError,
    intensity_gain,
    mean_photon,
    negativity_region_radius,
    parity,
    snr,
)
from .pipeline import HeraldError, QsdParams, QsdResult, run_qsd
from .states import DEFAULT_TAIL_TOL

QUANTITIES = ("pd", "p0", "p1", "mean", "gain", "snr", "parity")


def _closed_forms(nbar: float, T: float) -> dict[str, float | None]:
    p0, p1 = cf.cf_populations(nbar, T)
    return {
        "pd": cf.cf_pd(nbar, T),
        "p0": p0,
        "p1": p1,
        "mean": cf.cf_mean(nbar, T),
        "gain": cf.cf_gain(nbar, T) if nbar > 0 else None,
        "snr": cf.cf_snr(nbar, T) if T < 1 else math.inf,
        "parity": cf.cf_parity(nbar, T),
    }


def _numeric(nbar: float, result: QsdResult) -> dict[str, float | None]:
    rho = result.rho_out
    mean = mean_photon(rho)
    try:
        gain = intensity_gain(mean, nbar)
    except UndefinedGainError:
        gain = None
    return {
        "pd": result.p_d,
        "p0": result.p0,
        "p1": result.p1,
        "mean": mean,
        "gain": gain,
        "snr": snr(rho),
        "parity": parity(rho),
    }


def _abs_err(a, b) -> float | None:
    if a is None or b is None:
        return None
    if math.isinf(a) or math.isinf(b):
        return 0.0 if a == b else math.inf
    return abs(a - b)


@dataclass
class MeritReport:
    nbar: float
    T: float
    numeric: dict = field(default_factory=dict)
    analytic: dict = field(default_factory=dict)
    negativity_radius: float | None = None
    degenerate: bool = False
    result: QsdResult | None = None

    def error(self, name: str) -> float | None:
        return _abs_err(self.numeric.get(name), self.analytic.get(name))

    def max_error(self) -> float | None:
        errs = [e for e in (self.error(q) for q in QUANTITIES) if e is not None]
        return max(errs) if errs else None


def merit_report(nbar: float, T: float, tail_tol: float = DEFAULT_TAIL_TOL) -> MeritReport:
    """Simulate one ``(nbar, T)`` point and pair every quantity with its closed form.

    At the degenerate corner ``(0, 1)`` the report is flagged and left empty.
    """
    params = QsdParams(nbar, T, tail_tol)
    if params.degenerate:
        return MeritReport(nbar, T, degenerate=True)
    try:
        result = run_qsd(params)
    except HeraldError:
        return MeritReport(nbar, T, degenerate=True)
    radius = negativity_region_radius(nbar, T) if nbar > 0 and T > 0 else None
    return MeritReport(
        nbar=nbar,
        T=T,
        numeric=_numeric(nbar, result),
        analytic=_closed_forms(nbar, T),
        negativity_radius=radius,
        result=result,
    )
