"""Density-matrix simulation of thermal-state truncation in a quantum scissors device."""

from .analytic import (
    cf_gain,
    cf_mean,
    cf_parity,
    cf_pd,
    cf_populations,
    cf_snr,
    cf_thresholds,
    cf_wigner_out,
)
from .fock import (
    DensityMatrix,
    DimensionError,
    diagonal_state,
    FockSpace,
    expectation,
    make_fock_state,
    partial_project,
    partial_trace,
    pure_state,
    tensor,
)
from .observables import (
    GridSpec,
    WignerGrid,
    intensity_gain,
    mean_photon,
    negativity_region_radius,
    parity,
    second_moment,
    snr,
    wigner,
)
from .optics import BeamSplitter, apply_unitary, bs_unitary, heisenberg_check
from .pipeline import (
    HeraldError,
    HeraldOutcome,
    QsdParams,
    QsdResult,
    run_qsd,
    run_qsd_dense,
    run_qsd_generic,
)
from .report import MeritReport, merit_report
from .states import ThermalSpec, make_thermal, thermal_cutoff, thermal_moments
from .validation import run_checks

__version__ = "0.1.0"
