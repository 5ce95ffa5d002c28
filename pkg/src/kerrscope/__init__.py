"""Steady state of the coherently driven, damped Kerr oscillator.

Two independent routes to the stationary photon statistics are provided:
the closed-form photon distribution (:mod:`kerrscope.analytic`) and a
truncated-Fock master-equation solve (:mod:`kerrscope.lindblad`).
:mod:`kerrscope.sweep` scans them over detuning or drive and recovers the
Kerr coefficient from the spacing of the photon-number peaks.
"""

__version__ = "0.1.0"

from .model import ModelParams, NonlinearSign, ScaledParams, resolve_sign_convention, scale
from .analytic import (PhotonDistribution, ScalarObservables, ValidityWarning, linear_limit,
                       log_cmm, observables, photon_distribution)
from .lindblad import (DensityMatrix, FidelityPair, FockConfig, InstabilityError,
                       NoConvergenceError, SingularSystemError, SolverError, build_hamiltonian,
                       build_liouvillian, evolve, observables_full, steady_state)
from .sweep import (Engine, Grid, InsufficientPeaksError, PeakEstimate, SweepResult,
                    detect_peaks, estimate_alpha, predict_resonances, sweep_detuning,
                    sweep_drive)

__all__ = [
    "ModelParams", "NonlinearSign", "ScaledParams", "resolve_sign_convention", "scale",
    "PhotonDistribution", "ScalarObservables", "ValidityWarning", "linear_limit", "log_cmm",
    "observables", "photon_distribution",
    "DensityMatrix", "FidelityPair", "FockConfig", "InstabilityError", "NoConvergenceError",
    "SingularSystemError", "SolverError", "build_hamiltonian", "build_liouvillian", "evolve",
    "observables_full", "steady_state",
    "Engine", "Grid", "InsufficientPeaksError", "PeakEstimate", "SweepResult", "detect_peaks",
    "estimate_alpha", "predict_resonances", "sweep_detuning", "sweep_drive",
]
