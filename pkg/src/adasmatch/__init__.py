"""Solver and simulator for a matching-based AD-AS business-cycle model."""

from .curves import EndowmentParams, PolicyParams, PreferenceParams
from .efficiency import EfficiencyReport, efficiency_report, efficient_tightness
from .equilibrium import Equilibrium, ModelParams, calibrate_demand, default_params, solve
from .errors import ConfigurationError, DomainError, ModelError, NumericalError, StepSizeError
from .matching import MatchingParams

__all__ = [
    "ConfigurationError",
    "DomainError",
    "EfficiencyReport",
    "EndowmentParams",
    "Equilibrium",
    "MatchingParams",
    "ModelError",
    "ModelParams",
    "NumericalError",
    "PolicyParams",
    "PreferenceParams",
    "StepSizeError",
    "calibrate_demand",
    "default_params",
    "efficiency_report",
    "efficient_tightness",
    "solve",
]
