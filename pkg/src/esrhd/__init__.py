"""Entropy conservative / entropy stable finite difference solvers for special RHD."""

__version__ = "0.1.0"

from .eigen import DissipationKind
from .scheme import FluxMode, Grid, SchemeConfig
from .state import ConsState, EosParams, NonPhysicalState, PrimState
from .timeint import TimeControls

__all__ = [
    "ConsState",
    "DissipationKind",
    "EosParams",
    "FluxMode",
    "Grid",
    "NonPhysicalState",
    "PrimState",
    "SchemeConfig",
    "TimeControls",
    "__version__",
]
