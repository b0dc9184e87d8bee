"""mirrorlab: simulation and verification laboratory for the Lorentz mirror walk."""

__version__ = "0.1.0"

from .errors import (
    ConfigurationError,
    CouplingInvariantError,
    InternalInvariantError,
    MirrorLabError,
    UsageError,
)
from .lattice import MirrorFamily, enumerate_matchings, rule4_transform, validate_matching
from .rng import Stream, derive_trial_seed

__all__ = [
    "ConfigurationError",
    "CouplingInvariantError",
    "InternalInvariantError",
    "MirrorLabError",
    "UsageError",
    "MirrorFamily",
    "enumerate_matchings",
    "rule4_transform",
    "validate_matching",
    "Stream",
    "derive_trial_seed",
    "__version__",
]
