"""Python bindings for the conelab C++ core."""

import json

from ._conelab import (
    Error,
    JordanAlgebra,
    NumericalError,
    ParseError,
    PreconditionViolation,
    Unsupported,
    __version__,
    canonical_state,
)
from . import _conelab

__all__ = [
    "Error",
    "JordanAlgebra",
    "NumericalError",
    "ParseError",
    "PreconditionViolation",
    "Unsupported",
    "__version__",
    "builtin_registry",
    "canonical_state",
    "classify",
    "run_checks",
    "steer",
]


def builtin_registry():
    """The builtin fixture registry as a dict in the registry file format."""
    return json.loads(_conelab.builtin_registry_json())


def run_checks(registry=None, checks="all", seed=0, tol=1e-9, jobs=1):
    """Run checks on a registry (dict, JSON text, or None for the builtin one) and return the report dict."""
    if isinstance(registry, dict):
        registry = json.dumps(registry)
    if not isinstance(checks, str):
        checks = ",".join(checks)
    return json.loads(_conelab.run_checks_json(registry, checks, seed, tol, jobs))


def classify(procedure, max_rank=8, summands=1):
    """Counting derivation for 'local-tomography', 'injective-composite' or 'classicality'."""
    return json.loads(_conelab.classify_json(procedure, max_rank, summands))


def steer(fixture, ensemble, state=None):
    """Steer an ensemble on B through a builtin composite fixture; returns the result dict."""
    return json.loads(_conelab.steer_json(fixture, list(ensemble), state))
