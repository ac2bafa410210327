"""Numerical checks for cone geometry, matrix square roots, polar
factorizations, Siegel-domain group actions, covering spaces and integer
normal forms."""

import json as _json

from . import _core
from ._core import *  # noqa: F401,F403

__all__ = [name for name in dir(_core) if not name.startswith("_")]


def run_suite(suite="all", **kwargs):
    """Run a verification suite and return the report as a dict.

    Accepts group, n, deltas, trials, seed, tol, radius and out; see the
    holoverify CLI for their meaning.
    """
    return _json.loads(_core.run_suite(suite=suite, **kwargs))


def find_counterexample(claim, deltas=(0.02, 0.05, 0.1, 0.3), budget=100000,
                        seed=7):
    """Search for a counterexample witness; returns the report as a dict."""
    return _json.loads(_core.find_counterexample(claim, list(deltas), budget,
                                                 seed))
