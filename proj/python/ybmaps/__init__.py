"""Parametric Yang-Baxter maps from binomial Lax matrices."""

import json

from ._ybmaps import (
    YBError,
    apply,
    char_poly_coeffs,
    discriminant_surface,
    gv_transform,
    integrals_ay,
    lax,
    leaf_casimirs,
    map_ids,
    refactor_2x2,
    refactor_nxn,
)
from . import _ybmaps


def verify(map_id, seed=42, samples=1000, poisson_samples=100):
    """Run the randomized property suite for one map and return the report as a dict."""
    return json.loads(_ybmaps.verify_json(map_id, seed, samples, poisson_samples))


def lattice(map_id, seed=42, steps=100):
    """Evolve a random 1-periodic staircase and return the drift report as a dict."""
    return json.loads(_ybmaps.lattice_json(map_id, seed, steps))


__all__ = [
    "YBError",
    "apply",
    "char_poly_coeffs",
    "discriminant_surface",
    "gv_transform",
    "integrals_ay",
    "lattice",
    "lax",
    "leaf_casimirs",
    "map_ids",
    "refactor_2x2",
    "refactor_nxn",
    "verify",
]
