"""One-stop construction of the H^1_dR module for a given m, with caching."""

from __future__ import annotations

from . import store
from .cohomology import DeRhamSpace, frobenius_matrix, tau_matrix, verschiebung_matrix
from .dieudonne import EModule
from .suzuki_ff import CurveParams


def build_operators(params, cache_dir=None):
    """(space, {"F","V","tau"}) with optional disk cache."""
    space = DeRhamSpace(params)
    ops = {}
    builders = {
        "F": frobenius_matrix,
        "V": verschiebung_matrix,
        "tau": tau_matrix,
    }
    for name, builder in builders.items():
        op = None
        if cache_dir:
            op = store.load_cached_operator(cache_dir, params, name, space.tuples)
        if op is None:
            op = builder(params, space)
            if cache_dir:
                store.store_operator(cache_dir, params, name, space.tuples, op)
        ops[name] = op
    return space, ops


def build_module(params, cache_dir=None):
    """The H^1_dR E-module with its torus action and grading."""
    space, ops = build_operators(params, cache_dir)
    module = EModule(
        params.field, ops["F"], ops["V"], tau=ops["tau"], weights=space.weights()
    )
    return space, module


def curve_module(m, cache_dir=None):
    params = CurveParams(m)
    space, module = build_module(params, cache_dir)
    return params, space, module
