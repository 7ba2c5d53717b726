"""Exact invariants and transformations of 4-dimensional graph-manifolds.

Manifolds are passed as gm/1 JSON text or as the equivalent dict; results
are returned as dicts.
"""

import json as _json

from . import _core
from ._core import (
    BudgetExceeded,
    GraphManifoldError,
    InvalidManifold,
    ParseError,
    PreconditionFailed,
    SearchBudgetExceeded,
    SecondaryIndexObstruction,
    TypeObstruction,
)

__all__ = [
    "BudgetExceeded",
    "GraphManifoldError",
    "InvalidManifold",
    "ParseError",
    "PreconditionFailed",
    "SearchBudgetExceeded",
    "SecondaryIndexObstruction",
    "TypeObstruction",
    "charge",
    "check_orthogonal",
    "generate_alternating",
    "generate_cycle",
    "generate_random",
    "invariants",
    "orthogonalize",
    "reglue",
    "run_cli",
    "unwind",
    "validate",
    "witness",
]


def _text(manifold):
    return manifold if isinstance(manifold, str) else _json.dumps(manifold)


def validate(manifold):
    return _json.loads(_core.validate(_text(manifold)))


def invariants(manifold, transpose_gluing=False):
    return _json.loads(_core.invariants(_text(manifold), transpose_gluing))


def charge(manifold):
    return _json.loads(_core.charge(_text(manifold)))


def check_orthogonal(manifold):
    return _json.loads(_core.check_orthogonal(_text(manifold)))


def witness(manifold, max_blocks=24):
    return _json.loads(_core.witness(_text(manifold), max_blocks))


def reglue(manifold):
    return _json.loads(_core.reglue(_text(manifold)))


def unwind(manifold):
    return _json.loads(_core.unwind(_text(manifold)))


def orthogonalize(manifold):
    return _json.loads(_core.orthogonalize(_text(manifold)))


def generate_cycle(k=3, perturbed=False):
    return _json.loads(_core.generate_cycle(k, perturbed))


def generate_alternating(k=4):
    return _json.loads(_core.generate_alternating(k))


def generate_random(seed, target="i1j1type2", min_vertices=2, max_vertices=8):
    return _json.loads(_core.generate_random(seed, target, min_vertices, max_vertices))


def run_cli(args, stdin=""):
    """Runs gmtool in-process; returns (exit code, stdout, stderr)."""
    return _core.run_cli(list(args), stdin)
