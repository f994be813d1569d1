"""Composite optimization with lp sparsity terms: Python surface over the C++ core.

The heavy lifting lives in the compiled ``_core`` module; this package adds a
dict-based convenience wrapper around the JSON solve entry point.
"""

import json as _json

from ._core import (
    enlargement_gap,
    prox_lp_box,
    prox_lp_scalar,
    solve_control,
    solve_instance_json,
    version,
)

__version__ = version()


def solve_instance(document):
    """Solve an instance document (dict or JSON text) and return the run report as a dict.

    The document uses the same schema as the ``nonlip solve`` command:
    ``{"schema_version": 1, "family": ..., "seed": ..., "parameters": {...},
    "config": {...}}``.
    """
    text = document if isinstance(document, str) else _json.dumps(document)
    return _json.loads(solve_instance_json(text))


__all__ = [
    "enlargement_gap",
    "prox_lp_box",
    "prox_lp_scalar",
    "solve_control",
    "solve_instance",
    "solve_instance_json",
    "version",
]
