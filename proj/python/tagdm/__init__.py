"""Mining groups of tagging actions with similar or diverse behavior."""

import json

from ._tagdm import (
    BudgetExceededError,
    Error,
    InvalidSignatureError,
    NoDataError,
    TupleStore,
    angular_distance,
    cosine_similarity,
    enumerate_groups,
    preset_json,
    presets,
    run_json,
)

__all__ = [
    "BudgetExceededError",
    "Error",
    "InvalidSignatureError",
    "NoDataError",
    "TupleStore",
    "angular_distance",
    "cosine_similarity",
    "enumerate_groups",
    "preset",
    "presets",
    "run",
]


def preset(name):
    """Returns a preset problem as a dict."""
    return json.loads(preset_json(name))


def run(store, problem, solver, **kwargs):
    """Runs one query and returns the report as a dict.

    `problem` is a preset name, a JSON string or a dict.
    """
    if isinstance(problem, dict):
        problem = json.dumps(problem)
    return json.loads(run_json(store, problem, solver, **kwargs))
