"""Mirror models of type A flag varieties."""

import json

from ._core import (
    ConfigError,
    InvariantViolation,
    cell_count,
    expected_count,
    longest_word,
    reduced_words,
    solve,
    stratum_count,
)
from ._core import run_suite as _run_suite

__all__ = [
    "ConfigError",
    "InvariantViolation",
    "cell_count",
    "expected_count",
    "longest_word",
    "reduced_words",
    "run",
    "solve",
    "stratum_count",
]


def run(suite, **options):
    """Run a suite and return (report dict, exit code).

    Options mirror the CLI flags with underscores, e.g. rank=2, q=["1", "2+i"].
    """
    text, code = _run_suite(suite, **options)
    return json.loads(text), code
