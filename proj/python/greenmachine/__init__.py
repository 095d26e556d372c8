"""Time-bin Green Machine compiler and simulator."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import GmError, run_experiment as _run_experiment

__all__ = [name for name in dir() if not name.startswith("_")]


def run_experiment(experiment, parameters=None, seed=0, output_path=".", format="csv", threads=1):
    """Run a CLI experiment in-process and return the written data files."""
    return _run_experiment(experiment, _json.dumps(parameters or {}), seed, str(output_path), format, threads)
