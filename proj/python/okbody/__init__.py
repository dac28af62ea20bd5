"""Exact Okounkov bodies of projectivized rank-two toric vector bundles."""

import json

from ._okb import (
    CapExceeded,
    IncompatibleData,
    InvalidInput,
    MalformedInput,
    Problem,
    UnknownExample,
    example_names,
    run_cli,
)

__all__ = [
    "CapExceeded",
    "IncompatibleData",
    "InvalidInput",
    "MalformedInput",
    "Problem",
    "UnknownExample",
    "example",
    "example_names",
    "load",
    "run",
    "run_cli",
]


def load(path):
    """Read a problem file from disk."""
    with open(path, encoding="utf-8") as f:
        return Problem.from_json(f.read())


def example(name, *args):
    """A builtin example, e.g. example("split-p1", 1, -1)."""
    return Problem.example(name, [str(a) for a in args])


def run(*args):
    """Run an okb subcommand and return its parsed JSON output.

    Raises RuntimeError carrying the exit code and stderr when the command fails.
    """
    code, out, err = run_cli([str(a) for a in args])
    if code != 0:
        error = RuntimeError(f"okb exited with {code}: {err.strip()}")
        error.exit_code = code
        raise error
    return json.loads(out) if out else None
