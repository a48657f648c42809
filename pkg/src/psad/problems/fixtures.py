"""Frozen small instances of every catalog problem.

Each fixture stores the reference pattern, the declared row bound and the
standard starting point at a small size, so later changes to a problem
definition show up as a fixture mismatch.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .catalog import catalog, get_problem

FIXTURE_DIR = Path(__file__).with_name("fixtures")
FIXTURE_SIZE = 36


def fixture_path(name, directory=None):
    return Path(directory or FIXTURE_DIR) / f"{name}.json"


def fixture_document(name, n=FIXTURE_SIZE):
    problem = get_problem(name)
    n = problem.size(n)
    x0, lower, upper = problem.standard_start(n)
    return {
        "name": name,
        "n": n,
        "rho_max": problem.declared_rho_max,
        "pattern": problem.reference_pattern(n).to_dict(),
        "x0": np.asarray(x0).tolist(),
        "lower": [None if np.isinf(v) else float(v) for v in lower],
    }


def write_fixtures(directory=None):
    directory = Path(directory or FIXTURE_DIR)
    directory.mkdir(parents=True, exist_ok=True)
    for problem in catalog():
        path = fixture_path(problem.name, directory)
        path.write_text(json.dumps(fixture_document(problem.name)) + "\n")


def load_fixture(name, directory=None):
    return json.loads(fixture_path(name, directory).read_text())
