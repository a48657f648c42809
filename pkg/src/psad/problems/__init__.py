"""Catalog of partially separable test problems and dense oracles."""
from .catalog import ProblemSpec, catalog, get_problem, problem_names
from .fixtures import fixture_path, load_fixture, write_fixtures
from .oracles import dense_gradient, dense_hessian, dense_jacobian

__all__ = [
    "ProblemSpec", "catalog", "dense_gradient", "dense_hessian",
    "dense_jacobian", "fixture_path", "get_problem", "load_fixture",
    "problem_names", "write_fixtures",
]
