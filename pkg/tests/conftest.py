import numpy as np
import pytest

from psad.adcore import ExtendedFunction
from psad.sparsity import SymmetricPattern


def brute_force_jtj(rows, n):
    """Dense boolean J^T J from row lists."""
    J = np.zeros((len(rows), n), dtype=bool)
    for i, r in enumerate(rows):
        J[i, r] = True
    return (J.T.astype(int) @ J.astype(int)) > 0


def random_graph(rng, n, density):
    mask = np.triu(rng.random((n, n)) < density, 1)
    return SymmetricPattern.from_dense(mask | mask.T | np.eye(n, dtype=bool))


def band_pattern(n, half):
    i, j = np.nonzero(np.abs(np.subtract.outer(np.arange(n), np.arange(n))) <= half)
    return SymmetricPattern.from_pairs(n, i, j)


def arrowhead_pattern(n):
    k = np.arange(n)
    return SymmetricPattern.from_pairs(n, np.concatenate([k, k]),
                                       np.concatenate([k, np.zeros(n, dtype=int)]))


def pattern_families(rng, n):
    """The four structure families used for recovery round trips."""
    return {
        "diagonal": band_pattern(n, 0),
        "tridiagonal": band_pattern(n, 1),
        "arrowhead": arrowhead_pattern(n),
        "random": random_graph(rng, n, 0.2),
    }


def random_symmetric(rng, H):
    A = np.zeros((H.n, H.n))
    vals = rng.uniform(-1.0, 1.0, H.nnz_lower)
    A[H.rows, H.cols] = vals
    A[H.cols, H.rows] = vals
    return A


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def half_square():
    """f = 1/2 ||x||^2 with one component per variable."""
    return ExtendedFunction(5, lambda x: 0.5 * x * x, name="half-square")


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES = []


def record_criterion(number, title, ok, detail=""):
    line = f"criterion {number} {title}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
