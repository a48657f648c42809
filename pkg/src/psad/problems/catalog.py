"""Partially separable test problems.

Representative analogues of the MINPACK-2 variational problems and
nonlinear equation systems, plus three structural cases. Every problem is
written once against the abstract scalar interface; boundary data enters as
constants so that boundary rows carry fewer variables.

Each problem also has a *reference pattern* built by explicit loops over its
stencil, independent of the evaluation code.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..adcore import ExtendedFunction, concat, exp, log, sin, sqrt
from ..pattern import SparsityPattern

__all__ = ["ProblemSpec", "catalog", "get_problem", "problem_names"]


@dataclass(frozen=True)
class ProblemSpec:
    """A catalog entry.

    ``size(n)`` maps a requested variable count to the nearest size the
    problem supports; ``build``, ``reference_pattern`` and ``standard_start``
    all take such a size.
    """

    name: str
    family: str
    declared_rho_max: int
    size: Callable[[int], int]
    build: Callable[[int], ExtendedFunction]
    reference_pattern: Callable[[int], SparsityPattern]
    standard_start: Callable[[int], tuple]
    description: str = ""

    def instance(self, n):
        """``(F, x0)`` at the supported size nearest ``n``."""
        n = self.size(n)
        F = self.build(n)
        x0, lower, upper = self.standard_start(n)
        F.lower, F.upper = lower, upper
        return F, x0


def _free(n):
    return np.full(n, -np.inf), np.full(n, np.inf)


# --- two-dimensional grids ----------------------------------------------------

class _Grid:
    """Interior ``q x q`` unknowns padded by ``pad`` layers of boundary data."""

    def __init__(self, q, pad, boundary):
        self.q, self.pad = q, pad
        self.h = 1.0 / (q + 1)
        w = q + 2 * pad
        self.w = w
        ii, jj = np.meshgrid(np.arange(w) - pad, np.arange(w) - pad, indexing="ij")
        inside = (ii >= 0) & (ii < q) & (jj >= 0) & (jj < q)
        # padded position -> index into concat([x, boundary values])
        self.perm = np.empty(w * w, dtype=np.int64)
        self.perm[inside.ravel()] = (ii * q + jj)[inside]
        outside = ~inside.ravel()
        self.perm[outside] = q * q + np.arange(outside.sum())
        s, t = (ii.ravel() + 1) * self.h, (jj.ravel() + 1) * self.h
        self.boundary = boundary(s[outside], t[outside]).astype(float)

    def lift(self, x):
        return concat([x, self.boundary])[self.perm]

    def at(self, i, j):
        """Padded positions of interior-coordinate nodes ``(i, j)``."""
        return (np.asarray(i) + self.pad) * self.w + (np.asarray(j) + self.pad)

    def nodes(self):
        i, j = np.meshgrid(np.arange(self.q), np.arange(self.q), indexing="ij")
        return i.ravel(), j.ravel()

    def cells(self):
        i, j = np.meshgrid(np.arange(-1, self.q), np.arange(-1, self.q), indexing="ij")
        return i.ravel(), j.ravel()

    def coords(self, i, j):
        return (np.asarray(i) + 1) * self.h, (np.asarray(j) + 1) * self.h


def _grid_side(n, minimum):
    return max(minimum, int(round(np.sqrt(n))))


def _grid_size(minimum):
    return lambda n: _grid_side(n, minimum) ** 2


def _grid_pattern(q, offsets, anchors):
    """Rows listing the interior nodes of ``anchor + offset`` per element."""
    rows = []
    for i, j in anchors:
        row = []
        for di, dj in offsets:
            a, b = i + di, j + dj
            if 0 <= a < q and 0 <= b < q:
                row.append(a * q + b)
        rows.append(row)
    return SparsityPattern.from_rows(rows, q * q)


_CELL = [(0, 0), (1, 0), (0, 1), (1, 1)]
_STAR5 = [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)]
_STAR13 = _STAR5 + [(2, 0), (-2, 0), (0, 2), (0, -2), (1, 1), (1, -1), (-1, 1), (-1, -1)]


def _cell_reference(n):
    q = int(round(np.sqrt(n)))
    return _grid_pattern(q, _CELL, [(i, j) for i in range(-1, q) for j in range(-1, q)])


def _node_reference(offsets):
    def reference(n):
        q = int(round(np.sqrt(n)))
        return _grid_pattern(q, offsets, [(i, j) for i in range(q) for j in range(q)])
    return reference


def _cell_corners(grid, v):
    i, j = grid.cells()
    return (v[grid.at(i, j)], v[grid.at(i + 1, j)],
            v[grid.at(i, j + 1)], v[grid.at(i + 1, j + 1)])


def _cell_gradient_sq(a, b, c, d, h):
    gx = ((b - a) + (d - c)) / (2.0 * h)
    gy = ((c - a) + (d - b)) / (2.0 * h)
    return gx * gx + gy * gy


def _surface_boundary(s, t):
    return (s - 0.5) ** 2 - (t - 0.5) ** 2 + 1.0


def _minimal_surface(n):
    q = _grid_side(n, 2)
    grid = _Grid(q, 1, _surface_boundary)
    h = grid.h

    def evaluate(x):
        a, b, c, d = _cell_corners(grid, grid.lift(x))
        spread = ((b - a) ** 2 + (d - c) ** 2 + (c - a) ** 2 + (d - b) ** 2) / (2.0 * h * h)
        return h * h * sqrt(1.0 + spread)

    return ExtendedFunction(q * q, evaluate, (q + 1) ** 2, name="minimal-surface-like")


def _minimal_surface_start(n):
    q = _grid_side(n, 2)
    s, t = _Grid(q, 1, _surface_boundary).coords(*_Grid(q, 1, _surface_boundary).nodes())
    return (_surface_boundary(s, t), *_free(q * q))


def _zero_boundary(s, t):
    return np.zeros_like(s)


def _optimal_design(n):
    q = _grid_side(n, 2)
    grid = _Grid(q, 1, _zero_boundary)
    h, lam = grid.h, 0.8

    def evaluate(x):
        a, b, c, d = _cell_corners(grid, grid.lift(x))
        t = _cell_gradient_sq(a, b, c, d, h)
        return h * h * (0.5 * t + 0.5 * log(1.0 + t) - lam * (a + b + c + d) / 4.0)

    return ExtendedFunction(q * q, evaluate, (q + 1) ** 2, name="optimal-design-like")


def _bump_start(n):
    q = _grid_side(n, 2)
    grid = _Grid(q, 1, _zero_boundary)
    s, t = grid.coords(*grid.nodes())
    return (4.0 * s * (1 - s) * t * (1 - t), *_free(q * q))


def _combustion(n):
    q = _grid_side(n, 2)
    grid = _Grid(q, 1, _zero_boundary)
    h, lam = grid.h, 5.0

    def evaluate(x):
        a, b, c, d = _cell_corners(grid, grid.lift(x))
        t = _cell_gradient_sq(a, b, c, d, h)
        return h * h * (0.5 * t - lam * exp((a + b + c + d) / 4.0))

    return ExtendedFunction(q * q, evaluate, (q + 1) ** 2, name="combustion-like")


def _zero_start(minimum):
    def start(n):
        q = _grid_side(n, minimum)
        return (np.zeros(q * q), *_free(q * q))
    return start


def _star5(grid, v):
    i, j = grid.nodes()
    return (v[grid.at(i, j)], v[grid.at(i + 1, j)], v[grid.at(i - 1, j)],
            v[grid.at(i, j + 1)], v[grid.at(i, j - 1)])


def _journal_bearing(n):
    q = _grid_side(n, 3)
    grid = _Grid(q, 1, _zero_boundary)
    h, ecc = grid.h, 0.1
    s, _ = grid.coords(*grid.nodes())
    wq = (1.0 + ecc * np.cos(2 * np.pi * s)) ** 3
    wl = ecc * np.sin(2 * np.pi * s) + 0.05

    def evaluate(x):
        vc, ve, vw, vn, vs = _star5(grid, grid.lift(x))
        grad = ((ve - vc) ** 2 + (vw - vc) ** 2 + (vn - vc) ** 2 + (vs - vc) ** 2) * 0.5
        return 0.5 * wq * grad - h * h * wl * vc

    return ExtendedFunction(q * q, evaluate, q * q, name="journal-bearing-like")


def _journal_bearing_start(n):
    q = _grid_side(n, 3)
    grid = _Grid(q, 1, _zero_boundary)
    s, t = grid.coords(*grid.nodes())
    x0 = np.maximum(np.sin(2 * np.pi * s), 0.0) * t * (1 - t)
    return x0, np.zeros(q * q), np.full(q * q, np.inf)


def _landau_boundary(s, t):
    return np.cos(np.pi * s) * np.cos(np.pi * t)


def _ginzburg_landau(n):
    q = _grid_side(n, 3)
    grid = _Grid(q, 1, _landau_boundary)
    h, kappa = grid.h, 10.0

    def evaluate(x):
        vc, ve, vw, vn, vs = _star5(grid, grid.lift(x))
        grad = 0.25 * ((ve - vc) ** 2 + (vw - vc) ** 2 + (vn - vc) ** 2 + (vs - vc) ** 2)
        return grad + 0.25 * kappa * h * h * (vc * vc - 1.0) ** 2

    return ExtendedFunction(q * q, evaluate, q * q, name="ginzburg-landau-like")


def _landau_start(n):
    q = _grid_side(n, 3)
    grid = _Grid(q, 1, _landau_boundary)
    s, t = grid.coords(*grid.nodes())
    return (0.5 * _landau_boundary(s, t), *_free(q * q))


def _solid_fuel(n):
    q = _grid_side(n, 3)
    grid = _Grid(q, 1, _zero_boundary)
    lam = 5.0 * grid.h * grid.h

    def evaluate(x):
        vc, ve, vw, vn, vs = _star5(grid, grid.lift(x))
        r = 4.0 * vc - ve - vw - vn - vs - lam * exp(vc)
        return 0.5 * r * r

    return ExtendedFunction(q * q, evaluate, q * q, name="solid-fuel-like")


def _cavity_boundary(s, t):
    # moving lid along the top padding layers
    return np.where(t > 1.0, (t - 1.0) * (1.0 - (2 * s - 1) ** 2), 0.0)


def _cavity_flow(n):
    q = _grid_side(n, 5)
    grid = _Grid(q, 2, _cavity_boundary)
    reynolds = 0.5
    i, j = grid.nodes()

    def evaluate(x):
        v = grid.lift(x)

        def at(di, dj):
            return v[grid.at(i + di, j + dj)]

        def lap(di, dj):
            return (at(di + 1, dj) + at(di - 1, dj) + at(di, dj + 1)
                    + at(di, dj - 1) - 4.0 * at(di, dj))

        le, lw, ln, ls = lap(1, 0), lap(-1, 0), lap(0, 1), lap(0, -1)
        bih = le + lw + ln + ls - 4.0 * lap(0, 0)
        vx = (at(1, 0) - at(-1, 0)) * 0.5
        vy = (at(0, 1) - at(0, -1)) * 0.5
        r = bih - reynolds * (vy * (le - lw) * 0.5 - vx * (ln - ls) * 0.5)
        return 0.5 * r * r

    return ExtendedFunction(q * q, evaluate, q * q, name="cavity-flow-like")


# --- one-dimensional systems ------------------------------------------------

_D2_9 = np.array([-1 / 560, 8 / 315, -1 / 5, 8 / 5, -205 / 72, 8 / 5, -1 / 5, 8 / 315, -1 / 560])
_D2_7 = np.array([1 / 90, -3 / 20, 3 / 2, -49 / 18, 3 / 2, -3 / 20, 1 / 90])
_D1_7 = np.array([-1 / 60, 3 / 20, -3 / 4, 0.0, 3 / 4, -3 / 20, 1 / 60])


def _band_pattern(nodes, half, stride=1, fields=1):
    rows = []
    for i in range(nodes):
        cols = [stride * k + f for k in range(i - half, i + half + 1) if 0 <= k < nodes
                for f in range(fields)]
        rows.extend([cols] * fields)
    return SparsityPattern.from_rows(rows, nodes * fields)


def _padded(x, left, right):
    return concat([np.asarray(left, dtype=float), x, np.asarray(right, dtype=float)])


def _window(v, nodes, offset, pad):
    return v[np.arange(nodes) + pad + offset]


def _channel_flow(n):
    nodes = max(9, n)
    h = 1.0 / (nodes + 1)
    reynolds, force = 0.5, 1.0

    def evaluate(x):
        v = _padded(x, np.zeros(4), np.ones(4))
        r = force * h * h * -1.0
        for k, c in enumerate(_D2_9):
            r = r + c * _window(v, nodes, k - 4, 4)
        r = r + reynolds * _window(v, nodes, 0, 4) * (
            _window(v, nodes, 1, 4) - _window(v, nodes, -1, 4))
        return 0.5 * r * r

    return ExtendedFunction(nodes, evaluate, nodes, name="channel-flow-like")


def _ramp_start(n):
    nodes = max(9, n)
    return (np.arange(1, nodes + 1) / (nodes + 1), *_free(nodes))


def _swirling_flow(n):
    nodes = max(7, n // 2)
    reynolds = 0.3

    def evaluate(x):
        f = _padded(x[np.arange(0, 2 * nodes, 2)], np.zeros(3), np.ones(3))
        g = _padded(x[np.arange(1, 2 * nodes, 2)], np.ones(3), -np.ones(3))
        F = G = D = E = 0.0
        for k in range(7):
            fk, gk = _window(f, nodes, k - 3, 3), _window(g, nodes, k - 3, 3)
            F = F + _D2_7[k] * fk
            G = G + _D2_7[k] * gk
            if _D1_7[k]:
                D = D + _D1_7[k] * fk
                E = E + _D1_7[k] * gk
        fc, gc = _window(f, nodes, 0, 3), _window(g, nodes, 0, 3)
        r1 = F + reynolds * (fc * E - gc * D)
        r2 = G + reynolds * (gc * D - fc * E)
        # rows interleaved like the unknowns
        order = np.arange(2 * nodes).reshape(2, nodes).T.ravel()
        r = concat([r1, r2])[order]
        return 0.5 * r * r

    return ExtendedFunction(2 * nodes, evaluate, 2 * nodes, name="swirling-flow-like")


def _swirling_start(n):
    nodes = max(7, n // 2)
    s = np.arange(1, nodes + 1) / (nodes + 1)
    x0 = np.empty(2 * nodes)
    x0[0::2] = s
    x0[1::2] = 1.0 - 2.0 * s
    return (x0, *_free(2 * nodes))


_ROD_WEIGHTS = 1.0 / (1.0 + np.arange(-8, 9) ** 2)


def _elastic_rod(n):
    nodes = max(17, n)

    def evaluate(x):
        v = _padded(x, np.zeros(8), np.zeros(8))
        acc = 0.0
        for k, w in enumerate(_ROD_WEIGHTS):
            acc = acc + w * sin(_window(v, nodes, k - 8, 8))
        r = x - 0.1 * acc - 0.5
        return 0.5 * r * r

    return ExtendedFunction(nodes, evaluate, nodes, name="elastic-rod-like")


def _zero_start_1d(minimum, factor=1):
    def start(n):
        size = max(minimum, n // factor) * factor
        return (np.zeros(size), *_free(size))
    return start


# --- structural cases ---------------------------------------------------------

def _arrowhead(n):
    n = max(2, n)

    def evaluate(x):
        hub, rest = x[0], x[1:]
        return concat([0.5 * hub * hub, 0.5 * (hub * rest) ** 2, 0.5 * rest * rest])

    return ExtendedFunction(n, evaluate, 2 * n - 1, name="arrowhead")


def _arrowhead_reference(n):
    n = max(2, n)
    rows = [[0]] + [[0, k] for k in range(1, n)] + [[k] for k in range(1, n)]
    return SparsityPattern.from_rows(rows, n)


def _quartic_chain(n):
    n = max(2, n)

    def evaluate(x):
        pair = x[:-1] + x[1:] - 1.0
        single = x - 0.5
        return concat([0.25 * pair ** 4, 0.5 * single * single])

    return ExtendedFunction(n, evaluate, 2 * n - 1, name="quartic-chain")


def _quartic_reference(n):
    n = max(2, n)
    rows = [[k, k + 1] for k in range(n - 1)] + [[k] for k in range(n)]
    return SparsityPattern.from_rows(rows, n)


def _diag(n):
    n = max(1, n)
    return ExtendedFunction(n, lambda x: 0.5 * x * x, n, name="diag")


def _ones_start(minimum):
    def start(n):
        size = max(minimum, n)
        return (np.ones(size), *_free(size))
    return start


def _diag_start(n):
    n = max(1, n)
    return (np.linspace(-1.0, 1.0, n), *_free(n))


_CATALOG = (
    ProblemSpec("journal-bearing-like", "variational", 5, _grid_size(3),
                _journal_bearing, _node_reference(_STAR5), _journal_bearing_start,
                "lubrication quadratic with variable coefficients and v >= 0"),
    ProblemSpec("minimal-surface-like", "variational", 4, _grid_size(2),
                _minimal_surface, _cell_reference, _minimal_surface_start,
                "surface area over square elements"),
    ProblemSpec("optimal-design-like", "variational", 4, _grid_size(2),
                _optimal_design, _cell_reference, _bump_start,
                "convex energy of a two-material design on square elements"),
    ProblemSpec("combustion-like", "variational", 4, _grid_size(2),
                _combustion, _cell_reference, _zero_start(2),
                "Dirichlet energy minus an exponential source"),
    ProblemSpec("ginzburg-landau-like", "variational", 5, _grid_size(3),
                _ginzburg_landau, _node_reference(_STAR5), _landau_start,
                "gradient energy plus a double-well potential"),
    ProblemSpec("channel-flow-like", "nonlinear-equations", 9, lambda n: max(9, n),
                _channel_flow, lambda n: _band_pattern(max(9, n), 4), _ramp_start,
                "9-point collocation residuals with a convective term"),
    ProblemSpec("swirling-flow-like", "nonlinear-equations", 14,
                lambda n: 2 * max(7, n // 2), _swirling_flow,
                lambda n: _band_pattern(max(7, n // 2), 3, stride=2, fields=2),
                _swirling_start, "two coupled fields on a 7-point stencil"),
    ProblemSpec("elastic-rod-like", "nonlinear-equations", 17, lambda n: max(17, n),
                _elastic_rod, lambda n: _band_pattern(max(17, n), 8),
                _zero_start_1d(17), "nonlocal 17-point integral equation"),
    ProblemSpec("solid-fuel-like", "nonlinear-equations", 5, _grid_size(3),
                _solid_fuel, _node_reference(_STAR5), _zero_start(3),
                "Bratu residuals on a 5-point stencil"),
    ProblemSpec("cavity-flow-like", "nonlinear-equations", 13, _grid_size(5),
                _cavity_flow, _node_reference(_STAR13), _zero_start(5),
                "13-point biharmonic residuals with a convective term"),
    ProblemSpec("arrowhead", "structural", 2, lambda n: max(2, n),
                _arrowhead, _arrowhead_reference, _ones_start(2),
                "hub variable coupled to every other variable"),
    ProblemSpec("quartic-chain", "structural", 2, lambda n: max(2, n),
                _quartic_chain, _quartic_reference, _ones_start(2),
                "quartic couplings of neighbors; tridiagonal Hessian"),
    ProblemSpec("diag", "structural", 1, lambda n: max(1, n),
                _diag, lambda n: SparsityPattern.from_rows([[k] for k in range(max(1, n))],
                                                           max(1, n)),
                _diag_start, "separable quadratic"),
)

_BY_NAME = {p.name: p for p in _CATALOG}


def catalog():
    """All problems, in a fixed order."""
    return list(_CATALOG)


def problem_names():
    return [p.name for p in _CATALOG]


def get_problem(name):
    try:
        return _BY_NAME[name]
    except KeyError:
        raise KeyError(f"unknown problem {name!r}; "
                       f"available: {', '.join(problem_names())}") from None
