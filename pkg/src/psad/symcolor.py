"""Symmetric colorings of a Hessian pattern and recovery from ``H V``.

The direct method reads every unknown from one cell of the compressed
matrix; it is realized by star colorings. The substitution method resolves
unknowns in order, subtracting entries that are already known; it is
realized by acyclic colorings, whose two-colored subgraphs are forests that
can be eliminated leaf by leaf.
"""
from __future__ import annotations

import json
from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import spsolve_triangular

from .coloring import _smallest_last
from .errors import PlanInfeasibleError
from .sparsity import SymmetricPattern

__all__ = [
    "HessianRecoveryPlan", "SymmetricColoring", "SymmetricMatrix",
    "acyclic_coloring", "color_seed", "is_acyclic_coloring", "is_star_coloring",
    "plan_recovery", "recover_hessian", "smallest_last_vertices",
    "star_coloring", "two_colored_forests",
]


@dataclass(frozen=True, eq=False)
class SymmetricColoring:
    """Vertex colors (1-based) for the direct or substitution method.

    ``forest`` maps each color pair ``(a, b)``, ``a < b``, to the parent
    links ``{child: parent}`` of its two-colored forest (roots omitted); it
    is filled for substitution colorings only.
    """

    kind: str
    color: np.ndarray
    p: int
    forest: dict = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind not in ("direct", "substitution"):
            raise ValueError(f"unknown coloring kind {self.kind!r}")
        object.__setattr__(self, "color", np.asarray(self.color, dtype=np.int64))

    @property
    def n(self):
        return self.color.size

    def to_dict(self):
        return {"kind": self.kind, "p": self.p, "color": self.color.tolist()}

    @classmethod
    def from_dict(cls, doc):
        return cls(doc["kind"], np.asarray(doc["color"]), int(doc["p"]))

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def color_seed(coloring):
    """Indicator seed with one column per color."""
    V = np.zeros((coloring.n, coloring.p))
    V[np.arange(coloring.n), coloring.color - 1] = 1.0
    return V


def _neighbor_lists(H):
    ptr, adj = H.adjacency()
    ptr, adj = ptr.tolist(), adj.tolist()
    return [adj[ptr[v]:ptr[v + 1]] for v in range(H.n)]


def smallest_last_vertices(H):
    """Smallest-last ordering of the adjacency graph of ``H``."""
    nbrs = _neighbor_lists(H)
    return _smallest_last(H.n, lambda v: nbrs[v])


def star_coloring(H, order=None):
    """Greedy star coloring in smallest-last order.

    A color is forbidden for ``v`` when a neighbor has it, when a vertex two
    steps away through an uncolored neighbor has it, or when it would close
    a path ``v - w - x - y`` colored ``c, a, c, a``.
    """
    n = H.n
    nbrs = _neighbor_lists(H)
    if order is None:
        order = _smallest_last(n, lambda v: nbrs[v])
    color = [0] * n
    # counts[x][c]: colored neighbors of x with color c
    counts = [defaultdict(int) for _ in range(n)]
    # hot[w]: colors of colored neighbors x of w having two or more
    # neighbors colored like w; such x would end a bicolored P4 at v
    hot = [set() for _ in range(n)]
    forbidden = [-1] * (n + 2)
    for v in np.asarray(order).tolist():
        for w in nbrs[v]:
            cw = color[w]
            if cw:
                forbidden[cw] = v
                for c in hot[w]:
                    forbidden[c] = v
            else:
                for c in counts[w]:
                    forbidden[c] = v
        c = 1
        while forbidden[c] == v:
            c += 1
        color[v] = c
        for a, k in counts[v].items():
            if k >= 2:
                for y in nbrs[v]:
                    if color[y] == a:
                        hot[y].add(c)
        for w in nbrs[v]:
            counts[w][c] += 1
            cw = color[w]
            if cw and counts[w][c] == 2:
                for y in nbrs[w]:
                    if color[y] == c:
                        hot[y].add(cw)
            elif cw and counts[w][c] > 2:
                hot[v].add(cw)
    color = np.array(color, dtype=np.int64)
    return SymmetricColoring("direct", color, int(color.max(initial=0)))


def _find(parent, v):
    root = v
    while parent.get(root, root) != root:
        root = parent[root]
    while parent.get(v, v) != root:
        parent[v], v = root, parent[v]
    return root


def acyclic_coloring(H, order=None):
    """Greedy acyclic coloring in smallest-last order.

    Union-find structures, one per color pair, track the two-colored
    forests; a color is rejected for ``v`` when two neighbors of one color
    already lie in the same tree. If the result needs more colors than
    :func:`star_coloring` the star coloring is returned instead, since every
    star coloring is acyclic.
    """
    n = H.n
    nbrs = _neighbor_lists(H)
    if order is None:
        order = _smallest_last(n, lambda v: nbrs[v])
    color = [0] * n
    sets = {}
    for v in np.asarray(order).tolist():
        by_color = defaultdict(list)
        for w in nbrs[v]:
            if color[w]:
                by_color[color[w]].append(w)
        c = 1
        while True:
            if c in by_color:
                c += 1
                continue
            if _closes_cycle(sets, by_color, c):
                c += 1
                continue
            break
        color[v] = c
        for a, ws in by_color.items():
            parent = sets.setdefault((min(a, c), max(a, c)), {})
            for w in ws:
                ra, rb = _find(parent, v), _find(parent, w)
                if ra != rb:
                    parent[rb] = ra
    color = np.array(color, dtype=np.int64)
    p = int(color.max(initial=0))
    star = star_coloring(H, order)
    if star.p < p:
        color, p = star.color, star.p
    return SymmetricColoring("substitution", color, p, two_colored_forests(H, color))


def _closes_cycle(sets, by_color, c):
    for a, ws in by_color.items():
        if len(ws) < 2:
            continue
        parent = sets.get((min(a, c), max(a, c)))
        if parent is None:
            continue
        roots = set()
        for w in ws:
            r = _find(parent, w)
            if r in roots:
                return True
            roots.add(r)
    return False


def two_colored_forests(H, color):
    """Parent links of every two-colored subgraph, rooted at smallest vertex.

    Raises ``ValueError`` when some two-colored subgraph has a cycle.
    """
    color = np.asarray(color)
    off = H.rows != H.cols
    i, j = H.rows[off], H.cols[off]
    a, b = np.minimum(color[i], color[j]), np.maximum(color[i], color[j])
    order = np.lexsort((j, i, b, a))
    keys = list(zip(a[order].tolist(), b[order].tolist()))
    ends = list(zip(i[order].tolist(), j[order].tolist()))
    forests = {}
    start = 0
    while start < len(keys):
        stop = start
        while stop < len(keys) and keys[stop] == keys[start]:
            stop += 1
        adj = defaultdict(list)
        for u, w in ends[start:stop]:
            adj[u].append(w)
            adj[w].append(u)
        parent, seen = {}, set()
        for root in sorted(adj):
            if root in seen:
                continue
            # breadth-first over the component containing root
            seen.add(root)
            queue = deque([(root, -1)])
            while queue:
                x, px = queue.popleft()
                for y in adj[x]:
                    if y == px:
                        continue
                    if y in seen:
                        raise ValueError(f"two-colored cycle through {x} and {y}")
                    seen.add(y)
                    parent[y] = x
                    queue.append((y, x))
        forests[keys[start]] = parent
        start = stop
    return forests


def is_star_coloring(H, color):
    """Proper, and every two-colored component is a star."""
    color = np.asarray(color)
    off = H.rows != H.cols
    i, j = H.rows[off], H.cols[off]
    if np.any(color[i] == color[j]):
        return False
    nbrs = _neighbor_lists(H)
    for v in range(H.n):
        for w in nbrs[v]:
            # v - w - x - y colored a, b, a, b
            for x in nbrs[w]:
                if x != v and color[x] == color[v]:
                    for y in nbrs[x]:
                        if y != w and color[y] == color[w]:
                            return False
    return True


def is_acyclic_coloring(H, color):
    """Proper, and every two-colored subgraph is a forest."""
    color = np.asarray(color)
    off = H.rows != H.cols
    i, j = H.rows[off], H.cols[off]
    if np.any(color[i] == color[j]):
        return False
    parents = defaultdict(dict)
    for u, w in zip(i.tolist(), j.tolist()):
        a, b = sorted((int(color[u]), int(color[w])))
        parent = parents[(a, b)]
        ru, rw = _find(parent, u), _find(parent, w)
        if ru == rw:
            return False
        parent[rw] = ru
    return True


@dataclass(frozen=True, eq=False)
class HessianRecoveryPlan:
    """Ordered resolution of every lower-triangle entry of ``H``.

    Step ``s`` sets entry ``target[s]`` to ``W[src_row[s], src_col[s]]``
    minus the entries listed in ``sub_idx[sub_ptr[s]:sub_ptr[s+1]]``; all of
    those are targets of earlier steps. Entry positions index the lower
    pattern of ``H`` and ``src_col`` is the 0-based color.
    """

    pattern: SymmetricPattern
    coloring: SymmetricColoring
    target: np.ndarray
    src_row: np.ndarray
    src_col: np.ndarray
    sub_ptr: np.ndarray
    sub_idx: np.ndarray

    @property
    def p(self):
        return self.coloring.p

    def __len__(self):
        return self.target.size

    @property
    def steps(self):
        """``((i, j), (row, color), [(i', j'), ...])`` per step, colors 1-based."""
        rows, cols = self.pattern.rows, self.pattern.cols
        out = []
        for s, e in enumerate(self.target.tolist()):
            subs = self.sub_idx[self.sub_ptr[s]:self.sub_ptr[s + 1]].tolist()
            out.append(((int(rows[e]), int(cols[e])),
                        (int(self.src_row[s]), int(self.src_col[s]) + 1),
                        [(int(rows[k]), int(cols[k])) for k in subs]))
        return out

    def levels(self):
        """Substitution depth of every step (0 when nothing is subtracted)."""
        depth_of_entry = np.zeros(self.pattern.nnz_lower, dtype=np.int64)
        depth = np.zeros(len(self), dtype=np.int64)
        for s in np.flatnonzero(np.diff(self.sub_ptr)).tolist():
            subs = self.sub_idx[self.sub_ptr[s]:self.sub_ptr[s + 1]]
            depth[s] = depth_of_entry[subs].max() + 1
            depth_of_entry[self.target[s]] = depth[s]
        return depth

    @cached_property
    def _system(self):
        # unit lower-triangular system in step order: x_s + sum(x_t) = W cell
        steps = len(self)
        position = np.empty(self.pattern.nnz_lower, dtype=np.int64)
        position[self.target] = np.arange(steps)
        counts = np.diff(self.sub_ptr)
        if not counts.any():
            return None
        rows = np.repeat(np.arange(steps), counts)
        strict = sp.csr_matrix((np.ones(rows.size), (rows, position[self.sub_idx])),
                               shape=(steps, steps))
        return (sp.identity(steps, format="csr") + strict).tocsr()

    @property
    def max_chain(self):
        return int(self.levels().max(initial=0))


def _cells(H, color, p):
    """Compressed cells ``row * p + color - 1`` holding each lower entry.

    Returns the first cell of every entry, the second (``-1`` on the
    diagonal) and the members of every cell in CSR form.
    """
    rows, cols = H.rows, H.cols
    first = rows * p + color[cols] - 1
    second = np.where(rows != cols, cols * p + color[rows] - 1, -1)
    entries = np.arange(rows.size)
    off = second >= 0
    cell = np.concatenate([first, second[off]])
    owner = np.concatenate([entries, entries[off]])
    order = np.argsort(cell, kind="stable")
    ptr = np.zeros(H.n * p + 1, dtype=np.int64)
    np.cumsum(np.bincount(cell, minlength=H.n * p), out=ptr[1:])
    return first, second, ptr, owner[order]


def plan_recovery(H, coloring):
    """Resolution schedule for ``H`` under ``coloring``.

    Direct plans read each entry from a cell where it is the only
    contribution. Substitution plans peel cells holding a single unresolved
    entry, subtracting the entries already resolved in that cell.
    """
    color = np.asarray(coloring.color, dtype=np.int64)
    if color.size != H.n:
        raise ValueError("coloring size does not match the pattern")
    p = max(int(coloring.p), int(color.max(initial=0)), 1)
    nnz = H.nnz_lower
    first, second, ptr, members = _cells(H, color, p)
    size = np.diff(ptr)

    if coloring.kind == "direct":
        use_first = size[first] == 1
        use_second = ~use_first & (second >= 0) & (size[np.maximum(second, 0)] == 1)
        bad = np.flatnonzero(~use_first & ~use_second)
        if bad.size:
            e = int(bad[0])
            entry = (int(H.rows[e]), int(H.cols[e]))
            raise PlanInfeasibleError(f"entry {entry} is not directly determined", entry=entry)
        cell = np.where(use_first, first, second)
        return HessianRecoveryPlan(H, coloring, np.arange(nnz), cell // p, cell % p,
                                   np.zeros(nnz + 1, dtype=np.int64),
                                   np.empty(0, dtype=np.int64))

    ptr_l, members_l = ptr.tolist(), members.tolist()
    first_l, second_l = first.tolist(), second.tolist()
    resolved = [False] * nnz
    pending = size.tolist()
    queue = deque(np.flatnonzero(size == 1).tolist())
    target, src, subs = [], [], []
    while queue:
        c = queue.popleft()
        if pending[c] != 1:
            continue
        cell_members = members_l[ptr_l[c]:ptr_l[c + 1]]
        e = next(k for k in cell_members if not resolved[k])
        resolved[e] = True
        target.append(e)
        src.append(c)
        subs.append([k for k in cell_members if k != e])
        for d in (first_l[e], second_l[e]):
            if d >= 0:
                pending[d] -= 1
                if pending[d] == 1:
                    queue.append(d)
    if len(target) < nnz:
        e = resolved.index(False)
        entry = (int(H.rows[e]), int(H.cols[e]))
        raise PlanInfeasibleError(f"entry {entry} cannot be resolved by substitution",
                                  entry=entry)
    src = np.array(src, dtype=np.int64)
    sub_ptr = np.zeros(nnz + 1, dtype=np.int64)
    np.cumsum([len(k) for k in subs], out=sub_ptr[1:])
    return HessianRecoveryPlan(
        H, coloring, np.array(target, dtype=np.int64), src // p, src % p, sub_ptr,
        np.array([k for group in subs for k in group], dtype=np.int64))


@dataclass(frozen=True, eq=False)
class SymmetricMatrix:
    """Values on the lower pattern of a symmetric matrix."""

    pattern: SymmetricPattern
    values: np.ndarray

    @property
    def n(self):
        return self.pattern.n

    def to_dense(self):
        A = np.zeros((self.n, self.n))
        A[self.pattern.rows, self.pattern.cols] = self.values
        A[self.pattern.cols, self.pattern.rows] = self.values
        return A

    def __getitem__(self, ij):
        i, j = max(ij), min(ij)
        lo, hi = self.pattern.lower.row_offsets[i], self.pattern.lower.row_offsets[i + 1]
        pos = lo + np.searchsorted(self.pattern.lower.col_indices[lo:hi], j)
        if pos < hi and self.pattern.lower.col_indices[pos] == j:
            return float(self.values[pos])
        return 0.0

    def nonzero_pattern(self):
        keep = self.values != 0.0
        return SymmetricPattern.from_pairs(self.n, self.pattern.rows[keep],
                                           self.pattern.cols[keep])


def recover_hessian(plan, W, counter=None):
    """Run the schedule of ``plan`` on ``W = H V``."""
    W = np.asarray(W, dtype=float)
    if W.shape != (plan.pattern.n, plan.p):
        raise ValueError(f"compressed Hessian has shape {W.shape}, "
                         f"expected {(plan.pattern.n, plan.p)}")
    values = np.empty(plan.pattern.nnz_lower)
    cells = W[plan.src_row, plan.src_col]
    system = plan._system
    if system is None:
        values[plan.target] = cells
    else:
        # substitution chains can be long, so solve them in compiled code
        values[plan.target] = spsolve_triangular(system, cells, lower=True,
                                                 unit_diagonal=True)
    if counter is not None:
        counter.record(add=int(plan.sub_idx.size))
    return SymmetricMatrix(plan.pattern, values)
