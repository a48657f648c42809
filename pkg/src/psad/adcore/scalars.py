"""Abstract scalars: plain values and forward-mode derivative carriers.

Component functions are written once against the :class:`Lanes` interface and
evaluated under any realization. A ``Lanes`` object is a 1-D vector of scalars;
every operation acts lane by lane, so an evaluation over ``m`` components is a
handful of numpy calls rather than ``m`` Python loops. Indexing with an integer
returns a length-1 vector, and length-1 vectors broadcast against longer ones.

Realizations
------------
PlainValue
    Values only.
DualVector
    Value plus a dense row of ``p`` directional derivatives.
SparseDual
    Value plus a sorted list of ``(column, partial)`` pairs per lane.
SecondOrderDual
    Value, ``p`` first derivatives, one directional derivative ``dot`` and the
    ``p`` derivatives of ``dot``.

All realizations compute the primal value with the same numpy expression, so
primal results are bitwise identical across realizations.

Every arithmetic operation on a scalar counts as one operation, and so does
every elementary function call; derivative lanes are charged the same way.
Counts accumulate in the :class:`OpCounter` of the evaluation context.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class OpCounter:
    """Elementary scalar operations accumulated during evaluations."""

    add: int = 0
    mul: int = 0
    div: int = 0
    func: int = 0

    @property
    def total(self):
        return self.add + self.mul + self.div + self.func

    def reset(self):
        self.add = self.mul = self.div = self.func = 0

    def record(self, add=0, mul=0, div=0, func=0):
        self.add += int(add)
        self.mul += int(mul)
        self.div += int(div)
        self.func += int(func)

    def __iadd__(self, other):
        self.record(other.add, other.mul, other.div, other.func)
        return self

    def as_dict(self):
        return {"add": self.add, "mul": self.mul, "div": self.div,
                "func": self.func, "total": self.total}


class EvalContext:
    """Per-evaluation state shared by every scalar of one sweep."""

    __slots__ = ("counter", "n")

    def __init__(self, n, counter=None):
        self.n = n
        self.counter = OpCounter() if counter is None else counter


def _as_index(key, length):
    if isinstance(key, (int, np.integer)):
        key = int(key)
        if key < 0:
            key += length
        if not 0 <= key < length:
            raise IndexError(f"index {key} out of range for {length} lanes")
        return np.array([key], dtype=np.int64)
    if isinstance(key, slice):
        return np.arange(length, dtype=np.int64)[key]
    idx = np.asarray(key)
    if idx.dtype == bool:
        return np.flatnonzero(idx)
    idx = idx.astype(np.int64).ravel()
    return np.where(idx < 0, idx + length, idx)


def _result_lanes(a, b):
    return max(np.size(a), np.size(b))


class Lanes:
    """Common interface of every scalar realization."""

    __array_ufunc__ = None  # make numpy defer to the reflected operators

    __slots__ = ("v", "ctx")

    # --- realization hooks -------------------------------------------------
    def _constant(self, values):
        raise NotImplementedError

    def _combine(self, other, sign):
        raise NotImplementedError

    def _combine_const(self, c, sign, reverse):
        raise NotImplementedError

    def _mul(self, other):
        raise NotImplementedError

    def _mul_const(self, c):
        raise NotImplementedError

    def _div(self, other):
        raise NotImplementedError

    def _div_const(self, c):
        raise NotImplementedError

    def _chain(self, y, d1, d2, cost1, cost2):
        raise NotImplementedError

    def _take(self, idx):
        raise NotImplementedError

    def _select(self, mask, other):
        raise NotImplementedError

    @classmethod
    def _concat(cls, parts):
        raise NotImplementedError

    # --- public surface ----------------------------------------------------
    @property
    def value(self):
        return self.v

    def __len__(self):
        return self.v.shape[0]

    def __getitem__(self, key):
        return self._take(_as_index(key, len(self)))

    def _count(self, **kw):
        self.ctx.counter.record(**kw)

    def _lift(self, other):
        if isinstance(other, Lanes):
            if type(other) is not type(self):
                raise TypeError(f"cannot mix {type(self).__name__} "
                                f"and {type(other).__name__}")
            return other
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return self._combine_const(np.asarray(other, dtype=float), 1, False)
        return self._combine(o, 1)

    def __radd__(self, other):
        return self._combine_const(np.asarray(other, dtype=float), 1, False)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return self._combine_const(np.asarray(other, dtype=float), -1, False)
        return self._combine(o, -1)

    def __rsub__(self, other):
        return self._combine_const(np.asarray(other, dtype=float), -1, True)

    def __neg__(self):
        return self._mul_const(np.float64(-1.0))

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return self._mul_const(np.asarray(other, dtype=float))
        return self._mul(o)

    def __rmul__(self, other):
        return self._mul_const(np.asarray(other, dtype=float))

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return self._div_const(np.asarray(other, dtype=float))
        return self._div(o)

    def __rtruediv__(self, other):
        c = np.asarray(other, dtype=float)
        x = self.v
        y = c / x
        lanes = np.size(y)
        self._count(div=lanes)
        return self._chain(
            y,
            lambda: -y / x, lambda: 2.0 * y / (x * x),
            {"div": 1, "add": 1}, {"mul": 2, "div": 1})

    def __pow__(self, other):
        o = self._lift(other)
        if o is not None:
            return exp(o * log(self))
        c = float(other)
        x = self.v
        y = np.power(x, c)
        self._count(func=y.size)

        def d1():
            if c == 0.0:
                return np.zeros_like(x)
            return c * np.power(x, c - 1.0)

        def d2():
            if c in (0.0, 1.0):
                return np.zeros_like(x)
            return c * (c - 1.0) * np.power(x, c - 2.0)

        return self._chain(y, d1, d2, {"func": 1, "mul": 1}, {"func": 1, "mul": 2})

    def __rpow__(self, other):
        return exp(self * np.log(np.asarray(other, dtype=float)))

    def __abs__(self):
        return fabs(self)

    # comparisons act on primal values and are free
    def __lt__(self, other):
        return self.v < _primal(other)

    def __le__(self, other):
        return self.v <= _primal(other)

    def __gt__(self, other):
        return self.v > _primal(other)

    def __ge__(self, other):
        return self.v >= _primal(other)

    __hash__ = object.__hash__


def _primal(x):
    return x.v if isinstance(x, Lanes) else np.asarray(x, dtype=float)


class PlainValue(Lanes):
    """Values only; the reference cost of evaluating the function."""

    __slots__ = ()

    def __init__(self, v, ctx):
        self.v = np.atleast_1d(np.asarray(v, dtype=float))
        self.ctx = ctx

    def _constant(self, values):
        return PlainValue(values, self.ctx)

    def _combine(self, other, sign):
        v = self.v + other.v if sign > 0 else self.v - other.v
        self._count(add=v.size)
        return PlainValue(v, self.ctx)

    def _combine_const(self, c, sign, reverse):
        if reverse:
            v = c - self.v
        else:
            v = self.v + c if sign > 0 else self.v - c
        self._count(add=v.size)
        return PlainValue(v, self.ctx)

    def _mul(self, other):
        v = self.v * other.v
        self._count(mul=v.size)
        return PlainValue(v, self.ctx)

    def _mul_const(self, c):
        v = self.v * c
        self._count(mul=v.size)
        return PlainValue(v, self.ctx)

    def _div(self, other):
        v = self.v / other.v
        self._count(div=v.size)
        return PlainValue(v, self.ctx)

    def _div_const(self, c):
        v = self.v / c
        self._count(div=v.size)
        return PlainValue(v, self.ctx)

    def _chain(self, y, d1, d2, cost1, cost2):
        return PlainValue(y, self.ctx)

    def _take(self, idx):
        return PlainValue(self.v[idx], self.ctx)

    def _select(self, mask, other):
        return PlainValue(np.where(mask, self.v, other.v), self.ctx)

    @classmethod
    def _concat(cls, parts):
        return cls(np.concatenate([p.v for p in parts]), parts[0].ctx)


def _scaled_cost(cost, lanes):
    return {k: v * lanes for k, v in cost.items()}


class DualVector(Lanes):
    """Value plus ``p`` directional derivatives (one row of ``J V``)."""

    __slots__ = ("d",)

    def __init__(self, v, d, ctx):
        self.v = np.atleast_1d(np.asarray(v, dtype=float))
        self.d = np.asarray(d, dtype=float).reshape(self.v.shape[0], -1)
        self.ctx = ctx

    @property
    def width(self):
        return self.d.shape[1]

    def _constant(self, values):
        values = np.atleast_1d(np.asarray(values, dtype=float))
        return DualVector(values, np.zeros((values.size, self.width)), self.ctx)

    def _combine(self, other, sign):
        if sign > 0:
            v, d = self.v + other.v, self.d + other.d
        else:
            v, d = self.v - other.v, self.d - other.d
        self._count(add=v.size + d.size)
        return DualVector(v, d, self.ctx)

    def _combine_const(self, c, sign, reverse):
        if reverse:
            v, d = c - self.v, -self.d
            self._count(add=v.size + d.size)
        else:
            v = self.v + c if sign > 0 else self.v - c
            d = np.broadcast_to(self.d, (v.size, self.width))
            self._count(add=v.size)
        return DualVector(v, d, self.ctx)

    def _mul(self, other):
        v = self.v * other.v
        d = self.v[:, None] * other.d + other.v[:, None] * self.d
        self._count(mul=v.size + 2 * d.size, add=d.size)
        return DualVector(v, d, self.ctx)

    def _mul_const(self, c):
        v = self.v * c
        d = self.d * np.reshape(c, (-1, 1))
        self._count(mul=v.size + d.size)
        return DualVector(v, d, self.ctx)

    def _div(self, other):
        q = self.v / other.v
        d = (self.d - q[:, None] * other.d) / other.v[:, None]
        self._count(div=q.size + d.size, mul=d.size, add=d.size)
        return DualVector(q, d, self.ctx)

    def _div_const(self, c):
        v = self.v / c
        d = self.d / np.reshape(c, (-1, 1))
        self._count(div=v.size + d.size)
        return DualVector(v, d, self.ctx)

    def _chain(self, y, d1, d2, cost1, cost2):
        g1 = d1()
        d = g1[:, None] * self.d
        self.ctx.counter.record(**_scaled_cost(cost1, y.size))
        self._count(mul=d.size)
        return DualVector(y, d, self.ctx)

    def _take(self, idx):
        return DualVector(self.v[idx], self.d[idx], self.ctx)

    def _select(self, mask, other):
        return DualVector(np.where(mask, self.v, other.v),
                          np.where(mask[:, None], self.d, other.d), self.ctx)

    @classmethod
    def _concat(cls, parts):
        return cls(np.concatenate([p.v for p in parts]),
                   np.concatenate([p.d for p in parts]), parts[0].ctx)


class SecondOrderDual(Lanes):
    """Forward-over-forward carrier.

    ``first`` holds derivatives along ``p`` seed columns, ``dot`` the
    derivative along a direction ``v`` and ``second`` the derivatives of
    ``dot`` along the seed columns, i.e. rows of ``(hess f_k v)^T V``.
    """

    __slots__ = ("f", "t", "s")

    def __init__(self, v, f, t, s, ctx):
        self.v = np.atleast_1d(np.asarray(v, dtype=float))
        lanes = self.v.shape[0]
        self.f = np.asarray(f, dtype=float).reshape(lanes, -1)
        self.t = np.asarray(t, dtype=float).reshape(lanes)
        self.s = np.asarray(s, dtype=float).reshape(lanes, -1)
        self.ctx = ctx

    @property
    def first(self):
        return self.f

    @property
    def dot(self):
        return self.t

    @property
    def second(self):
        return self.s

    @property
    def width(self):
        return self.f.shape[1]

    def _constant(self, values):
        values = np.atleast_1d(np.asarray(values, dtype=float))
        zeros = np.zeros((values.size, self.width))
        return SecondOrderDual(values, zeros, np.zeros(values.size), zeros, self.ctx)

    def _combine(self, other, sign):
        if sign > 0:
            parts = (self.v + other.v, self.f + other.f,
                     self.t + other.t, self.s + other.s)
        else:
            parts = (self.v - other.v, self.f - other.f,
                     self.t - other.t, self.s - other.s)
        self._count(add=sum(p.size for p in parts))
        return SecondOrderDual(*parts, self.ctx)

    def _combine_const(self, c, sign, reverse):
        if reverse:
            v = c - self.v
            f, t, s = -self.f, -self.t, -self.s
            self._count(add=v.size + f.size + t.size + s.size)
            return SecondOrderDual(v, f, t, s, self.ctx)
        v = self.v + c if sign > 0 else self.v - c
        lanes = v.size
        self._count(add=lanes)
        return SecondOrderDual(
            v, np.broadcast_to(self.f, (lanes, self.width)),
            np.broadcast_to(self.t, (lanes,)),
            np.broadcast_to(self.s, (lanes, self.width)), self.ctx)

    def _mul(self, other):
        a, b = self, other
        v = a.v * b.v
        f = a.v[:, None] * b.f + b.v[:, None] * a.f
        t = a.v * b.t + b.v * a.t
        s = (a.s * b.v[:, None] + a.f * b.t[:, None]
             + b.f * a.t[:, None] + b.s * a.v[:, None])
        self._count(mul=v.size + 2 * f.size + 2 * t.size + 4 * s.size,
                    add=f.size + t.size + 3 * s.size)
        return SecondOrderDual(v, f, t, s, self.ctx)

    def _mul_const(self, c):
        col = np.reshape(c, (-1, 1))
        v = self.v * c
        f, t, s = self.f * col, self.t * c, self.s * col
        self._count(mul=v.size + f.size + t.size + s.size)
        return SecondOrderDual(v, f, t, s, self.ctx)

    def _div(self, other):
        a, b = self, other
        q = a.v / b.v
        bv = b.v[:, None]
        qf = (a.f - q[:, None] * b.f) / bv
        qt = (a.t - q * b.t) / b.v
        qs = (a.s - qf * b.t[:, None] - q[:, None] * b.s - b.f * qt[:, None]) / bv
        self._count(div=q.size + qf.size + qt.size + qs.size,
                    mul=qf.size + qt.size + 3 * qs.size,
                    add=qf.size + qt.size + 3 * qs.size)
        return SecondOrderDual(q, qf, qt, qs, self.ctx)

    def _div_const(self, c):
        col = np.reshape(c, (-1, 1))
        v = self.v / c
        f, t, s = self.f / col, self.t / c, self.s / col
        self._count(div=v.size + f.size + t.size + s.size)
        return SecondOrderDual(v, f, t, s, self.ctx)

    def _chain(self, y, d1, d2, cost1, cost2):
        g1, g2 = d1(), d2()
        lanes = y.size
        f = g1[:, None] * self.f
        t = g1 * self.t
        s = (g2 * self.t)[:, None] * self.f + g1[:, None] * self.s
        self.ctx.counter.record(**_scaled_cost(cost1, lanes))
        self.ctx.counter.record(**_scaled_cost(cost2, lanes))
        self._count(mul=f.size + t.size + lanes + 2 * s.size, add=s.size)
        return SecondOrderDual(y, f, t, s, self.ctx)

    def _take(self, idx):
        return SecondOrderDual(self.v[idx], self.f[idx], self.t[idx],
                               self.s[idx], self.ctx)

    def _select(self, mask, other):
        col = mask[:, None]
        return SecondOrderDual(np.where(mask, self.v, other.v),
                               np.where(col, self.f, other.f),
                               np.where(mask, self.t, other.t),
                               np.where(col, self.s, other.s), self.ctx)

    @classmethod
    def _concat(cls, parts):
        return cls(np.concatenate([p.v for p in parts]),
                   np.concatenate([p.f for p in parts]),
                   np.concatenate([p.t for p in parts]),
                   np.concatenate([p.s for p in parts]), parts[0].ctx)


class SparseDual(Lanes):
    """Value plus a sparse gradient per lane, stored row-compressed.

    Lane ``i`` owns ``idx[ptr[i]:ptr[i+1]]`` (strictly increasing columns)
    and the matching partials in ``dat``. Merges keep entries whose partial
    cancels to exactly zero, so the stored indices are structural.
    """

    __slots__ = ("ptr", "idx", "dat")

    def __init__(self, v, ptr, idx, dat, ctx):
        self.v = np.atleast_1d(np.asarray(v, dtype=float))
        self.ptr = np.asarray(ptr, dtype=np.int64)
        self.idx = np.asarray(idx, dtype=np.int64)
        self.dat = np.asarray(dat, dtype=float)
        self.ctx = ctx

    @property
    def lengths(self):
        return np.diff(self.ptr)

    def lane(self, i):
        """``(indices, partials)`` of lane ``i``."""
        lo, hi = self.ptr[i], self.ptr[i + 1]
        return self.idx[lo:hi], self.dat[lo:hi]

    def _constant(self, values):
        values = np.atleast_1d(np.asarray(values, dtype=float))
        return SparseDual(values, np.zeros(values.size + 1, dtype=np.int64),
                          np.empty(0, dtype=np.int64), np.empty(0), self.ctx)

    def _expand(self, lanes):
        if len(self) == lanes:
            return self
        if len(self) != 1:
            raise ValueError(f"cannot broadcast {len(self)} lanes to {lanes}")
        return self._take(np.zeros(lanes, dtype=np.int64))

    def _take(self, idx):
        lengths = self.lengths[idx]
        ptr = np.zeros(idx.size + 1, dtype=np.int64)
        np.cumsum(lengths, out=ptr[1:])
        src = np.repeat(self.ptr[idx] - ptr[:-1], lengths) + np.arange(ptr[-1])
        return SparseDual(self.v[idx], ptr, self.idx[src], self.dat[src], self.ctx)

    def _rows(self):
        return np.repeat(np.arange(len(self), dtype=np.int64), self.lengths)

    def _scaled(self, scale):
        return self.dat * np.repeat(np.broadcast_to(scale, (len(self),)), self.lengths)

    @staticmethod
    def _merge(v, a, a_dat, b, b_dat):
        """Lane-wise union of two sparse gradients with equal lane counts."""
        ctx = a.ctx
        n = max(ctx.n, 1)
        keys = np.concatenate([a._rows() * n + a.idx, b._rows() * n + b.idx])
        data = np.concatenate([a_dat, b_dat])
        uniq, inverse = np.unique(keys, return_inverse=True)
        merged = np.bincount(inverse, weights=data, minlength=uniq.size)
        rows = uniq // n
        ptr = np.zeros(v.size + 1, dtype=np.int64)
        np.cumsum(np.bincount(rows, minlength=v.size), out=ptr[1:])
        return SparseDual(v, ptr, uniq % n, merged, ctx)

    def _combine(self, other, sign):
        lanes = _result_lanes(self.v, other.v)
        a, b = self._expand(lanes), other._expand(lanes)
        v = a.v + b.v if sign > 0 else a.v - b.v
        out = self._merge(v, a, a.dat, b, b.dat if sign > 0 else -b.dat)
        self._count(add=lanes + a.dat.size + b.dat.size)
        return out

    def _combine_const(self, c, sign, reverse):
        if reverse:
            v = c - self.v
            a = self._expand(v.size)
            self._count(add=v.size + a.dat.size)
            return SparseDual(v, a.ptr, a.idx, -a.dat, self.ctx)
        v = self.v + c if sign > 0 else self.v - c
        a = self._expand(v.size)
        self._count(add=v.size)
        return SparseDual(v, a.ptr, a.idx, a.dat, self.ctx)

    def _mul(self, other):
        lanes = _result_lanes(self.v, other.v)
        a, b = self._expand(lanes), other._expand(lanes)
        v = a.v * b.v
        out = self._merge(v, a, a._scaled(b.v), b, b._scaled(a.v))
        self._count(mul=lanes + a.dat.size + b.dat.size, add=a.dat.size + b.dat.size)
        return out

    def _mul_const(self, c):
        v = self.v * c
        a = self._expand(v.size)
        self._count(mul=v.size + a.dat.size)
        return SparseDual(v, a.ptr, a.idx, a._scaled(c), self.ctx)

    def _div(self, other):
        lanes = _result_lanes(self.v, other.v)
        a, b = self._expand(lanes), other._expand(lanes)
        q = a.v / b.v
        out = self._merge(q, a, a._scaled(1.0 / b.v), b, b._scaled(-q / b.v))
        self._count(div=lanes + a.dat.size + b.dat.size, mul=b.dat.size,
                    add=a.dat.size + b.dat.size)
        return out

    def _div_const(self, c):
        v = self.v / c
        a = self._expand(v.size)
        self._count(div=v.size + a.dat.size)
        return SparseDual(v, a.ptr, a.idx, a._scaled(1.0 / np.asarray(c)), self.ctx)

    def _chain(self, y, d1, d2, cost1, cost2):
        g1 = d1()
        a = self._expand(y.size)
        self.ctx.counter.record(**_scaled_cost(cost1, y.size))
        self._count(mul=a.dat.size)
        return SparseDual(y, a.ptr, a.idx, a._scaled(g1), self.ctx)

    def _select(self, mask, other):
        lanes = mask.size
        a, b = self._expand(lanes), other._expand(lanes)
        on, off = np.flatnonzero(mask), np.flatnonzero(~mask)
        joined = SparseDual._concat([a._take(on), b._take(off)])
        order = np.empty(lanes, dtype=np.int64)
        order[np.concatenate([on, off])] = np.arange(lanes)
        return joined._take(order)

    @classmethod
    def _concat(cls, parts):
        ptr = [np.zeros(1, dtype=np.int64)]
        base = 0
        for p in parts:
            ptr.append(p.ptr[1:] + base)
            base += p.ptr[-1]
        return cls(np.concatenate([p.v for p in parts]), np.concatenate(ptr),
                   np.concatenate([p.idx for p in parts]),
                   np.concatenate([p.dat for p in parts]), parts[0].ctx)


# --- elementary functions ---------------------------------------------------

def _elementary(x, fn, d1, d2, cost1, cost2):
    if not isinstance(x, Lanes):
        return fn(np.asarray(x, dtype=float))
    v = x.v
    y = fn(v)
    x._count(func=y.size)
    return x._chain(y, lambda: d1(v, y), lambda: d2(v, y), cost1, cost2)


def exp(x):
    return _elementary(x, np.exp, lambda v, y: y, lambda v, y: y, {}, {})


def log(x):
    return _elementary(x, np.log, lambda v, y: 1.0 / v,
                       lambda v, y: -1.0 / (v * v), {"div": 1}, {"mul": 1, "div": 1})


def sin(x):
    return _elementary(x, np.sin, lambda v, y: np.cos(v), lambda v, y: -y,
                       {"func": 1}, {"add": 1})


def cos(x):
    return _elementary(x, np.cos, lambda v, y: -np.sin(v), lambda v, y: -y,
                       {"func": 1, "add": 1}, {"add": 1})


def sqrt(x):
    return _elementary(x, np.sqrt, lambda v, y: 0.5 / y,
                       lambda v, y: -0.25 / (y * v), {"div": 1}, {"mul": 1, "div": 1})


def fabs(x):
    """Absolute value; differentiates the active branch (sign 0 at 0)."""
    return _elementary(x, np.abs, lambda v, y: np.sign(v),
                       lambda v, y: np.zeros_like(v), {"func": 1}, {})


def power(x, c):
    if isinstance(x, Lanes):
        return x ** c
    return np.power(np.asarray(x, dtype=float), c)


def where(cond, a, b):
    """Lane-wise ``a if cond else b``; derivatives follow the chosen branch."""
    template = a if isinstance(a, Lanes) else b
    if not isinstance(template, Lanes):
        return np.where(cond, a, b)
    mask = np.asarray(cond, dtype=bool)
    lanes = max(mask.size, np.size(_primal(a)), np.size(_primal(b)))
    mask = np.broadcast_to(mask, (lanes,))

    def lift(z):
        if isinstance(z, Lanes):
            return z if len(z) == lanes else z[np.zeros(lanes, dtype=np.int64)]
        return template._constant(np.broadcast_to(np.asarray(z, dtype=float), (lanes,)))

    return lift(a)._select(mask, lift(b))


def concat(parts):
    """Join scalar vectors (and plain constants) into one vector."""
    parts = list(parts)
    template = next((p for p in parts if isinstance(p, Lanes)), None)
    if template is None:
        return np.concatenate([np.atleast_1d(np.asarray(p, dtype=float)) for p in parts])
    lifted = []
    for p in parts:
        if isinstance(p, Lanes):
            template._lift(p)
            lifted.append(p)
        else:
            lifted.append(template._constant(np.atleast_1d(np.asarray(p, dtype=float))))
    return type(template)._concat(lifted)


def constant_like(template, values):
    """Constants in the realization of ``template``."""
    if isinstance(template, Lanes):
        return template._constant(np.atleast_1d(np.asarray(values, dtype=float)))
    return np.atleast_1d(np.asarray(values, dtype=float))
