"""Dense reference derivatives, free of any coloring or compression."""
from __future__ import annotations

import numpy as np

from ..adcore import DualVector, EvalContext, SecondOrderDual
from ..adcore.evaluate import _check_point, _sweep


def dense_jacobian(F, x, block=1):
    """``f_E'(x)`` as a dense ``m x n`` array.

    Each sweep carries ``block`` consecutive unit directions; the default is
    one direction per sweep.
    """
    x = _check_point(F, x)
    n = F.n
    cols = []
    for start in range(0, n, block):
        stop = min(n, start + block)
        seed = np.zeros((n, stop - start))
        seed[np.arange(start, stop), np.arange(stop - start)] = 1.0
        out = _sweep(F, DualVector(x.copy(), seed, EvalContext(n)))
        cols.append(out.d)
    return np.hstack(cols)


def dense_gradient(F, x, block=1):
    return dense_jacobian(F, x, block).sum(axis=0)


def dense_hessian(F, x):
    """``hess f(x)`` as a dense array, column by column.

    Column ``j`` comes from a forward-over-forward sweep with the identity
    as first-order seed and ``e_j`` as direction.
    """
    x = _check_point(F, x)
    n = F.n
    H = np.empty((n, n))
    eye = np.eye(n)
    for j in range(n):
        out = _sweep(F, SecondOrderDual(x.copy(), eye, eye[j], np.zeros((n, n)),
                                        EvalContext(n)))
        H[:, j] = out.s.sum(axis=0)
    return H
