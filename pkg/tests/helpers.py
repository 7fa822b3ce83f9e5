"""Small data builders shared by several test modules."""

from __future__ import annotations

import numpy as np

from arghelp.corpus import Label
from arghelp.features import AssembledExample, FeatureSet
from arghelp.model import CSR, LinearModel, hinge_gradient, hinge_objective
from arghelp.textproc import SparseVector


def separable_2d(n=100, seed=0, margin=1.0):
    """Points in [-2, 2]^2 on either side of x + y = 1, at distance at least ``margin`` from it."""
    rng = np.random.default_rng(seed)
    pts, ys = [], []
    while len(pts) < n:
        p = rng.uniform(-2, 2, size=2)
        d = (p[0] + p[1] - 1) / np.sqrt(2)
        if abs(d) >= margin:
            pts.append(p)
            ys.append(1.0 if d > 0 else -1.0)
    return np.array(pts), np.array(ys)


def dense_to_csr(X, y):
    vecs = [SparseVector.from_dense(row) for row in X]
    return CSR.from_vectors(vecs, y, X.shape[1])


def dense_to_examples(X, y, fs=FeatureSet.BOW):
    return [
        AssembledExample(SparseVector.from_dense(row), Label.USEFUL if t > 0 else Label.NOT_USEFUL, f"e{i}", fs)
        for i, (row, t) in enumerate(zip(X, y))
    ]


def random_problem(rng, n=30, d=8, density=0.5):
    X = rng.normal(size=(n, d)) * (rng.random((n, d)) < density)
    y = np.where(rng.random(n) < 0.5, -1.0, 1.0)
    y[0], y[1] = 1.0, -1.0
    return X, y


def _finite_difference(f, x, h=1e-6):
    g = np.zeros_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        g[i] = (f(x + e) - f(x - e)) / (2 * h)
    return g


def gradient_check(seed):
    """Relative error of the analytic subgradient against central differences."""
    rng = np.random.default_rng(seed)
    X, y = random_problem(rng, n=12, d=4, density=1.0)
    data = dense_to_csr(X, y)
    alpha = float(rng.uniform(1e-3, 1e-1))
    while True:
        theta = rng.normal(size=5)
        m = y * (X @ theta[:4] + theta[4])
        if np.min(np.abs(m - 1.0)) > 1e-3:
            break

    def f(t):
        return hinge_objective(LinearModel(t[:4], float(t[4])), data, alpha)

    gw, gb = hinge_gradient(LinearModel(theta[:4], float(theta[4])), data, alpha)
    analytic = np.append(gw, gb)
    numeric = _finite_difference(f, theta)
    return np.linalg.norm(analytic - numeric) / max(np.linalg.norm(analytic), np.linalg.norm(numeric), 1e-12)
