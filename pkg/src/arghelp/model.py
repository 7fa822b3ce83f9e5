"""Linear hinge-loss classifier trained by SGD, with k-fold grid search.

The objective is ``mean(max(0, 1 - y (w.x + b))) + alpha * ||w||^2`` with
``y = +1`` for Useful. Step ``t`` (counted across epochs, from 0) uses
``eta_t = eta0 / (1 + eta0 * alpha * t)``. Every step decays ``w`` by
``1 - 2 eta_t alpha``; a margin violation (``y (w.x + b) < 1``, evaluated
before the step) also adds ``eta_t y x`` to ``w`` and ``eta_t y`` to ``b``.

With small alpha the schedule barely decays within a few epochs, so the last
iterate is noisy. ``Hyperparams.average`` returns the mean iterate of the same
trajectory instead; ``default_grid`` turns it on.
"""

from __future__ import annotations

import json
import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np
from numba import njit

from arghelp.corpus import Label
from arghelp.features import AssembledExample, FeatureSet
from arghelp.textproc import SparseVector

MODEL_FORMAT_VERSION = 1


class TrainingError(ValueError):
    pass


@dataclass(frozen=True)
class Hyperparams:
    alpha: float
    # inert under hinge loss; kept so grids can mirror the tuned (alpha, epsilon) pairs
    epsilon: float = 0.1
    epochs: int = 5
    eta0: float = 1.0
    seed: int = 0
    # return the mean of all SGD iterates instead of the last one
    average: bool = False

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if not self.eta0 > 0:
            raise ValueError("eta0 must be positive")
        if self.epsilon < 0:
            raise ValueError("epsilon must be non-negative")


def default_grid(
    seed: int = 0, epochs: int = 5, eta0: float = 1.0, average: bool = True
) -> list[Hyperparams]:
    return [
        Hyperparams(alpha=a, epsilon=e, epochs=epochs, eta0=eta0, seed=seed, average=average)
        for a in (1e-6, 1e-5, 1e-4, 1e-3, 1e-2)
        for e in (0.01, 0.1)
    ]


@dataclass
class LinearModel:
    weights: np.ndarray
    bias: float
    trained_on: FeatureSet | None = None
    hyperparams: Hyperparams | None = None

    @property
    def dimension(self) -> int:
        return int(self.weights.size)

    def margins(self, X: "CSR") -> np.ndarray:
        if X.dimension != self.dimension:
            raise ValueError(f"dimension mismatch: model {self.dimension}, data {X.dimension}")
        return _csr_margins(X.indptr, X.indices, X.data, self.weights, self.bias)

    def predict_labels(self, X: "CSR") -> list[Label]:
        return [Label.USEFUL if m > 0 else Label.NOT_USEFUL for m in self.margins(X)]


@dataclass(frozen=True)
class CSR:
    """Row-compressed design matrix with +1/-1 targets."""

    indptr: np.ndarray
    indices: np.ndarray
    data: np.ndarray
    y: np.ndarray
    dimension: int

    @property
    def n(self) -> int:
        return int(self.indptr.size - 1)

    @classmethod
    def from_examples(cls, examples: Sequence[AssembledExample], dimension: int | None = None):
        return cls.from_vectors(
            [ex.vector for ex in examples], [ex.label.sign for ex in examples], dimension
        )

    @classmethod
    def from_vectors(cls, vectors: Sequence[SparseVector], y, dimension: int | None = None):
        dims = {v.dimension for v in vectors}
        if dimension is None:
            if len(dims) > 1:
                raise TrainingError(f"examples have mixed dimensions {sorted(dims)}")
            dimension = dims.pop() if dims else 0
        elif dims - {dimension}:
            raise ValueError(f"dimension mismatch: expected {dimension}, got {sorted(dims)}")
        indptr = np.zeros(len(vectors) + 1, dtype=np.int64)
        if vectors:
            indptr[1:] = np.cumsum([v.nnz for v in vectors])
            indices = np.concatenate([v.indices for v in vectors])
            data = np.concatenate([v.values for v in vectors])
        else:
            indices = np.empty(0, np.int64)
            data = np.empty(0, np.float64)
        return cls(indptr, indices, data, np.asarray(y, dtype=np.float64), int(dimension))

    def take(self, rows: np.ndarray) -> "CSR":
        rows = np.asarray(rows, dtype=np.int64)
        starts, ends = self.indptr[rows], self.indptr[rows + 1]
        lengths = ends - starts
        indptr = np.zeros(rows.size + 1, dtype=np.int64)
        indptr[1:] = np.cumsum(lengths)
        sel = np.concatenate([np.arange(s, e) for s, e in zip(starts, ends)]) if rows.size else []
        sel = np.asarray(sel, dtype=np.int64)
        return CSR(indptr, self.indices[sel], self.data[sel], self.y[rows], self.dimension)


@njit(cache=True, nogil=True)
def _csr_margins(indptr, indices, data, w, b):
    n = indptr.size - 1
    out = np.empty(n)
    for i in range(n):
        acc = 0.0
        for p in range(indptr[i], indptr[i + 1]):
            acc += w[indices[p]] * data[p]
        out[i] = acc + b
    return out


@njit(cache=True, nogil=True)
def _sgd_kernel(indptr, indices, data, y, orders, alpha, eta0, dim, average):
    # w is kept as scale * v so the per-step decay is O(1). For averaging,
    # sum_t w_t = acc_scale * v - u, where u collects acc_scale-weighted sparse
    # steps; both are folded back whenever scale is renormalized.
    v = np.zeros(dim)
    u = np.zeros(dim)
    scale = 1.0
    acc_scale = 0.0
    b = 0.0
    b_sum = 0.0
    t = 0
    for e in range(orders.shape[0]):
        for j in range(orders.shape[1]):
            i = orders[e, j]
            eta = eta0 / (1.0 + eta0 * alpha * t)
            acc = 0.0
            for p in range(indptr[i], indptr[i + 1]):
                acc += v[indices[p]] * data[p]
            margin = y[i] * (scale * acc + b)
            scale *= 1.0 - eta * 2.0 * alpha
            if scale == 0.0:
                if average:
                    u -= acc_scale * v
                    acc_scale = 0.0
                v[:] = 0.0
                scale = 1.0
            if margin < 1.0:
                step = eta * y[i] / scale
                for p in range(indptr[i], indptr[i + 1]):
                    v[indices[p]] += step * data[p]
                    if average:
                        u[indices[p]] += acc_scale * step * data[p]
                b += eta * y[i]
            acc_scale += scale
            b_sum += b
            if abs(scale) < 1e-9:
                if average:
                    u -= acc_scale * v
                    acc_scale = 0.0
                v *= scale
                scale = 1.0
            t += 1
    if average and t > 0:
        return (acc_scale * v - u) / t, b_sum / t
    return v * scale, b


def epoch_orders(n: int, epochs: int, seed: int) -> np.ndarray:
    """Per-epoch example orders drawn from a PCG64 stream seeded by ``seed``."""
    rng = np.random.Generator(np.random.PCG64(seed))
    return np.stack([rng.permutation(n) for _ in range(epochs)]) if n else np.zeros((epochs, 0), np.int64)


def _check_trainable(X: CSR):
    if X.n == 0:
        raise TrainingError("no training examples")
    if np.all(X.y > 0) or np.all(X.y < 0):
        raise TrainingError("training data contains a single class")
    if not np.all(np.isfinite(X.data)):
        raise TrainingError("non-finite feature values")


def train_csr(X: CSR, hp: Hyperparams, trained_on: FeatureSet | None = None) -> LinearModel:
    _check_trainable(X)
    orders = epoch_orders(X.n, hp.epochs, hp.seed)
    w, b = _sgd_kernel(
        X.indptr, X.indices, X.data, X.y, orders, hp.alpha, hp.eta0, X.dimension, hp.average
    )
    return LinearModel(w, float(b), trained_on, hp)


def train_sgd(train: Sequence[AssembledExample], hp: Hyperparams) -> LinearModel:
    X = CSR.from_examples(train)
    return train_csr(X, hp, train[0].feature_set if train else None)


def predict(model: LinearModel, x: SparseVector) -> tuple[Label, float]:
    """Label and margin ``w.x + b``; a zero margin counts as NotUseful."""
    if x.dimension != model.dimension:
        raise ValueError(f"dimension mismatch: model {model.dimension}, vector {x.dimension}")
    margin = x.dot(model.weights) + model.bias
    return (Label.USEFUL if margin > 0 else Label.NOT_USEFUL), margin


def hinge_objective(model: LinearModel, examples: Sequence[AssembledExample] | CSR, alpha: float) -> float:
    X = examples if isinstance(examples, CSR) else CSR.from_examples(examples, model.dimension)
    losses = np.maximum(0.0, 1.0 - X.y * model.margins(X))
    return float(losses.mean()) + alpha * float(np.dot(model.weights, model.weights))


def hinge_gradient(
    model: LinearModel, examples: Sequence[AssembledExample] | CSR, alpha: float
) -> tuple[np.ndarray, float]:
    """Subgradient of ``hinge_objective`` w.r.t. ``(w, b)``; margin exactly 1 counts as inactive."""
    X = examples if isinstance(examples, CSR) else CSR.from_examples(examples, model.dimension)
    active = X.y * model.margins(X) < 1.0
    gw = 2.0 * alpha * model.weights.copy()
    coef = np.where(active, -X.y, 0.0) / X.n
    rows = np.repeat(np.arange(X.n), np.diff(X.indptr))
    np.add.at(gw, X.indices, coef[rows] * X.data)
    return gw, float(coef.sum())


@dataclass
class CVResult:
    grid: list[tuple[Hyperparams, float, list[float]]]
    best: Hyperparams
    model: LinearModel | None = None
    folds: list[np.ndarray] = field(default_factory=list, repr=False)


def kfold_indices(n: int, k: int, seed: int) -> list[np.ndarray]:
    """Contiguous folds over a seeded shuffle; the first ``n % k`` folds get one extra."""
    perm = np.random.Generator(np.random.PCG64(seed)).permutation(n)
    return [np.sort(f) for f in np.array_split(perm, k)]


def _accuracy(model: LinearModel, X: CSR) -> float:
    pred = np.where(model.margins(X) > 0, 1.0, -1.0)
    return float(np.mean(pred == X.y))


def cross_validate(
    train: Sequence[AssembledExample] | CSR,
    grid: Sequence[Hyperparams],
    k: int = 5,
    seed: int = 0,
    jobs: int = 1,
    refit: bool = True,
) -> CVResult:
    """Grid search by k-fold accuracy, then refit on all of ``train``.

    Ties on mean accuracy go to the smaller alpha, then the smaller epsilon,
    then the earlier grid entry.
    """
    if not grid:
        raise ValueError("empty hyperparameter grid")
    X = train if isinstance(train, CSR) else CSR.from_examples(train)
    if k < 2 or X.n < k:
        raise ValueError(f"need k >= 2 and at least k examples (k={k}, n={X.n})")
    trained_on = None if isinstance(train, CSR) or not train else train[0].feature_set

    folds = kfold_indices(X.n, k, seed)
    splits = []
    for f in range(k):
        rest = np.sort(np.concatenate([folds[g] for g in range(k) if g != f]))
        splits.append((X.take(rest), X.take(folds[f])))

    def job(args):
        hp, (tr, va) = args
        return _accuracy(train_csr(tr, hp), va)

    jobs_list = [(hp, sp) for hp in grid for sp in splits]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            accs = list(pool.map(job, jobs_list))
    else:
        accs = [job(a) for a in jobs_list]

    rows = []
    for gi, hp in enumerate(grid):
        per_fold = accs[gi * k : (gi + 1) * k]
        rows.append((hp, math.fsum(per_fold) / k, per_fold))
    order = sorted(range(len(rows)), key=lambda i: (-rows[i][1], rows[i][0].alpha, rows[i][0].epsilon, i))
    best = rows[order[0]][0]
    model = train_csr(X, best, trained_on) if refit else None
    return CVResult(rows, best, model, folds)


def save_model(path: str | Path, model: LinearModel, vocab_checksum: str | None = None) -> None:
    obj = {
        "format_version": MODEL_FORMAT_VERSION,
        "dimension": model.dimension,
        "weights": model.weights.tolist(),
        "bias": model.bias,
        "hyperparams": asdict(model.hyperparams) if model.hyperparams else None,
        "feature_set": model.trained_on.value if model.trained_on else None,
        "vocab_checksum": vocab_checksum,
    }
    Path(path).write_text(json.dumps(obj, sort_keys=True), encoding="utf-8")


def load_model(path: str | Path, vocab_checksum: str | None = None) -> LinearModel:
    """Load a saved model; raises if ``vocab_checksum`` does not match the stored one."""
    obj = json.loads(Path(path).read_text(encoding="utf-8"))
    if obj.get("format_version") != MODEL_FORMAT_VERSION:
        raise ValueError(f"unsupported model format {obj.get('format_version')!r}")
    stored = obj.get("vocab_checksum")
    if vocab_checksum is not None and stored is not None and stored != vocab_checksum:
        raise ValueError("vocabulary checksum mismatch")
    w = np.asarray(obj["weights"], dtype=np.float64)
    if w.size != obj["dimension"]:
        raise ValueError("weights length does not match dimension")
    hp = Hyperparams(**obj["hyperparams"]) if obj.get("hyperparams") else None
    fs = FeatureSet(obj["feature_set"]) if obj.get("feature_set") else None
    return LinearModel(w, float(obj["bias"]), fs, hp)
