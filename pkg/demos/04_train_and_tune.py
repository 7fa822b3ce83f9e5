"""Hinge-loss SGD on a toy problem, then 5-fold grid search.

Run: python demos/04_train_and_tune.py
"""

import numpy as np

from arghelp.model import CSR, Hyperparams, cross_validate, default_grid, hinge_objective, train_csr
from arghelp.textproc import SparseVector

rng = np.random.default_rng(1)
X = rng.normal(size=(300, 5))
true_w = np.array([1.5, -2.0, 0.0, 0.5, 0.0])
y = np.where(X @ true_w + 0.3 * rng.normal(size=300) > 0, 1.0, -1.0)
data = CSR.from_vectors([SparseVector.from_dense(row) for row in X], y, 5)

for average in (False, True):
    hp = Hyperparams(alpha=1e-3, average=average)
    model = train_csr(data, hp)
    acc = np.mean(np.sign(model.margins(data)) == y)
    print(f"average={average!s:<5} objective {hinge_objective(model, data, hp.alpha):.4f}  train acc {acc:.3f}")

cv = cross_validate(data, default_grid(), k=5)
print("\nmean CV accuracy per grid point:")
for hp, mean, _ in cv.grid:
    print(f"  alpha={hp.alpha:<7g} epsilon={hp.epsilon:<5g} {mean:.3f}")
print("chosen:", cv.best.alpha, cv.best.epsilon)
