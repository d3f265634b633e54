"""Reference RBF SVM solution (libsvm via scikit-learn) for the solver tests.

Usage: python3 svm_reference.py points.csv [gamma] [C]

Prints the dual objective 1/2 a'Qa - e'a, the bias, the number of support
vectors and the training accuracy for both the raw points and the points
min-max scaled to [0, 1] per dimension.
"""

import sys

import numpy as np
from sklearn.svm import SVC


def solve(x, y, gamma, c):
    clf = SVC(kernel="rbf", C=c, gamma=gamma, tol=1e-8, shrinking=False)
    clf.fit(x, y)
    sv = clf.support_vectors_
    dc = clf.dual_coef_[0]
    d2 = ((sv[:, None, :] - sv[None, :, :]) ** 2).sum(-1)
    k = np.exp(-gamma * d2)
    objective = 0.5 * dc @ k @ dc - np.abs(dc).sum()
    acc = (clf.predict(x) == y).mean()
    return objective, clf.intercept_[0], len(sv), acc


def main():
    data = np.loadtxt(sys.argv[1], delimiter=",")
    gamma = float(sys.argv[2]) if len(sys.argv) > 2 else 0.5
    c = float(sys.argv[3]) if len(sys.argv) > 3 else 1.0
    x, y = data[:, :2], data[:, 2].astype(int)
    lo, hi = x.min(0), x.max(0)
    for name, pts in (("raw", x), ("scaled", (x - lo) / (hi - lo))):
        obj, b, nsv, acc = solve(pts, y, gamma, c)
        print(f"{name}: objective={obj:.10f} bias={b:.10f} nsv={nsv} "
              f"accuracy={acc:.4f}")


if __name__ == "__main__":
    main()
