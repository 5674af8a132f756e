"""
Slow, independent checks for the determinant path in ``strip``.

``window_contains`` decides whether x - sum_i a_i w_i lies in the unit
hypercube for some real a by Fourier-Motzkin elimination over a.  The
enumeration helpers evaluate full (n+1)x(n+1) determinants directly.
None of this shares code with ``strip``.
"""

import itertools

import numpy as np

DEFAULT_EPS = 1e-9
ROUND_TOL = 1e-12


def _eliminate_last(A, b):
    """Project {a : A a <= b} along its last coordinate."""
    last = A[:, -1]
    pos, neg, zero = last > 0, last < 0, last == 0
    # rows scaled so the last coefficient is +1 (upper) or -1 (lower)
    Ap, bp = A[pos] / last[pos, None], b[pos] / last[pos]
    An, bn = A[neg] / -last[neg, None], b[neg] / -last[neg]
    pairs_b = (bp[:, None] + bn[None, :]).reshape(-1)
    pairs_A = (Ap[:, None, :-1] + An[None, :, :-1]).reshape(pairs_b.size, A.shape[1] - 1)
    A2 = np.vstack([A[zero, :-1], pairs_A])
    b2 = np.concatenate([b[zero], pairs_b])
    return A2, b2


def feasibility_system(e, x, eps=DEFAULT_EPS):
    """Rows A, b of  -1/2 - eps <= x_j - <a, v_j> <= 1/2 + eps  as  A a <= b."""
    x = np.asarray(x, dtype=float)
    V = e.w.T  # (k, n), row j is v_j
    half = 0.5 + eps
    A = np.vstack([-V, V])
    b = np.concatenate([half - x, half + x])
    return A, b


def window_contains(e, x, eps=DEFAULT_EPS):
    """True iff the perpendicular projection of x lies in the window."""
    A, b = feasibility_system(e, x, eps)
    while A.shape[1] > 1:
        A, b = _eliminate_last(A, b)
    # one unknown left: intersect its interval bounds directly
    a = A[:, 0]
    if np.any(b[a == 0] < -ROUND_TOL):
        return False
    upper = b[a > 0] / a[a > 0]
    lower = b[a < 0] / a[a < 0]
    if not upper.size or not lower.size:
        return True
    return bool(lower.max() <= upper.min() + ROUND_TOL)


def functional_by_determinant(cluster, t, x):
    """Determinant with first row x[t] over the columns v_t, evaluated directly."""
    t = list(t)
    m = np.vstack([np.asarray(x, dtype=float)[t], cluster.reps[t].T])
    return float(np.linalg.det(m))


def halfwidth_enumerated(cluster, t):
    """Max of the first-row determinant over all 2^(n+1) corner sign choices."""
    t = list(t)
    V = cluster.reps[t].T
    best = -np.inf
    for signs in itertools.product((-0.5, 0.5), repeat=len(t)):
        m = np.vstack([np.array(signs), V])
        best = max(best, float(np.linalg.det(m)))
    return best
