"""
Strip membership through (n+1)x(n+1) determinants.

Every (n+1)-subset of superspace coordinates labels one family of parallel
faces of the unit hypercube.  Expanding the determinant

    | x_i1   ...  x_i(n+1)  |
    | v_i1   ...  v_i(n+1)  |     (v's written as columns)

along its first row gives a linear functional sum_j c_j x_ij whose maximum
over the hypercube is d = 1/2 sum_j |c_j|.  A point lies in the strip iff
|sum_j c_j x_ij| <= d for every subset.

Coordinates are 0-based throughout: tuple (0, 1, 2) is the subset {e_1, e_2, e_3}.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

MEMBERSHIP_RTOL = 1e-9
DEGENERATE_RTOL = 1e-9
CHUNK = 4096


class EmptyStripError(ValueError):
    pass


def index_family(k, n):
    """All strictly increasing (n+1)-tuples of range(k), lexicographic."""
    if n not in (2, 3):
        raise ValueError(f"physical dimension must be 2 or 3, got {n}")
    if k <= n:
        raise EmptyStripError(f"k = {k} leaves no (n+1)-subsets for n = {n}")
    return list(itertools.combinations(range(k), n + 1))


def _cofactors(reps, idx):
    """Signed n x n minors for a batch of tuples; ``idx`` has shape (T, n+1)."""
    n = reps.shape[1]
    cols = reps[idx]  # (T, n+1, n)
    out = np.empty(idx.shape, dtype=float)
    for j in range(n + 1):
        minor = np.delete(cols, j, axis=1)
        out[:, j] = (-1) ** j * np.linalg.det(minor)
    return out


def facet_functional(cluster, t):
    """Coefficients c_1..c_(n+1) with <x, y_t> = sum_j c_j x[t[j]]."""
    t = tuple(int(i) for i in t)
    if len(t) != cluster.n + 1 or any(b <= a for a, b in zip(t, t[1:])):
        raise ValueError(f"{t} is not a strictly increasing {cluster.n + 1}-tuple")
    if t[0] < 0 or t[-1] >= cluster.k:
        raise IndexError(f"{t} out of range for k = {cluster.k}")
    return _cofactors(cluster.reps, np.array([t]))[0]


def halfwidth(cofactors):
    return 0.5 * float(np.sum(np.abs(cofactors)))


@dataclass(frozen=True)
class FacetTuple:
    indices: tuple
    cofactors: np.ndarray
    halfwidth: float


@dataclass(frozen=True, eq=False)
class StripSpec:
    """Precomputed facet data for one cluster, tuple-major.

    ``idx`` (T, n+1) and ``cof`` (T, n+1) hold the tuples and their cofactors;
    ``functionals`` is the same data scattered into a dense (T, k) matrix so a
    batch of points is checked by one matrix product.  ``bound`` is the
    halfwidth widened by the membership tolerance.
    """

    k: int
    n: int
    idx: np.ndarray
    cof: np.ndarray
    d: np.ndarray
    bound: np.ndarray
    degenerate: np.ndarray
    functionals: np.ndarray

    @property
    def count(self):
        return self.idx.shape[0]

    def tuples(self):
        for t, c, d in zip(self.idx, self.cof, self.d):
            yield FacetTuple(tuple(int(i) for i in t), c, float(d))

    def summary(self):
        live = self.d[~self.degenerate]
        return {
            "tuples": self.count,
            "d_min": float(live.min()) if live.size else 0.0,
            "d_max": float(live.max()) if live.size else 0.0,
            "degenerate": int(self.degenerate.sum()),
        }


def build_strip(cluster, kappa=None):
    """Cofactors, halfwidths and tolerances for every tuple of ``cluster``."""
    k, n = cluster.k, cluster.n
    idx = np.array(index_family(k, n), dtype=np.intp)
    cof = _cofactors(cluster.reps, idx)
    d = 0.5 * np.abs(cof).sum(axis=1)
    if kappa is None:
        kappa = math.sqrt(float(np.sum(cluster.reps**2)) / n)
    eps_abs = DEGENERATE_RTOL * kappa**n
    degenerate = d <= eps_abs
    bound = np.where(degenerate, eps_abs, d * (1.0 + MEMBERSHIP_RTOL))

    functionals = np.zeros((idx.shape[0], k))
    rows = np.arange(idx.shape[0])
    for j in range(n + 1):
        functionals[rows, idx[:, j]] = cof[:, j]

    for a in (idx, cof, d, bound, degenerate, functionals):
        a.setflags(write=False)
    return StripSpec(k, n, idx, cof, d, bound, degenerate, functionals)


def functional_values(s, x):
    """All T facet functionals at ``x``; ``x`` may be a (m, k) stack."""
    return np.asarray(x, dtype=float) @ s.functionals.T


def strip_contains(s, x):
    """Closed-strip membership of a single lattice point, with early exit."""
    x = np.asarray(x, dtype=float)
    if x.shape != (s.k,):
        raise ValueError(f"expected a {s.k}-vector")
    for lo in range(0, s.count, CHUNK):
        f = s.functionals[lo : lo + CHUNK] @ x
        if np.any(np.abs(f) > s.bound[lo : lo + CHUNK]):
            return False
    return True


def contains_many(s, xs, chunk=2048):
    """Membership of a (m, k) stack of points.

    Works through the tuples chunk by chunk and drops a point as soon as a
    chunk rejects it, the batched form of early exit.
    """
    xf = np.asarray(xs, dtype=float)
    alive = np.arange(len(xf))
    for lo in range(0, s.count, chunk):
        if not len(alive):
            break
        f = xf[alive] @ s.functionals[lo : lo + chunk].T
        alive = alive[np.all(np.abs(f) <= s.bound[lo : lo + chunk], axis=1)]
    ok = np.zeros(len(xf), dtype=bool)
    ok[alive] = True
    return ok


def within(s, f):
    """Membership from precomputed functional values (last axis = tuples)."""
    return np.all(np.abs(f) <= s.bound, axis=-1)


def step_values(s, f, p, sign):
    """Functional values at x + sign*e_p from those at x.

    Only tuples containing p change; their column of ``functionals`` is the
    nonzero update.
    """
    return f + sign * s.functionals[:, p]


def near_boundary(s, x):
    """True where some functional sits within the membership tolerance of its bound."""
    f = functional_values(s, x)
    gap = np.abs(np.abs(f) - s.d)
    tol = s.bound - s.d
    return np.any((gap <= tol) & ~s.degenerate, axis=-1)


def never_active(s, xs):
    """Mask of tuples that reject none of the points in ``xs``.

    Such tuples may be redundant for the window; they are reported only.
    """
    f = functional_values(s, xs)
    return ~np.any(np.abs(f) > s.bound, axis=0)
