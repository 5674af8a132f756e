"""Physical space E inside the superspace R^k and its projectors."""

from dataclasses import dataclass

import numpy as np

ORTH_RTOL = 1e-9


class NotAGClusterError(ValueError):
    """The rows w_i are not mutually orthogonal with a common norm."""


@dataclass(frozen=True)
class Embedding:
    """Rows w_1..w_n of shape (n, k) and their common norm kappa."""

    w: np.ndarray
    kappa: float

    @property
    def n(self):
        return self.w.shape[0]

    @property
    def k(self):
        return self.w.shape[1]

    @property
    def kappa2(self):
        return self.kappa * self.kappa


def build_embedding(cluster):
    w = np.ascontiguousarray(cluster.reps.T, dtype=float)
    w.setflags(write=False)
    gram = w @ w.T
    kappa2 = float(gram[0, 0])
    if kappa2 <= 0.0:
        raise NotAGClusterError("first row w_1 vanishes")
    tol = ORTH_RTOL * kappa2
    dev = np.abs(gram - kappa2 * np.eye(w.shape[0]))
    if np.max(dev) > tol:
        raise NotAGClusterError(
            f"Gram matrix of w deviates from kappa^2 * I by {np.max(dev):.3g} "
            f"(kappa^2 = {kappa2:.6g}); the points are not a union of full orbits"
        )
    return Embedding(w, float(np.sqrt(kappa2)))


def _check(e, x):
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != e.k:
        raise ValueError(f"expected a {e.k}-vector, got length {x.shape[-1]}")
    return x


def project_phys(e, x):
    """(<x,w_1>, ..., <x,w_n>); also accepts a stack of vectors of shape (m, k)."""
    return _check(e, x) @ e.w.T


def project_par(e, x):
    """Orthogonal projection onto E, expressed in superspace coordinates."""
    return project_phys(e, x) @ e.w / e.kappa2


def project_perp(e, x):
    x = _check(e, x)
    return x - project_par(e, x)
