"""Covering-cluster verification, occupation statistics and patch checks."""

from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .embedding import project_phys
from .generator import DEDUPE_RTOL, neighbors
from .strip import contains_many

COVER_RTOL = 1e-12


@dataclass(frozen=True)
class CoveringReport:
    """Per-point occupied cluster positions and occupation fractions.

    ``occupied[i]`` is a boolean mask over the 2k cluster positions
    (+v_1..+v_k, -v_1..-v_k) around point i.  ``interior`` marks the points
    far enough from the patch boundary to enter the histogram.
    Occupation here means the fraction of the 2k positions q + c that are
    themselves points of the set.
    """

    occupied: np.ndarray
    occupation: np.ndarray
    interior: np.ndarray
    histogram: tuple
    violations: int
    checked: int

    @property
    def median_occupation(self):
        occ = self.occupation[self.interior]
        return float(np.median(occ)) if occ.size else float("nan")

    def as_dict(self):
        return {
            "points": int(self.occupation.size),
            "interior_points": int(self.interior.sum()),
            "arithmetical_neighbours_checked": self.checked,
            "covering_violations": self.violations,
            "median_occupation": self.median_occupation,
            "mean_occupation": float(np.mean(self.occupation[self.interior]))
            if self.interior.any()
            else float("nan"),
        }


def covering_check(q, s, e, bins=10):
    """Check that every in-strip x +- e_i lands on Px +- v_i, and measure occupation."""
    k = e.k
    cluster_pts = np.vstack([e.w.T, -e.w.T])  # same order as Cluster.points()
    tol = COVER_RTOL * e.kappa
    steps = neighbors(np.zeros(k, dtype=np.int64))  # +e1, -e1, +e2, ...
    step_vecs = np.empty((2 * k, e.n))
    step_vecs[0::2] = e.w.T
    step_vecs[1::2] = -e.w.T

    nb = (q.sources[:, None, :] + steps[None, :, :]).reshape(-1, k)
    inside = contains_many(s, nb)
    got = project_phys(e, nb[inside].astype(float))
    want = (q.points[:, None, :] + step_vecs[None, :, :]).reshape(-1, e.n)[inside]
    err = np.linalg.norm(got - want, axis=1)
    violations = int(np.count_nonzero(err > tol))
    checked = int(inside.sum())

    n_pts = len(q)
    occupied = np.zeros((n_pts, 2 * k), dtype=bool)
    if n_pts:
        tree = cKDTree(q.points)
        eps = DEDUPE_RTOL * e.kappa
        targets = (q.points[:, None, :] + cluster_pts[None, :, :]).reshape(-1, e.n)
        dist, _ = tree.query(targets, distance_upper_bound=max(eps, 1e-300))
        occupied = np.isfinite(dist).reshape(n_pts, 2 * k)
    occupation = occupied.sum(axis=1) / (2.0 * k)

    diameter = 2.0 * float(np.max(np.linalg.norm(e.w.T, axis=1)))
    interior = np.linalg.norm(q.points, axis=1) <= q.config.radius - diameter
    hist = np.histogram(occupation[interior], bins=bins, range=(0.0, 1.0))
    return CoveringReport(
        occupied, occupation, interior, (hist[0], hist[1]), violations, checked
    )


def interior_limit(q):
    """Largest admissible r_test for symmetry_defect."""
    return q.config.radius - q.config.resolved_slack(q.cluster)


def symmetry_defect(q, g, r_test):
    """Max distance from g applied to the patch |p| <= r_test to the nearest point of q."""
    g = np.asarray(g, dtype=float)
    if r_test > interior_limit(q) + 1e-12:
        raise ValueError(
            f"r_test = {r_test} exceeds radius - slack = {interior_limit(q)}; patch would be clipped"
        )
    patch = q.points[np.linalg.norm(q.points, axis=1) <= r_test]
    if not len(patch):
        raise ValueError("empty patch")
    image = patch @ g.T
    dist, _ = cKDTree(q.points).query(image)
    return float(dist.max())


def min_pair_distance(q):
    pts = np.asarray(q.points if hasattr(q, "points") else q, dtype=float)
    if len(pts) < 2:
        raise ValueError("need at least two points")
    dist, _ = cKDTree(pts).query(pts, k=2)
    return float(dist[:, 1].min())
