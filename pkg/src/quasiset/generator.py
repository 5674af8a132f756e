"""Breadth-first enumeration of strip lattice points and their projection."""

import logging
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .embedding import project_phys
from .strip import contains_many

log = logging.getLogger(__name__)

DEDUPE_RTOL = 1e-9


class TruncationError(RuntimeError):
    """Raised when more than ``max_points`` lattice points were accepted."""

    def __init__(self, message, partial):
        super().__init__(message)
        self.partial = partial


class EmptyStripWarning(UserWarning):
    pass


@dataclass(frozen=True)
class GenerationConfig:
    radius: float
    slack: float | None = None
    max_points: int = 1_000_000

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError(f"radius must be positive, got {self.radius}")
        if self.slack is not None and self.slack < 0:
            raise ValueError(f"slack must be >= 0, got {self.slack}")
        if self.max_points < 1:
            raise ValueError("max_points must be >= 1")

    def resolved_slack(self, cluster):
        if self.slack is None:
            return 2.0 * cluster.max_radius
        return float(self.slack)


@dataclass(frozen=True, eq=False)
class QuasiSet:
    """Projected points (N, n) and their source lattice vectors (N, k).

    Rows are sorted lexicographically by source vector.
    """

    points: np.ndarray
    sources: np.ndarray
    cluster: object = field(repr=False)
    config: GenerationConfig
    collisions: int = 0
    visited: int = 0

    def __len__(self):
        return self.points.shape[0]


def neighbors(x):
    """x + e_1, x - e_1, x + e_2, ... as a (2k, k) integer array."""
    x = np.asarray(x, dtype=np.int64)
    k = x.shape[0]
    steps = np.zeros((2 * k, k), dtype=np.int64)
    steps[0::2][np.arange(k), np.arange(k)] = 1
    steps[1::2][np.arange(k), np.arange(k)] = -1
    return x + steps


def _lex_order(sources):
    return np.lexsort(sources.T[::-1])


def _finish(cluster, e, cfg, accepted, order_seen, visited):
    """Clip to the output radius, drop physical duplicates, sort by source."""
    if accepted:
        src = np.array(accepted, dtype=np.int64)
    else:
        src = np.zeros((0, e.k), dtype=np.int64)
    pts = project_phys(e, src.astype(float)) if len(src) else np.zeros((0, e.n))
    keep = np.linalg.norm(pts, axis=1) <= cfg.radius
    src, pts, seen_rank = src[keep], pts[keep], np.asarray(order_seen, dtype=np.int64)[keep]

    collisions = 0
    if len(pts) > 1:
        tree = cKDTree(pts)
        pairs = tree.query_pairs(DEDUPE_RTOL * e.kappa, output_type="ndarray")
        if len(pairs):
            drop = set()
            for a, b in pairs:
                # first visited wins
                drop.add(int(b) if seen_rank[a] < seen_rank[b] else int(a))
            collisions = len(drop)
            log.info("%d lattice points collided in physical space", collisions)
            mask = np.ones(len(pts), dtype=bool)
            mask[list(drop)] = False
            src, pts = src[mask], pts[mask]

    order = _lex_order(src) if len(src) else np.zeros(0, dtype=np.intp)
    src, pts = src[order], pts[order]
    src.setflags(write=False)
    pts.setflags(write=False)
    return QuasiSet(pts, src, cluster, cfg, collisions, visited)


def generate(cluster, e, s, cfg):
    """Lattice points of the strip reachable from 0 by +-e_i steps, projected.

    A node is expanded when it is in the strip and its projection lies within
    ``radius + slack``; the result keeps the nodes within ``radius``.
    """
    k = e.k
    reach = cfg.radius + cfg.resolved_slack(cluster)
    steps = neighbors(np.zeros(k, dtype=np.int64))

    origin = np.zeros(k, dtype=np.int64)
    seen = {origin.tobytes()}
    accepted = [origin]
    frontier = origin[None, :]

    level = 0
    while len(frontier):
        level += 1
        cand = (frontier[:, None, :] + steps[None, :, :]).reshape(-1, k)
        fresh = []
        for i, row in enumerate(cand):
            key = row.tobytes()
            if key not in seen:
                seen.add(key)
                fresh.append(i)
        cand = cand[fresh]
        if len(cand):
            near = np.linalg.norm(project_phys(e, cand.astype(float)), axis=1) <= reach
            cand = cand[near]
            cand = cand[contains_many(s, cand)]
            # lexicographic merge keeps the frontier independent of discovery order
            cand = cand[_lex_order(cand)] if len(cand) else cand
        frontier = cand

        accepted.extend(frontier)
        if len(accepted) > cfg.max_points:
            kept = accepted[: cfg.max_points]
            partial = _finish(cluster, e, cfg, kept, range(len(kept)), len(seen))
            raise TruncationError(
                f"more than {cfg.max_points} lattice points accepted at BFS level {level}",
                partial,
            )
        if level == 1 and not len(frontier):
            warnings.warn(
                "no neighbour of the origin lies in the strip; the set is {0}",
                EmptyStripWarning,
                stacklevel=2,
            )

    log.debug("BFS finished after %d levels, %d accepted, %d seen", level, len(accepted), len(seen))
    return _finish(cluster, e, cfg, accepted, range(len(accepted)), len(seen))
