"""Cluster, embedding and strip bundled for one group specification."""

from dataclasses import dataclass

import numpy as np

from .cluster import Cluster, build_cluster
from .embedding import Embedding, build_embedding
from .generator import GenerationConfig, generate
from .oracle import window_contains
from .strip import StripSpec, build_strip, contains_many, near_boundary


@dataclass(frozen=True)
class Pipeline:
    cluster: Cluster
    embedding: Embedding
    strip: StripSpec

    @classmethod
    def from_spec(cls, spec):
        c = build_cluster(spec)
        e = build_embedding(c)
        return cls(c, e, build_strip(c, e.kappa))

    def generate(self, radius, slack=None, max_points=1_000_000):
        cfg = GenerationConfig(radius, slack, max_points)
        return generate(self.cluster, self.embedding, self.strip, cfg)


def oracle_agreement(p, xs, eps=1e-9):
    """Compare strip membership with the elimination oracle on integer points.

    Returns (disagreements, disagreements not explained by a boundary point).
    """
    xs = np.asarray(xs, dtype=np.int64)
    fast = contains_many(p.strip, xs)
    slow = np.array([window_contains(p.embedding, x, eps) for x in xs.astype(float)], dtype=bool)
    diff = fast != slow
    unexplained = diff & ~near_boundary(p.strip, xs.astype(float))
    return int(diff.sum()), int(unexplained.sum())
