"""
G-clusters: orbits of the dihedral groups D_2m and the icosahedral group Y.

A cluster is stored as its k antipodal representatives v_1..v_k; the full
point set is {+-v_1, ..., +-v_k}.
"""

import functools
import itertools
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

TAU = (1.0 + math.sqrt(5.0)) / 2.0
MAX_ORBIT = 10_000
DEDUPE_RTOL = 1e-9


class ClusterError(ValueError):
    """Base class for cluster construction failures."""


class InvalidGroupError(ClusterError):
    pass


class NonConvergenceError(ClusterError):
    pass


class AsymmetricClusterError(ClusterError):
    pass


class DuplicateShellWarning(UserWarning):
    pass


@dataclass(frozen=True)
class GroupSpec:
    """Group kind ('dihedral' or 'icosahedral'), dihedral m, and shell seeds."""

    kind: str
    shells: tuple
    m: int = 0

    def __post_init__(self):
        if self.kind not in ("dihedral", "icosahedral"):
            raise InvalidGroupError(f"unknown group kind {self.kind!r}")
        if self.kind == "dihedral" and self.m < 2:
            raise InvalidGroupError(f"dihedral group needs m >= 2, got {self.m}")
        shells = tuple(tuple(float(a) for a in s) for s in self.shells)
        dim = self.dim
        for s in shells:
            if len(s) != dim:
                raise InvalidGroupError(
                    f"{self.kind} shells must be {dim}-vectors, got {len(s)} components"
                )
            if not any(s):
                raise InvalidGroupError("shell seed must be nonzero")
        object.__setattr__(self, "shells", shells)

    @classmethod
    def dihedral(cls, m, shells):
        return cls("dihedral", tuple(shells), m)

    @classmethod
    def icosahedral(cls, shells):
        return cls("icosahedral", tuple(shells))

    @property
    def dim(self):
        return 2 if self.kind == "dihedral" else 3

    def generators(self):
        if self.kind == "dihedral":
            return dihedral_generators(self.m)
        return icosahedral_generators()

    def tolerance(self):
        """Absolute dedupe tolerance, relative to the largest shell radius."""
        return DEDUPE_RTOL * max(math.hypot(*s) for s in self.shells)


@dataclass(frozen=True)
class Cluster:
    """Antipodal representatives of an inversion-symmetric G-cluster.

    ``reps`` has shape (k, n); row j is v_j.
    """

    reps: np.ndarray
    spec: GroupSpec = field(compare=False)
    tol: float = field(compare=False)

    @property
    def n(self):
        return self.reps.shape[1]

    @property
    def k(self):
        return self.reps.shape[0]

    def points(self):
        """The full cluster {+v_j} followed by {-v_j}, shape (2k, n)."""
        return np.vstack([self.reps, -self.reps])

    @property
    def max_radius(self):
        return float(np.max(np.linalg.norm(self.reps, axis=1)))


def dihedral_generators(m):
    """Rotation by pi/m and the reflection (a, b) -> (a, -b)."""
    if not isinstance(m, (int, np.integer)) or m < 2:
        raise InvalidGroupError(f"dihedral group needs integer m >= 2, got {m!r}")
    c, s = math.cos(math.pi / m), math.sin(math.pi / m)
    a = np.array([[c, -s], [s, c]])
    b = np.array([[1.0, 0.0], [0.0, -1.0]])
    return a, b


def icosahedral_generators():
    """The two rotations generating Y, with a^5 = b^2 = (ab)^3 = e."""
    t = TAU
    a = 0.5 * np.array(
        [
            [t - 1.0, -t, 1.0],
            [t, 1.0, t - 1.0],
            [-1.0, t - 1.0, t],
        ]
    )
    b = np.diag([-1.0, -1.0, 1.0])
    return a, b


def _snap(v, tol):
    v = np.where(np.abs(v) <= tol, 0.0, v)
    return v + 0.0  # drops negative zeros


class _PointIndex:
    """Tolerance-aware lookup of points on a grid of cell size ``tol``."""

    def __init__(self, tol):
        self.tol = tol
        self.cells = {}
        self.points = []

    def _key(self, v):
        return tuple(np.floor(v / self.tol).astype(np.int64))

    def find(self, v):
        base = self._key(v)
        for off in itertools.product((-1, 0, 1), repeat=len(base)):
            for i in self.cells.get(tuple(b + o for b, o in zip(base, off)), ()):
                if np.max(np.abs(self.points[i] - v)) <= self.tol:
                    return i
        return -1

    def add(self, v):
        self.cells.setdefault(self._key(v), []).append(len(self.points))
        self.points.append(v)
        return len(self.points) - 1


def orbit(spec, seed, tol=None):
    """Closure of ``seed`` under the generators of ``spec``, as an (N, n) array.

    Points are returned in discovery order (breadth first).
    """
    seed = np.asarray(seed, dtype=float)
    if seed.shape != (spec.dim,):
        raise InvalidGroupError(f"seed must be a {spec.dim}-vector")
    if not np.any(seed):
        raise InvalidGroupError("seed must be nonzero")
    if tol is None:
        tol = DEDUPE_RTOL * float(np.linalg.norm(seed))
    gens = spec.generators()

    index = _PointIndex(tol)
    index.add(_snap(seed, tol))
    frontier = list(index.points)
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = _snap(g @ p, tol)
                if index.find(q) < 0:
                    index.add(q)
                    nxt.append(q)
                    if len(index.points) > MAX_ORBIT:
                        raise NonConvergenceError(
                            f"orbit exceeded {MAX_ORBIT} points; generators or tolerance are bad"
                        )
        frontier = nxt
    return np.array(index.points)


def _lex_cmp(tol):
    def cmp(u, v):
        for a, b in zip(u, v):
            if abs(a - b) > tol:
                return -1 if a < b else 1
        return 0

    return cmp


def build_cluster(spec):
    """Union the shell orbits of ``spec`` and collapse antipodal pairs."""
    if not spec.shells:
        raise InvalidGroupError("a cluster needs at least one shell")
    tol = spec.tolerance()

    index = _PointIndex(tol)
    for seed in spec.shells:
        orb = orbit(spec, seed, tol)
        fresh = [p for p in orb if index.find(p) < 0]
        if not fresh:
            warnings.warn(
                f"shell {seed} reproduces an orbit already present; kept once",
                DuplicateShellWarning,
                stacklevel=2,
            )
        elif len(fresh) != len(orb):
            # orbits are either equal or disjoint
            raise NonConvergenceError(f"shell {seed} partially overlaps another orbit")
        for p in fresh:
            index.add(p)
    union = index.points

    cmp = _lex_cmp(tol)
    reps = []
    used = [False] * len(union)
    for i, p in enumerate(union):
        if used[i]:
            continue
        j = index.find(_snap(-p, tol))
        if j < 0:
            raise AsymmetricClusterError(f"point {p} has no antipode in the cluster")
        used[i] = used[j] = True
        reps.append(p if cmp(p, union[j]) > 0 else union[j])

    reps.sort(key=functools.cmp_to_key(cmp))
    return Cluster(np.array(reps), spec, tol)
