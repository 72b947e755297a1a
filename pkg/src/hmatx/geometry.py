"""Point clouds, geometric cluster trees and admissibility-driven block trees.

This module is purely geometric: it turns an ordered cloud of 3D points
into a binary cluster hierarchy (bisecting bounding boxes along their
longest axis) and pairs clusters into the block partition that the
compression and solver layers consume. It knows nothing about kernels.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "PointCloud",
    "AABB",
    "ClusterNode",
    "ClusterTree",
    "AdmissibleLeaf",
    "DenseLeaf",
    "Subdivided",
    "BlockTree",
    "build_cluster_tree",
    "diam_box",
    "dist_box",
    "is_admissible",
    "build_block_tree",
    "sparsity_pattern",
    "make_geometry",
]


@dataclass(frozen=True)
class PointCloud:
    """Ordered 3D points with optional unit normals.

    Attributes
    ----------
    points:
        (N, 3) float array, finite coordinates.
    normals:
        Optional (N, 3) float array of unit vectors aligned with points.
    d:
        Per-point unknown dimension used downstream (1 for scalar
        kernels, 3 for elastodynamic ones).
    """

    points: np.ndarray
    normals: np.ndarray | None = None
    d: int = 1

    def __post_init__(self):
        pts = np.ascontiguousarray(self.points, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[1] != 3:
            raise ValueError("points must have shape (N, 3)")
        if pts.shape[0] == 0:
            raise ValueError("empty input")
        if not np.isfinite(pts).all():
            raise ValueError("points must be finite")
        object.__setattr__(self, "points", pts)
        if self.normals is not None:
            nrm = np.ascontiguousarray(self.normals, dtype=np.float64)
            if nrm.shape != pts.shape:
                raise ValueError("normals must match points in shape")
            lengths = np.linalg.norm(nrm, axis=1)
            if np.any(np.abs(lengths - 1.0) > 1e-12):
                raise ValueError("normals must have unit length (1e-12)")
            object.__setattr__(self, "normals", nrm)
        if self.d not in (1, 3):
            raise ValueError("d must be 1 or 3")

    @property
    def size(self):
        return self.points.shape[0]


@dataclass(frozen=True)
class AABB:
    """Axis-aligned bounding box given by per-axis minima and maxima."""

    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        lo = np.asarray(self.lo, dtype=np.float64).reshape(3)
        hi = np.asarray(self.hi, dtype=np.float64).reshape(3)
        if np.any(lo > hi):
            raise ValueError("AABB requires lo <= hi per axis")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)


def diam_box(b):
    """Diameter of a bounding box: Euclidean length of its diagonal."""
    return float(np.linalg.norm(b.hi - b.lo))


def dist_box(a, b):
    """Distance between the closest faces of two bounding boxes.

    Zero when the boxes overlap in every axis.
    """
    gap_ab = np.maximum(a.lo - b.hi, 0.0)
    gap_ba = np.maximum(b.lo - a.hi, 0.0)
    return float(np.sqrt(np.sum(gap_ab**2) + np.sum(gap_ba**2)))


def is_admissible(a, b, eta):
    """Bounding-box admissibility: min(diam(a), diam(b)) < eta * dist(a, b)."""
    if eta <= 0:
        raise ValueError("eta must be positive")
    return min(diam_box(a), diam_box(b)) < eta * dist_box(a, b)


@dataclass
class ClusterNode:
    """Node of the binary cluster tree over a contiguous tree-order range."""

    start: int
    stop: int
    box: AABB
    level: int
    children: tuple["ClusterNode", "ClusterNode"] | None = None

    @property
    def size(self):
        return self.stop - self.start

    @property
    def is_leaf(self):
        return self.children is None


@dataclass
class ClusterTree:
    """Binary index-cluster hierarchy with its tree-to-original permutation.

    ``permutation[k]`` is the original point index stored at tree
    position ``k``; every node owns the contiguous tree-order range
    ``[start, stop)``.
    """

    cloud: PointCloud
    root: ClusterNode
    permutation: np.ndarray
    n_leaf: int
    points_tree: np.ndarray = field(init=False)

    def __post_init__(self):
        self.points_tree = self.cloud.points[self.permutation]

    @property
    def size(self):
        return self.cloud.size

    @property
    def depth(self):
        """Number of levels, root counted as one."""

        def walk(node):
            if node.is_leaf:
                return 1
            return 1 + max(walk(c) for c in node.children)

        return walk(self.root)

    def nodes(self):
        """All nodes in depth-first order."""
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            if not node.is_leaf:
                stack.extend(node.children)


def _tight_box(points):
    return AABB(points.min(axis=0), points.max(axis=0))


def build_cluster_tree(cloud, n_leaf):
    """Build a geometric binary cluster tree by midpoint bisection.

    Each node's tight bounding box is split at the midpoint of its
    longest axis; points exactly on the splitting plane go to the lower
    half. A midpoint split that would empty one side falls back to a
    median split on the same axis, which guarantees progress on
    degenerate clouds. Recursion stops at ``n_leaf`` points.
    """
    if n_leaf < 1:
        raise ValueError("n_leaf must be >= 1")
    pts = cloud.points
    n = pts.shape[0]
    perm = np.arange(n)

    def build(start, stop, level):
        idx = perm[start:stop]
        box = _tight_box(pts[idx])
        node = ClusterNode(start, stop, box, level)
        if stop - start <= n_leaf:
            return node
        axis = int(np.argmax(box.hi - box.lo))
        coords = pts[idx, axis]
        mid = 0.5 * (box.lo[axis] + box.hi[axis])
        lower = coords <= mid
        if lower.all() or not lower.any():
            # All points landed on one side (clustered coordinates):
            # median split by order statistics keeps both halves non-empty.
            order = np.argsort(coords, kind="stable")
            half = (stop - start) // 2
            lower = np.zeros(stop - start, dtype=bool)
            lower[order[:half]] = True
        perm[start:stop] = np.concatenate([idx[lower], idx[~lower]])
        cut = start + int(lower.sum())
        node.children = (build(start, cut, level + 1), build(cut, stop, level + 1))
        return node

    root = build(0, n, 0)
    return ClusterTree(cloud=cloud, root=root, permutation=perm, n_leaf=n_leaf)


@dataclass
class AdmissibleLeaf:
    """Block leaf satisfying the admissibility condition; stored low-rank."""

    row: ClusterNode
    col: ClusterNode


@dataclass
class DenseLeaf:
    """Non-admissible block at the leaf level; stored dense."""

    row: ClusterNode
    col: ClusterNode


@dataclass
class Subdivided:
    """Inner block node holding an up-to-2x2 grid of children.

    When one cluster is a leaf and the other is not, the leaf side is
    paired against both children of the other, giving a 1x2 or 2x1 grid.
    """

    row: ClusterNode
    col: ClusterNode
    children: list


@dataclass
class BlockTree:
    """Admissible/dense/subdivided partition of the index product."""

    rows: ClusterTree
    cols: ClusterTree
    root: object
    eta: float

    def leaves(self):
        stack = [self.root]
        while stack:
            node = stack.pop()
            if isinstance(node, Subdivided):
                stack.extend(node.children)
            else:
                yield node

    def admissible_leaves(self):
        return (b for b in self.leaves() if isinstance(b, AdmissibleLeaf))

    def dense_leaves(self):
        return (b for b in self.leaves() if isinstance(b, DenseLeaf))


def build_block_tree(rows, cols, eta):
    """Recursive block partition of rows x cols driven by admissibility.

    A pair is an :class:`AdmissibleLeaf` as soon as the admissibility
    condition holds; two leaf clusters form a :class:`DenseLeaf`;
    anything else is subdivided against available children.
    """

    def build(r, c):
        if is_admissible(r.box, c.box, eta):
            return AdmissibleLeaf(r, c)
        if r.is_leaf and c.is_leaf:
            return DenseLeaf(r, c)
        rkids = r.children if not r.is_leaf else (r,)
        ckids = c.children if not c.is_leaf else (c,)
        children = [build(rk, ck) for rk in rkids for ck in ckids]
        return Subdivided(r, c, children)

    return BlockTree(rows=rows, cols=cols, root=build(rows.root, cols.root), eta=eta)


def sparsity_pattern(bt):
    """Maximum number of partition blocks any single cluster takes part in."""
    row_counts = {}
    col_counts = {}
    for leaf in bt.leaves():
        rkey = id(leaf.row)
        ckey = id(leaf.col)
        row_counts[rkey] = row_counts.get(rkey, 0) + 1
        col_counts[ckey] = col_counts.get(ckey, 0) + 1
    return max(max(row_counts.values()), max(col_counts.values()))


def make_geometry(kind, n, size=1.0, d=1):
    """Construct a standard test cloud.

    Parameters
    ----------
    kind:
        ``"plate"`` -- uniform n x n grid on [-a, a]^2 x {0} with normals
        (0, 0, 1), where ``a = size`` and ``n`` is the per-axis count.
        ``"sphere"`` -- ``n`` Fibonacci-spiral points on the radius-``size``
        sphere with outward radial normals.
    """
    if size <= 0:
        raise ValueError("size must be positive")
    if n < 1:
        raise ValueError("count must be positive")
    if kind == "plate":
        a = float(size)
        coords = np.linspace(-a, a, n)
        x1, x2 = np.meshgrid(coords, coords, indexing="ij")
        pts = np.column_stack([x1.ravel(), x2.ravel(), np.zeros(n * n)])
        normals = np.tile([0.0, 0.0, 1.0], (n * n, 1))
        return PointCloud(points=pts, normals=normals, d=d)
    if kind == "sphere":
        r = float(size)
        if n == 1:
            pts = np.array([[0.0, 0.0, r]])
        else:
            i = np.arange(n)
            z = 1.0 - 2.0 * (i + 0.5) / n
            phi = i * np.pi * (3.0 - np.sqrt(5.0))
            rho = np.sqrt(1.0 - z**2)
            pts = r * np.column_stack([rho * np.cos(phi), rho * np.sin(phi), z])
        normals = pts / np.linalg.norm(pts, axis=1)[:, None]
        return PointCloud(points=pts, normals=normals, d=d)
    raise ValueError(f"unknown geometry kind: {kind!r}")
