"""Objective functions: total weight and the cluster concentration cost.

Both objectives are minimized.  Total weight is the plain sum of selected
edge weights.  The concentration cost penalizes a right node whose selected
weight piles up inside few clusters: for each right node and each cluster,
square the summed weight of the selected edges arriving from that cluster,
then add everything up.  Spreading the same total weight across more
clusters always lowers this cost, so minimizing it pushes solutions toward
cluster-diverse neighborhoods.

The cost is a quadratic form: with x the 0/1 edge-selection vector there is
a symmetric matrix B, block-diagonal per right node, with
B[(i,j),(i',j)] = w(i,j) * w(i',j) whenever i and i' share a cluster, and
x^T B x equals the concentration cost.  BlockMatrix materializes B for
small instances as an independent cross-check and for inspection; solvers
never build it.

ClusterSums is the incremental form used inside solvers: constant-time
marginal gains and updates, with periodic recomputation to shed float
drift on very long runs.
"""

from __future__ import annotations

import math
from collections import defaultdict
from typing import Iterable

import numpy as np

from .errors import InternalError, SizeCapError
from .instance import Instance, Matching

# Mutation count between automatic from-scratch recomputations.
RESYNC_INTERVAL = 1 << 16

# Default cap on dense quadratic-form entries (about 80 MB of float64).
BLOCK_MATRIX_CAP = 10 ** 7


def total_weight(inst: Instance, match: Matching) -> float:
    """Sum of selected edge weights, compensated summation."""
    w = inst.weights
    return math.fsum(w[i, j] for i, j in match)


def diversity_cost(inst: Instance, match: Matching) -> float:
    """Cluster concentration cost of a matching, computed from scratch.

    Groups selected edges by (right node, cluster of left node), sums each
    group with fsum, squares, and fsums the squares.  This is the reference
    evaluation; solvers keep the same number incrementally.
    """
    w = inst.weights
    clusters = inst.clusters
    groups: dict[tuple[int, int], list[float]] = defaultdict(list)
    for i, j in match:
        groups[(j, int(clusters[i]))].append(float(w[i, j]))
    return math.fsum(math.fsum(g) ** 2 for g in groups.values())


class ClusterSums:
    """Incremental tracker of per-(right node, cluster) selected weight.

    Maintains sums[j][c] and the concentration cost under single-edge adds
    and removes.  gain() prices an add without applying it; the same
    number is what a solver should add to its objective when it commits
    the edge.  Every RESYNC_INTERVAL mutations the sums and cost are
    recomputed from the tracked edge set with compensated summation, so
    drift cannot accumulate over long searches.

    Double-adding an edge, or removing one that is not selected, raises
    InternalError: callers own dedup and this class enforces it.
    """

    __slots__ = ("_inst", "_sums", "_cost", "_edges", "_mutations")

    def __init__(self, inst: Instance, edges: Iterable[tuple[int, int]] = ()):
        self._inst = inst
        self._sums = np.zeros((inst.n, inst.k), dtype=np.float64)
        self._cost = 0.0
        self._edges: set[tuple[int, int]] = set()
        self._mutations = 0
        for i, j in edges:
            self.add(i, j)

    @property
    def cost(self) -> float:
        return self._cost

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset(self._edges)

    def cluster_weight(self, j: int, c: int) -> float:
        return float(self._sums[j, c])

    def gain(self, i: int, j: int) -> float:
        """Cost increase if edge (i, j) were added right now."""
        w = float(self._inst.weights[i, j])
        c = int(self._inst.clusters[i])
        return w * w + 2.0 * w * float(self._sums[j, c])

    def add(self, i: int, j: int) -> float:
        """Apply an add; returns the cost increase."""
        if (i, j) in self._edges:
            raise InternalError(f"edge ({i}, {j}) added twice")
        delta = self.gain(i, j)
        w = float(self._inst.weights[i, j])
        c = int(self._inst.clusters[i])
        self._sums[j, c] += w
        self._cost += delta
        self._edges.add((i, j))
        self._bump()
        return delta

    def remove(self, i: int, j: int) -> float:
        """Apply a remove; returns the cost decrease."""
        if (i, j) not in self._edges:
            raise InternalError(f"edge ({i}, {j}) removed but not selected")
        w = float(self._inst.weights[i, j])
        c = int(self._inst.clusters[i])
        self._sums[j, c] -= w
        delta = w * w + 2.0 * w * float(self._sums[j, c])
        self._cost -= delta
        self._edges.discard((i, j))
        self._bump()
        return delta

    def _bump(self) -> None:
        self._mutations += 1
        if self._mutations >= RESYNC_INTERVAL:
            self.resync()

    def resync(self) -> None:
        """Recompute sums and cost exactly from the tracked edges."""
        inst = self._inst
        groups: dict[tuple[int, int], list[float]] = defaultdict(list)
        for i, j in self._edges:
            groups[(j, int(inst.clusters[i]))].append(float(inst.weights[i, j]))
        self._sums.fill(0.0)
        for (j, c), vals in groups.items():
            self._sums[j, c] = math.fsum(vals)
        self._cost = math.fsum(math.fsum(g) ** 2 for g in groups.values())
        self._mutations = 0


class BlockMatrix:
    """Dense symmetric matrix B with x^T B x = concentration cost.

    Edge (i, j) maps to index i * n + j.  B is block-diagonal when rows
    and columns are grouped by right node; inside right node j's block,
    the (i, i') entry is w(i, j) * w(i', j) if i and i' share a cluster
    and 0 otherwise.  Intended for inspection and cross-checks on small
    instances; construction refuses above the entry cap rather than
    silently allocating gigabytes.
    """

    __slots__ = ("matrix", "_n")

    def __init__(self, inst: Instance, cap: int = BLOCK_MATRIX_CAP):
        m, n = inst.m, inst.n
        dim = m * n
        if dim * dim > cap:
            raise SizeCapError(
                f"quadratic form needs {dim * dim} entries, cap is {cap}; "
                "use diversity_cost or ClusterSums instead")
        same = inst.clusters[:, None] == inst.clusters[None, :]
        B = np.zeros((dim, dim), dtype=np.float64)
        w = inst.weights
        for j in range(n):
            idx = np.arange(m) * n + j
            block = np.where(same, np.outer(w[:, j], w[:, j]), 0.0)
            B[np.ix_(idx, idx)] = block
        self.matrix = B
        self._n = n

    def index(self, i: int, j: int) -> int:
        return i * self._n + j

    def cost(self, match: Matching) -> float:
        """Evaluate x^T B x for the matching's selection vector."""
        x = np.zeros(self.matrix.shape[0], dtype=np.float64)
        for i, j in match:
            x[self.index(i, j)] = 1.0
        return float(x @ self.matrix @ x)

    def write_csv(self, fh) -> None:
        """Dump the full matrix, one row per line, repr-precision floats."""
        for row in self.matrix:
            fh.write(",".join(repr(float(v)) for v in row))
            fh.write("\n")


def quadratic_form_cost(inst: Instance, match: Matching,
                        cap: int = BLOCK_MATRIX_CAP) -> float:
    """Concentration cost via the explicit matrix; cross-check path."""
    return BlockMatrix(inst, cap=cap).cost(match)
