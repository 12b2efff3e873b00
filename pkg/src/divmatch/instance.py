"""Problem instances, matchings, and their JSON formats.

An instance is a complete bipartite graph: every (left, right) pair is a
candidate edge.  Left nodes carry a hard cluster label; both sides carry
per-node degree bounds.  Weights are costs: lower is better.

Instance file format (UTF-8 JSON):

    {"m": int, "n": int, "k": int,
     "weights": [[row of n reals] x m],
     "clusters": [int x m],
     "bounds": {"L_lo": int | [int x m], "L_hi": int | [int x m],
                "R_lo": int | [int x n], "R_hi": int | [int x n]}}

Scalar bounds broadcast to every node on their side; internally bounds are
always per-node.  Matching file format: {"edges": [[i, j], ...]} with the
pairs sorted by (i, j).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ._maxflow import MaxFlow
from .errors import InstanceError, MatchingError


def _as_bound_tuple(value, length: int, side: str, limit: int) -> tuple[int, ...]:
    """Broadcast a scalar or validate a per-node sequence of bounds."""
    if isinstance(value, (bool, float)):
        raise InstanceError(f"{side} bound must be an integer, got {value!r}")
    if isinstance(value, (int, np.integer)):
        seq = [int(value)] * length
    else:
        seq = [int(v) for v in value]
        if len(seq) != length:
            raise InstanceError(
                f"{side} bound has length {len(seq)}, expected {length}")
    for idx, v in enumerate(seq):
        if v < 0:
            raise InstanceError(f"{side}[{idx}] = {v} is negative")
        if v > limit:
            raise InstanceError(f"{side}[{idx}] = {v} exceeds the other side's size {limit}")
    return tuple(seq)


@dataclass(frozen=True)
class DegreeBounds:
    """Per-node degree intervals for both sides of the graph."""

    l_lo: tuple[int, ...]
    l_hi: tuple[int, ...]
    r_lo: tuple[int, ...]
    r_hi: tuple[int, ...]

    @staticmethod
    def broadcast(m: int, n: int, l_lo, l_hi, r_lo, r_hi) -> "DegreeBounds":
        """Build bounds from scalars or per-node sequences."""
        b = DegreeBounds(
            _as_bound_tuple(l_lo, m, "L_lo", n),
            _as_bound_tuple(l_hi, m, "L_hi", n),
            _as_bound_tuple(r_lo, n, "R_lo", m),
            _as_bound_tuple(r_hi, n, "R_hi", m),
        )
        b.validate()
        return b

    def validate(self) -> None:
        for i, (lo, hi) in enumerate(zip(self.l_lo, self.l_hi)):
            if lo > hi:
                raise InstanceError(f"L_lo[{i}] = {lo} > L_hi[{i}] = {hi}")
        for j, (lo, hi) in enumerate(zip(self.r_lo, self.r_hi)):
            if lo > hi:
                raise InstanceError(f"R_lo[{j}] = {lo} > R_hi[{j}] = {hi}")


class Instance:
    """Immutable weighted bipartite instance with clusters and bounds.

    Construction validates everything: weights must be finite and
    nonnegative, cluster ids must cover {0..k-1} with no gaps (an empty
    cluster is a rejected input, not a silent renumbering), and bounds
    must be per-node consistent.  Instances are safe to share across
    concurrent solver runs.
    """

    __slots__ = ("_weights", "_clusters", "_k", "_bounds")

    def __init__(self, weights, clusters: Sequence[int], k: int, bounds: DegreeBounds):
        w = np.array(weights, dtype=np.float64)
        if w.ndim != 2 or w.shape[0] < 1 or w.shape[1] < 1:
            raise InstanceError(f"weights must be a 2-D m x n table, got shape {w.shape}")
        if not np.all(np.isfinite(w)):
            bad = np.argwhere(~np.isfinite(w))[0]
            raise InstanceError(f"weights[{bad[0]}][{bad[1]}] is not finite")
        if np.any(w < 0):
            bad = np.argwhere(w < 0)[0]
            raise InstanceError(f"weights[{bad[0]}][{bad[1]}] is negative")
        m, n = w.shape

        if int(k) < 1:
            raise InstanceError(f"k must be positive, got {k}")
        c = np.array([int(x) for x in clusters], dtype=np.int64)
        if c.shape != (m,):
            raise InstanceError(f"clusters has length {c.shape[0]}, expected m = {m}")
        for i, ci in enumerate(c):
            if ci < 0 or ci >= k:
                raise InstanceError(f"clusters[{i}] = {ci} outside 0..{int(k) - 1}")
        used = np.unique(c)
        if len(used) != k:
            missing = sorted(set(range(int(k))) - set(int(x) for x in used))
            raise InstanceError(f"cluster ids {missing} unused; k = {k} must be tight")

        if not isinstance(bounds, DegreeBounds):
            raise InstanceError("bounds must be a DegreeBounds")
        if len(bounds.l_lo) != m or len(bounds.r_lo) != n:
            raise InstanceError("bounds sized for a different instance")
        bounds.validate()
        for i, hi in enumerate(bounds.l_hi):
            if hi > n:
                raise InstanceError(f"L_hi[{i}] = {hi} > n = {n}")
        for j, hi in enumerate(bounds.r_hi):
            if hi > m:
                raise InstanceError(f"R_hi[{j}] = {hi} > m = {m}")

        w.setflags(write=False)
        c.setflags(write=False)
        object.__setattr__(self, "_weights", w)
        object.__setattr__(self, "_clusters", c)
        object.__setattr__(self, "_k", int(k))
        object.__setattr__(self, "_bounds", bounds)

    def __setattr__(self, name, value):
        raise AttributeError("Instance is immutable")

    @property
    def m(self) -> int:
        return self._weights.shape[0]

    @property
    def n(self) -> int:
        return self._weights.shape[1]

    @property
    def k(self) -> int:
        return self._k

    @property
    def weights(self) -> np.ndarray:
        return self._weights

    @property
    def clusters(self) -> np.ndarray:
        return self._clusters

    @property
    def bounds(self) -> DegreeBounds:
        return self._bounds

    def __eq__(self, other) -> bool:
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self._k == other._k
            and self._bounds == other._bounds
            and np.array_equal(self._weights, other._weights)
            and np.array_equal(self._clusters, other._clusters)
        )

    def __hash__(self):
        return hash((self._weights.tobytes(), self._clusters.tobytes(),
                     self._k, self._bounds))

    def __repr__(self):
        return f"Instance(m={self.m}, n={self.n}, k={self.k})"


class Matching:
    """An immutable set of selected (left, right) edges.

    Edges are kept canonically sorted by (left, right).  Duplicates and
    negative indices are rejected; range checks against a concrete
    instance happen in check_matching.
    """

    __slots__ = ("_edges", "_set")

    def __init__(self, edges: Iterable[tuple[int, int]] = ()):
        pairs = []
        for e in edges:
            i, j = e
            i, j = int(i), int(j)
            if i < 0 or j < 0:
                raise MatchingError(f"edge ({i}, {j}) has a negative index")
            pairs.append((i, j))
        pairs.sort()
        for a, b in zip(pairs, pairs[1:]):
            if a == b:
                raise MatchingError(f"duplicate edge {a}")
        object.__setattr__(self, "_edges", tuple(pairs))
        object.__setattr__(self, "_set", frozenset(pairs))

    def __setattr__(self, name, value):
        raise AttributeError("Matching is immutable")

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    def __contains__(self, edge) -> bool:
        return tuple(edge) in self._set

    def __iter__(self):
        return iter(self._edges)

    def __len__(self) -> int:
        return len(self._edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matching):
            return NotImplemented
        return self._edges == other._edges

    def __hash__(self):
        return hash(self._edges)

    def __repr__(self):
        return f"Matching({list(self._edges)!r})"

    def degrees(self, m: int, n: int) -> tuple[np.ndarray, np.ndarray]:
        """Left and right degree vectors under this matching."""
        dl = np.zeros(m, dtype=np.int64)
        dr = np.zeros(n, dtype=np.int64)
        for i, j in self._edges:
            if i >= m or j >= n:
                raise MatchingError(f"edge ({i}, {j}) out of range for {m} x {n}")
            dl[i] += 1
            dr[j] += 1
        return dl, dr


# ---------------------------------------------------------------------------
# feasibility and validation
# ---------------------------------------------------------------------------

def is_feasible_bounds(inst: Instance) -> tuple[bool, str]:
    """Decide whether any matching can satisfy all degree bounds.

    Exact test: circulation with demands on the complete bipartite graph,
    reduced to plain max-flow.  Returns (feasible, diagnostic); on failure
    the diagnostic names the side (and node, when one is identifiable)
    whose lower bounds cannot be met.
    """
    m, n = inst.m, inst.n
    b = inst.bounds
    # node ids: 0 = super source, 1 = super sink, 2 = s, 3 = t,
    # lefts 4..4+m-1, rights 4+m..4+m+n-1
    SS, TT, S, T = 0, 1, 2, 3
    left0, right0 = 4, 4 + m
    g = MaxFlow(4 + m + n)

    need = 0
    left_req = []      # (arc id of SS->left i, i)
    right_req = None   # arc id of SS->t aggregate
    for i in range(m):
        lo, hi = b.l_lo[i], b.l_hi[i]
        g.add_edge(S, left0 + i, hi - lo)
        if lo > 0:
            left_req.append((g.add_edge(SS, left0 + i, lo), i))
            need += lo
    total_l_lo = sum(b.l_lo)
    if total_l_lo > 0:
        g.add_edge(S, TT, total_l_lo)
    for i in range(m):
        for j in range(n):
            g.add_edge(left0 + i, right0 + j, 1)
    right_node_req = []
    total_r_lo = sum(b.r_lo)
    for j in range(n):
        lo, hi = b.r_lo[j], b.r_hi[j]
        g.add_edge(right0 + j, T, hi - lo)
        if lo > 0:
            right_node_req.append((g.add_edge(right0 + j, TT, lo), j))
    if total_r_lo > 0:
        right_req = g.add_edge(SS, T, total_r_lo)
        need += total_r_lo
    g.add_edge(T, S, min(sum(b.l_hi), sum(b.r_hi)))

    got = g.max_flow(SS, TT)
    if got == need:
        return True, "feasible"

    for arc, i in left_req:
        if g.flow_on(arc) < b.l_lo[i]:
            return False, (f"left node {i} cannot reach its lower bound "
                           f"{b.l_lo[i]} (right-side capacity too small)")
    for arc, j in right_node_req:
        if g.flow_on(arc) < b.r_lo[j]:
            return False, (f"right node {j} cannot reach its lower bound "
                           f"{b.r_lo[j]} (left-side capacity too small)")
    if right_req is not None and g.flow_on(right_req) < total_r_lo:
        return False, ("right-side lower bounds total "
                       f"{total_r_lo} exceed what left capacities can supply")
    return False, "left-side lower bounds exceed what right capacities can absorb"


def check_matching(inst: Instance, match: Matching) -> tuple[bool, list[str]]:
    """Verify all degree bounds; returns (ok, per-node violation list)."""
    dl, dr = match.degrees(inst.m, inst.n)
    b = inst.bounds
    violations = []
    for i in range(inst.m):
        if not (b.l_lo[i] <= dl[i] <= b.l_hi[i]):
            violations.append(
                f"left {i}: degree {dl[i]} outside [{b.l_lo[i]}, {b.l_hi[i]}]")
    for j in range(inst.n):
        if not (b.r_lo[j] <= dr[j] <= b.r_hi[j]):
            violations.append(
                f"right {j}: degree {dr[j]} outside [{b.r_lo[j]}, {b.r_hi[j]}]")
    return not violations, violations


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def load_instance(text: str) -> Instance:
    """Parse an instance document; errors name the offending field."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(
            f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise InstanceError("instance document must be a JSON object")
    for field in ("m", "n", "k", "weights", "clusters", "bounds"):
        if field not in doc:
            raise InstanceError(f"missing field {field!r}")
    m, n, k = doc["m"], doc["n"], doc["k"]
    for name, v in (("m", m), ("n", n), ("k", k)):
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise InstanceError(f"{name} must be a positive integer, got {v!r}")
    w = doc["weights"]
    if not isinstance(w, list) or len(w) != m:
        raise InstanceError(f"weights must have m = {m} rows")
    for i, row in enumerate(w):
        if not isinstance(row, list) or len(row) != n:
            raise InstanceError(f"weights row {i} must have n = {n} entries")
        for j, v in enumerate(row):
            if not isinstance(v, (int, float)) or isinstance(v, bool):
                raise InstanceError(f"weights[{i}][{j}] is not a number")
    bounds_doc = doc["bounds"]
    if not isinstance(bounds_doc, dict):
        raise InstanceError("bounds must be an object")
    for field in ("L_lo", "L_hi", "R_lo", "R_hi"):
        if field not in bounds_doc:
            raise InstanceError(f"bounds missing field {field!r}")
    bounds = DegreeBounds.broadcast(
        m, n, bounds_doc["L_lo"], bounds_doc["L_hi"],
        bounds_doc["R_lo"], bounds_doc["R_hi"])
    return Instance(w, doc["clusters"], k, bounds)


def save_instance(inst: Instance) -> str:
    """Serialize with full decimal precision; load(save(x)) == x."""
    doc = {
        "m": inst.m,
        "n": inst.n,
        "k": inst.k,
        "weights": [[float(v) for v in row] for row in inst.weights],
        "clusters": [int(c) for c in inst.clusters],
        "bounds": {
            "L_lo": list(inst.bounds.l_lo),
            "L_hi": list(inst.bounds.l_hi),
            "R_lo": list(inst.bounds.r_lo),
            "R_hi": list(inst.bounds.r_hi),
        },
    }
    return json.dumps(doc)


def load_matching(text: str) -> Matching:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatchingError(
            f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict) or "edges" not in doc:
        raise MatchingError("matching document must be an object with an 'edges' field")
    edges = doc["edges"]
    if not isinstance(edges, list):
        raise MatchingError("'edges' must be a list of [i, j] pairs")
    pairs = []
    for idx, e in enumerate(edges):
        if not isinstance(e, list) or len(e) != 2:
            raise MatchingError(f"edges[{idx}] is not an [i, j] pair")
        pairs.append((e[0], e[1]))
    return Matching(pairs)


def save_matching(match: Matching) -> str:
    return json.dumps({"edges": [[i, j] for i, j in match.edges]})


# ---------------------------------------------------------------------------
# transforms
# ---------------------------------------------------------------------------

def transform_max_to_min(inst: Instance) -> Instance:
    """Flip rating-style weights (higher is better) into costs.

    Every weight becomes (global max weight) - weight; clusters and bounds
    are unchanged.  Apply this before solving data where larger numbers
    mean better matches.
    """
    top = float(inst.weights.max())
    return Instance(top - inst.weights, inst.clusters, inst.k, inst.bounds)
