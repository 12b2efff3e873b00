"""Exact minimization of the cluster concentration cost.

Two routes share the public entry point:

Right-constrained instances (no left lower bounds, left upper bounds at
least n) decompose: right nodes share no binding constraint, and because
the objective is monotone in edge addition, each right node takes exactly
its lower bound's worth of edges.  Within one right node and one cluster
the cheapest t edges are always the best t edges, so a small dynamic
program over per-cluster take counts finds the node's optimum exactly.

Everything else runs best-first branch and bound over edge decisions.
A search node fixes some edges in and some out; branching picks the
heaviest undecided edge incident to an owing node.  The lower bound is
the committed cost plus an optimistic completion estimate: every owing
node must still add d edges, each costing at least its marginal gain
against the committed cluster sums, so the d cheapest such gains sum to
a valid floor (taken per side, then the larger side, since one edge can
serve both sides at once).  Because the objective is monotone, a node
whose lower bounds are all met is a complete candidate solution; its
committed edge set is the incumbent candidate and the subtree closes.

The search is anytime: a greedy warm start seeds the incumbent, a
millisecond budget stops the search early with the best incumbent, and
a frontier cap switches expansion to depth-first so memory stays bounded.
"""

from __future__ import annotations

import heapq
import math
import time
from typing import Optional

import numpy as np

from .errors import InternalError
from .greedy import solve_diverse_greedy
from .instance import Instance, Matching, check_matching, is_feasible_bounds
from .minweight import solve_min_weight
from .objective import ClusterSums, diversity_cost, total_weight
from .report import FEASIBLE_INCUMBENT, INFEASIBLE, OPTIMAL, SolveReport

FRONTIER_CAP = 10 ** 6
PRUNE_TOL = 1e-9


def warm_start(inst: Instance) -> Optional[Matching]:
    """Feasible matching used to seed the incumbent; None if infeasible.

    Greedy usually lands close to the optimum.  When greedy dead-ends on
    a feasible instance the minimum-weight solver supplies the fallback,
    so every feasible instance yields an incumbent.
    """
    rep = solve_diverse_greedy(inst)
    if rep.matching is not None:
        return rep.matching
    rep = solve_min_weight(inst)
    return rep.matching


def _solve_right_constrained(inst: Instance) -> Optional[Matching]:
    """Per-right-node exact optimum; None when the shape does not apply."""
    b = inst.bounds
    if any(lo != 0 for lo in b.l_lo) or any(hi < inst.n for hi in b.l_hi):
        return None
    clusters = np.asarray(inst.clusters)
    members: list[np.ndarray] = []
    for c in range(inst.k):
        members.append(np.nonzero(clusters == c)[0])

    edges: list[tuple[int, int]] = []
    for j in range(inst.n):
        demand = b.r_lo[j]
        if demand == 0:
            continue
        col = inst.weights[:, j]
        # cheapest-first member order per cluster, stable on index
        order = [mem[np.argsort(col[mem], kind="stable")] for mem in members]
        prefix = []
        for lefts in order:
            acc = np.concatenate(([0.0], np.cumsum(col[lefts])))
            prefix.append(acc)
        # dp[t] = cheapest concentration cost of t edges using clusters so far
        dp = np.full(demand + 1, math.inf)
        dp[0] = 0.0
        takes: list[np.ndarray] = []
        for c in range(inst.k):
            size = len(order[c])
            nxt = np.full(demand + 1, math.inf)
            choice = np.zeros(demand + 1, dtype=np.int64)
            for t in range(demand + 1):
                for take in range(0, min(t, size) + 1):
                    cand = dp[t - take] + prefix[c][take] ** 2
                    if cand < nxt[t]:
                        nxt[t] = cand
                        choice[t] = take
            dp = nxt
            takes.append(choice)
        if math.isinf(dp[demand]):
            raise InternalError(
                f"right node {j} cannot meet demand {demand} with {inst.m} "
                "left nodes")
        t = demand
        for c in range(inst.k - 1, -1, -1):
            take = int(takes[c][t])
            for i in order[c][:take]:
                edges.append((int(i), j))
            t -= take
    return Matching(edges)


class _Node:
    """One branch-and-bound search node (decision chain link)."""

    __slots__ = ("parent", "edge", "take", "committed", "bound", "depth")

    def __init__(self, parent, edge, take, committed, bound, depth):
        self.parent = parent
        self.edge = edge          # flat index i * n + j, -1 at the root
        self.take = take
        self.committed = committed
        self.bound = bound
        self.depth = depth


class _Search:
    """Mutable machinery for one branch-and-bound run."""

    def __init__(self, inst: Instance, prune_tol: float, frontier_cap: int):
        self.inst = inst
        self.prune_tol = prune_tol
        self.frontier_cap = frontier_cap
        b = inst.bounds
        self.l_lo = np.array(b.l_lo)
        self.l_hi = np.array(b.l_hi)
        self.r_lo = np.array(b.r_lo)
        self.r_hi = np.array(b.r_hi)
        self.expanded = 0
        self.pruned = 0

    # -- per-node context ------------------------------------------------

    def rebuild(self, node: _Node):
        """Walk the decision chain into explicit state arrays."""
        inst = self.inst
        m, n = inst.m, inst.n
        in_mask = np.zeros((m, n), dtype=bool)
        out_mask = np.zeros((m, n), dtype=bool)
        cur = node
        while cur.edge >= 0:
            i, j = divmod(cur.edge, n)
            (in_mask if cur.take else out_mask)[i, j] = True
            cur = cur.parent
        deg_l = in_mask.sum(axis=1)
        deg_r = in_mask.sum(axis=0)
        sums = ClusterSums(inst, zip(*np.nonzero(in_mask)))
        return in_mask, out_mask, deg_l, deg_r, sums

    def counting_feasible(self, in_mask, out_mask, deg_l, deg_r) -> bool:
        """Necessary residual-feasibility conditions (prune when False)."""
        need_l = np.maximum(self.l_lo - deg_l, 0)
        need_r = np.maximum(self.r_lo - deg_r, 0)
        if need_l.sum() > (self.r_hi - deg_r).sum():
            return False
        if need_r.sum() > (self.l_hi - deg_l).sum():
            return False
        decided = in_mask | out_mask
        if need_l.any():
            open_r = deg_r < self.r_hi
            avail = (~decided & open_r[None, :]).sum(axis=1)
            if (need_l > avail).any():
                return False
        if need_r.any():
            open_l = deg_l < self.l_hi
            avail = (~decided & open_l[:, None]).sum(axis=0)
            if (need_r > avail).any():
                return False
        return True

    def completion_bound(self, in_mask, out_mask, deg_l, deg_r, sums) -> float:
        """Optimistic extra cost to satisfy all residual lower bounds."""
        inst = self.inst
        w = inst.weights
        clusters = np.asarray(inst.clusters)
        decided = in_mask | out_mask
        open_l = deg_l < self.l_hi
        open_r = deg_r < self.r_hi
        usable = ~decided & open_l[:, None] & open_r[None, :]

        total_r = 0.0
        for j in np.nonzero(self.r_lo - deg_r > 0)[0]:
            d = int(self.r_lo[j] - deg_r[j])
            rows = np.nonzero(usable[:, j])[0]
            if len(rows) < d:
                return math.inf
            col = w[rows, j]
            cur = np.array([sums.cluster_weight(int(j), int(c))
                            for c in clusters[rows]])
            gains = col * col + (2.0 * col) * cur
            total_r += float(np.partition(gains, d - 1)[:d].sum())

        total_l = 0.0
        for i in np.nonzero(self.l_lo - deg_l > 0)[0]:
            d = int(self.l_lo[i] - deg_l[i])
            cols = np.nonzero(usable[i, :])[0]
            if len(cols) < d:
                return math.inf
            row = w[i, cols]
            c = int(clusters[i])
            cur = np.array([sums.cluster_weight(int(j), c) for j in cols])
            gains = row * row + (2.0 * row) * cur
            total_l += float(np.partition(gains, d - 1)[:d].sum())

        return max(total_r, total_l)

    def pick_branch_edge(self, in_mask, out_mask, deg_l, deg_r) -> int:
        """Heaviest undecided edge at an owing node; -1 when none owed."""
        decided = in_mask | out_mask
        open_l = deg_l < self.l_hi
        open_r = deg_r < self.r_hi
        usable = ~decided & open_l[:, None] & open_r[None, :]
        owing_r = deg_r < self.r_lo
        owing_l = deg_l < self.l_lo
        if not owing_r.any() and not owing_l.any():
            return -1
        pool = usable & owing_r[None, :]
        if not pool.any():
            pool = usable & owing_l[:, None]
        if not pool.any():
            return -2  # owing node with no usable edge: dead subtree
        w = np.where(pool, self.inst.weights, -math.inf)
        flat = int(np.argmax(w))  # ties: argmax takes the first, (i, j) lex
        return flat


def solve_diverse_exact(inst: Instance, budget_ms: Optional[float] = None,
                        frontier_cap: int = FRONTIER_CAP,
                        prune_tol: float = PRUNE_TOL) -> SolveReport:
    """Globally minimize the concentration cost under all degree bounds.

    Completes with status optimal, or returns the best incumbent as
    feasible_incumbent when budget_ms elapses first.  The budget is
    honored at branching granularity.
    """
    start = time.perf_counter()
    deadline = None if budget_ms is None else start + budget_ms / 1000.0
    feasible, why = is_feasible_bounds(inst)
    if not feasible:
        return SolveReport(
            algorithm="diverse_exact", status=INFEASIBLE, matching=None,
            total_weight=None, diversity_cost=None,
            wall_time=time.perf_counter() - start, diagnostic=why)

    fast = _solve_right_constrained(inst)
    if fast is not None:
        ok, violations = check_matching(inst, fast)
        if not ok:
            raise InternalError("decomposed optimum violates bounds: "
                                + "; ".join(violations))
        return SolveReport(
            algorithm="diverse_exact", status=OPTIMAL, matching=fast,
            total_weight=total_weight(inst, fast),
            diversity_cost=diversity_cost(inst, fast),
            wall_time=time.perf_counter() - start,
            telemetry={"fast_path": True, "expanded": 0, "pruned": 0,
                       "incumbent_updates": []})

    incumbent = warm_start(inst)
    if incumbent is None:
        raise InternalError("feasibility pre-check passed but no warm start")
    best_value = diversity_cost(inst, incumbent)
    updates = [(time.perf_counter() - start, best_value)]

    search = _Search(inst, prune_tol, frontier_cap)
    n = inst.n
    root = _Node(None, -1, False, 0.0, 0.0, 0)
    heap: list[tuple[float, int, int, _Node]] = []
    stack: list[_Node] = []
    seq = 0
    heapq.heappush(heap, (0.0, 0, seq, root))
    timed_out = False

    while heap or stack:
        if deadline is not None and time.perf_counter() > deadline:
            timed_out = True
            break
        if stack:
            node = stack.pop()
        else:
            _, _, _, node = heapq.heappop(heap)
        if node.bound >= best_value - prune_tol:
            search.pruned += 1
            continue
        in_mask, out_mask, deg_l, deg_r, sums = search.rebuild(node)
        search.expanded += 1

        flat = search.pick_branch_edge(in_mask, out_mask, deg_l, deg_r)
        if flat == -1:
            # all lower bounds met: the committed set is a full candidate
            match = Matching((int(i), int(j))
                             for i, j in zip(*np.nonzero(in_mask)))
            value = diversity_cost(inst, match)
            if value < best_value - prune_tol:
                best_value = value
                incumbent = match
                updates.append((time.perf_counter() - start, value))
            continue
        if flat == -2:
            search.pruned += 1
            continue

        i, j = divmod(flat, n)
        for take in (True, False):
            mask = in_mask if take else out_mask
            mask[i, j] = True
            if take:
                deg_l[i] += 1
                deg_r[j] += 1
                gain = sums.add(i, j)
            if search.counting_feasible(in_mask, out_mask, deg_l, deg_r):
                committed = node.committed + (gain if take else 0.0)
                bound = committed + search.completion_bound(
                    in_mask, out_mask, deg_l, deg_r, sums)
                if bound < best_value - prune_tol:
                    child = _Node(node, flat, take, committed, bound,
                                  node.depth + 1)
                    seq += 1
                    if len(heap) < frontier_cap:
                        heapq.heappush(heap,
                                       (bound, -child.depth, seq, child))
                    else:
                        stack.append(child)
                else:
                    search.pruned += 1
            else:
                search.pruned += 1
            mask[i, j] = False
            if take:
                deg_l[i] -= 1
                deg_r[j] -= 1
                sums.remove(i, j)

    ok, violations = check_matching(inst, incumbent)
    if not ok:
        raise InternalError("exact solver incumbent violates bounds: "
                            + "; ".join(violations))
    status = FEASIBLE_INCUMBENT if timed_out else OPTIMAL
    value = diversity_cost(inst, incumbent)
    if abs(value - best_value) > 1e-9:
        raise InternalError(
            f"incumbent value drifted: tracked {best_value}, actual {value}")
    return SolveReport(
        algorithm="diverse_exact", status=status, matching=incumbent,
        total_weight=total_weight(inst, incumbent),
        diversity_cost=value,
        wall_time=time.perf_counter() - start,
        telemetry={"fast_path": False, "expanded": search.expanded,
                   "pruned": search.pruned, "incumbent_updates": updates})
