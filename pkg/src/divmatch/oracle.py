"""Brute-force ground truth for small instances.

Enumerates every subset of the m*n candidate edges, keeps the ones
satisfying all degree bounds, and returns the feasible subset minimizing
the requested objective.  Deliberately naive so it can anchor tests of
the real solvers; the only sophistication is vectorizing the enumeration
in fixed-size chunks so small batteries stay fast.

Edge b of the subset bitmask is edge (b // n, b % n): binary counting over
the (left, right)-lexicographic edge list.  Ties on the objective are
broken toward the lexicographically smallest sorted edge list.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import metrics as _metrics
from .errors import SizeCapError
from .instance import Instance, Matching
from .objective import diversity_cost, total_weight
from .report import INFEASIBLE, OPTIMAL, SolveReport

OBJECTIVE_WEIGHT = "weight"
OBJECTIVE_DIVERSITY = "diversity"

_CHUNK = 1 << 14


@dataclass(frozen=True)
class EnumerationBudget:
    """Hard ceilings for enumeration; exceeding either is a refusal.

    The oracle never truncates a search: an instance too large for the
    budget raises SizeCapError so a partial scan can never masquerade
    as ground truth.
    """

    max_subsets: int = 1 << 20
    max_wall_s: float = 120.0


def _subset_objectives(inst: Instance, objective: str,
                       codes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Feasibility mask and objective value for a chunk of subset codes."""
    m, n = inst.m, inst.n
    num_edges = m * n
    bits = ((codes[:, None] >> np.arange(num_edges, dtype=np.uint64))
            & np.uint64(1)).astype(np.float64)
    shaped = bits.reshape(len(codes), m, n)
    deg_l = shaped.sum(axis=2)
    deg_r = shaped.sum(axis=1)
    b = inst.bounds
    ok = (
        np.all(deg_l >= np.array(b.l_lo), axis=1)
        & np.all(deg_l <= np.array(b.l_hi), axis=1)
        & np.all(deg_r >= np.array(b.r_lo), axis=1)
        & np.all(deg_r <= np.array(b.r_hi), axis=1)
    )
    if objective == OBJECTIVE_WEIGHT:
        values = bits @ inst.weights.reshape(-1)
    else:
        # cluster-weight sums per (right node, cluster), then sum of squares
        proj = np.zeros((num_edges, n * inst.k), dtype=np.float64)
        for i in range(m):
            c = int(inst.clusters[i])
            for j in range(n):
                proj[i * n + j, j * inst.k + c] = inst.weights[i, j]
        sums = bits @ proj
        values = np.einsum("ij,ij->i", sums, sums)
    return ok, values


def _edges_of(code: int, n: int) -> tuple[tuple[int, int], ...]:
    out = []
    b = 0
    while code:
        if code & 1:
            out.append((b // n, b % n))
        code >>= 1
        b += 1
    return tuple(out)


def brute_force(inst: Instance, objective: str = OBJECTIVE_WEIGHT,
                budget: Optional[EnumerationBudget] = None) -> SolveReport:
    """Exhaustive minimization of one objective over all edge subsets."""
    if objective not in (OBJECTIVE_WEIGHT, OBJECTIVE_DIVERSITY):
        raise ValueError(f"unknown objective {objective!r}")
    budget = budget or EnumerationBudget()
    num_edges = inst.m * inst.n
    total = 1 << num_edges
    if total > budget.max_subsets:
        raise SizeCapError(
            f"{total} edge subsets exceed the enumeration budget "
            f"of {budget.max_subsets}; refusing rather than truncating")

    start = time.perf_counter()
    best_value = math.inf
    best_edges: Optional[tuple[tuple[int, int], ...]] = None
    feasible_count = 0
    n = inst.n

    for lo in range(0, total, _CHUNK):
        if time.perf_counter() - start > budget.max_wall_s:
            raise SizeCapError(
                f"enumeration exceeded {budget.max_wall_s} s wall budget; "
                "refusing rather than truncating")
        codes = np.arange(lo, min(lo + _CHUNK, total), dtype=np.uint64)
        ok, values = _subset_objectives(inst, objective, codes)
        feasible_count += int(ok.sum())
        if not ok.any():
            continue
        values = np.where(ok, values, math.inf)
        chunk_best = float(values.min())
        if chunk_best > best_value:
            continue
        if chunk_best < best_value:
            best_value = chunk_best
            best_edges = None
        for code in codes[values == best_value]:
            edges = _edges_of(int(code), n)
            if best_edges is None or edges < best_edges:
                best_edges = edges

    wall = time.perf_counter() - start
    telemetry = {"subsets": total, "feasible": feasible_count}
    if best_edges is None:
        return SolveReport(
            algorithm="oracle", status=INFEASIBLE, matching=None,
            total_weight=None, diversity_cost=None, wall_time=wall,
            diagnostic="no edge subset satisfies the degree bounds",
            telemetry=telemetry)
    match = Matching(best_edges)
    return SolveReport(
        algorithm="oracle", status=OPTIMAL, matching=match,
        total_weight=total_weight(inst, match),
        diversity_cost=diversity_cost(inst, match),
        wall_time=wall, telemetry=telemetry)


def enumerate_pod(inst: Instance, budget: Optional[EnumerationBudget] = None,
                  ) -> tuple[Optional[float], Optional[float],
                             dict[str, SolveReport]]:
    """True price of diversity and entropy gain from brute-force optima.

    Returns (pod, eg, witnesses) where witnesses holds the two oracle
    reports under keys 'weight' and 'diversity'.  pod or eg is None when
    undefined (zero diverse weight, zero baseline entropy) or when either
    side is infeasible.
    """
    base = brute_force(inst, OBJECTIVE_WEIGHT, budget)
    div = brute_force(inst, OBJECTIVE_DIVERSITY, budget)
    witnesses = {"weight": base, "diversity": div}
    if base.matching is None or div.matching is None:
        return None, None, witnesses
    pod = _metrics.price_of_diversity(base.total_weight, div.total_weight)
    eg, _ = _metrics.entropy_gain(inst, base.matching, div.matching)
    return pod, eg, witnesses
