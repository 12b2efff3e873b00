"""Solver result container shared by all three solvers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from .instance import Matching

# A solve ends in exactly one of these states.
OPTIMAL = "optimal"                      # proven best objective
FEASIBLE_INCUMBENT = "feasible_incumbent"  # feasible, no optimality proof
BUDGET_EXHAUSTED = "budget_exhausted"    # budget hit with nothing to return
INFEASIBLE = "infeasible"                # no matching satisfies the bounds

STATUSES = (OPTIMAL, FEASIBLE_INCUMBENT, BUDGET_EXHAUSTED, INFEASIBLE)


@dataclass(frozen=True)
class SolveReport:
    """Outcome of one solver run.

    matching is None exactly when no feasible solution is available
    (infeasible or budget exhausted before any incumbent).  Objective
    values are evaluated from scratch on the returned matching, never
    copied from solver internals.  telemetry holds solver-specific
    counters (augmentation counts, branch nodes, prune counts and the
    like); keys vary by algorithm.
    """

    algorithm: str
    status: str
    matching: Optional[Matching]
    total_weight: Optional[float]
    diversity_cost: Optional[float]
    wall_time: float
    diagnostic: str = ""
    telemetry: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        has_match = self.matching is not None
        if self.status in (OPTIMAL, FEASIBLE_INCUMBENT) and not has_match:
            raise ValueError(f"status {self.status} requires a matching")
        if self.status in (INFEASIBLE, BUDGET_EXHAUSTED) and has_match:
            raise ValueError(f"status {self.status} must not carry a matching")

    def to_doc(self) -> dict[str, Any]:
        """JSON-ready dictionary; edge list sorted, floats untouched."""
        return {
            "algorithm": self.algorithm,
            "status": self.status,
            "edges": None if self.matching is None
                     else [[i, j] for i, j in self.matching.edges],
            "total_weight": self.total_weight,
            "diversity_cost": self.diversity_cost,
            "wall_time": self.wall_time,
            "diagnostic": self.diagnostic,
            "telemetry": self.telemetry,
        }
