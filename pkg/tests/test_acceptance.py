"""Acceptance gate: eight release criteria, one printed verdict line each.

Every test prints exactly one `[criterion N] PASS/FAIL` line on the real
stdout (bypassing capture) and then asserts, so the suite output always
shows the full scoreboard even when a criterion is red.
"""

import math
import time
from pathlib import Path

import numpy as np
import pytest

from divmatch import (
    DegreeBounds,
    EnumerationBudget,
    FEASIBLE_INCUMBENT,
    INFEASIBLE,
    Instance,
    Matching,
    OBJECTIVE_DIVERSITY,
    OBJECTIVE_WEIGHT,
    OPTIMAL,
    brute_force,
    check_matching,
    diversity_cost,
    node_bound_term,
    pod_lower_bound,
    price_of_diversity,
    quadratic_form_cost,
    run_bounds_sweep,
    run_cluster_sweep,
    run_scaling,
    solve_diverse_exact,
    solve_diverse_greedy,
    solve_min_weight,
)
from conftest import random_instance

TOL = 1e-9
BATTERY_SEED = 20260815
BATTERY_SIZE = 500


def battery_instances():
    """The shared random battery: small sizes, two-sided random bounds."""
    rng = np.random.default_rng(BATTERY_SEED)
    return [random_instance(rng, max_m=5, max_n=5, max_k=3, max_cells=20)
            for _ in range(BATTERY_SIZE)]


def announce(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"[criterion {number}] {'PASS' if ok else 'FAIL'} - {detail}",
              flush=True)


class TestAcceptance:
    def test_criterion_1_solvers_match_brute_force(self, capsys):
        # All three solvers against exhaustive enumeration on 500 random
        # instances, including infeasible ones, inside two minutes.
        budget = EnumerationBudget(max_subsets=1 << 20, max_wall_s=120.0)
        failures = []
        start = time.perf_counter()
        for idx, inst in enumerate(battery_instances()):
            oracle_w = brute_force(inst, OBJECTIVE_WEIGHT, budget)
            oracle_d = brute_force(inst, OBJECTIVE_DIVERSITY, budget)
            rep_w = solve_min_weight(inst)
            rep_d = solve_diverse_exact(inst)
            rep_g = solve_diverse_greedy(inst)
            if rep_w.status != oracle_w.status:
                failures.append((idx, "baseline status", rep_w.status))
                continue
            if rep_d.status != oracle_d.status:
                failures.append((idx, "exact status", rep_d.status))
                continue
            if oracle_w.status == INFEASIBLE:
                if rep_g.status != INFEASIBLE:
                    failures.append((idx, "greedy status", rep_g.status))
                continue
            if abs(rep_w.total_weight - oracle_w.total_weight) > TOL:
                failures.append((idx, "baseline weight",
                                 rep_w.total_weight - oracle_w.total_weight))
            if abs(rep_d.diversity_cost - oracle_d.diversity_cost) > TOL:
                failures.append(
                    (idx, "exact cost",
                     rep_d.diversity_cost - oracle_d.diversity_cost))
            ok, violations = (check_matching(inst, rep_g.matching)
                              if rep_g.matching is not None else (False, []))
            if not ok:
                failures.append((idx, "greedy feasibility", violations))
            elif rep_g.diversity_cost < oracle_d.diversity_cost - TOL:
                failures.append((idx, "greedy beat the optimum",
                                 rep_g.diversity_cost))
        wall = time.perf_counter() - start
        ok = not failures and wall < 120.0
        announce(capsys, 1, ok,
                 f"{BATTERY_SIZE} instances, {len(failures)} mismatches, "
                 f"{wall:.1f}s (limit 120s)")
        assert ok, failures[:5]

    def test_criterion_2_worked_example_both_routes(self, capsys):
        # Two same-cluster unit edges on one right node must cost 4, a
        # cross-cluster pair 2, through the grouped-sum evaluation and
        # the quadratic form alike.
        weights = np.ones((3, 1))
        clusters = np.array([0, 0, 1])
        bounds = DegreeBounds.broadcast(3, 1, 0, 1, 2, 2)
        inst = Instance(weights, clusters, 2, bounds)
        same = Matching([(0, 0), (1, 0)])
        cross = Matching([(0, 0), (2, 0)])
        values = (
            diversity_cost(inst, same), quadratic_form_cost(inst, same),
            diversity_cost(inst, cross), quadratic_form_cost(inst, cross),
        )
        expected = (4.0, 4.0, 2.0, 2.0)
        deltas = [abs(a - b) for a, b in zip(values, expected)]
        solver = solve_diverse_exact(inst)
        ok = max(deltas) <= 1e-12 and abs(solver.diversity_cost - 2.0) <= 1e-12
        announce(capsys, 2, ok,
                 f"same-cluster pair {values[0]:g}/{values[1]:g}, "
                 f"cross-cluster pair {values[2]:g}/{values[3]:g}, "
                 f"solver optimum {solver.diversity_cost:g}")
        assert ok, (values, solver.diversity_cost)

    def test_criterion_3_cluster_sweep_replication(self, capsys):
        # Nine cluster counts, one hundred trials each, on the 10 x 10
        # configuration: high mean efficiency, a hard per-trial floor,
        # and near-total greedy/exact agreement, inside ten minutes.
        start = time.perf_counter()
        batch = run_cluster_sweep()
        wall = time.perf_counter() - start
        failures = []
        by_k = {}
        agree = 0
        for row in batch.rows:
            rep = row.report
            if rep.pod is None:
                failures.append((row.sweep_value, row.trial, "pod undefined"))
                continue
            by_k.setdefault(row.sweep_value, []).append(rep.pod)
            if rep.pod < 0.5 - TOL:
                failures.append((row.sweep_value, row.trial,
                                 f"pod {rep.pod:.4f} below 0.5"))
            if (row.greedy_cost is not None and row.exact_cost is not None
                    and abs(row.greedy_cost - row.exact_cost) <= TOL):
                agree += 1
        means = {k: float(np.mean(v)) for k, v in sorted(by_k.items())}
        for k, mean_pod in means.items():
            if mean_pod < 0.88:
                failures.append((k, "mean", f"mean pod {mean_pod:.4f}"))
        rate = agree / len(batch.rows)
        if rate < 0.95:
            failures.append(("agreement", rate, "below 0.95"))
        if wall >= 600.0:
            failures.append(("wall", wall, "over 600s"))
        ok = not failures
        announce(capsys, 3, ok,
                 f"mean pod {min(means.values()):.3f}..{max(means.values()):.3f}, "
                 f"worst trial {min(min(v) for v in by_k.values()):.3f}, "
                 f"agreement {rate:.3f}, {wall:.1f}s (limit 600s)")
        assert ok, failures[:5]

    def test_criterion_4_efficiency_floor_on_battery(self, capsys):
        # The averaged per-node efficiency floor, checked against the
        # measured ratio of optimal solutions on every battery instance,
        # plus the exact closed-form spot value for the floor term.
        term = node_bound_term(math.inf, 5)
        term_ok = term == 0.5
        violations = []
        checked = 0
        for idx, inst in enumerate(battery_instances()):
            base = solve_min_weight(inst)
            div = solve_diverse_exact(inst)
            if base.status != OPTIMAL or div.status != OPTIMAL:
                continue
            pod = price_of_diversity(base.total_weight, div.total_weight)
            if pod is None:
                continue
            checked += 1
            bound, _ = pod_lower_bound(inst, base.matching)
            if pod < bound - TOL:
                violations.append((idx, pod, bound))
        ok = term_ok and not violations
        worst = max(violations, key=lambda v: v[2] - v[1], default=None)
        detail = (f"floor term at infinite spread {term} (want 0.5 exactly); "
                  f"{len(violations)}/{checked} optimal pairs fall below the "
                  f"averaged floor")
        if worst is not None:
            detail += (f", worst gap {worst[2] - worst[1]:.3f} "
                       f"(ratio {worst[1]:.3f} vs floor {worst[2]:.3f})")
            detail += ("; the floor is not universal under two-sided "
                       "degree constraints")
        announce(capsys, 4, ok, detail)
        assert term_ok, term
        assert not violations, (
            f"{len(violations)} of {checked} measured ratios fall below the "
            f"averaged per-node floor; the floor's premises cover right-side "
            f"lower bounds only, and the per-node average does not survive "
            f"instances whose left side also carries binding bounds; "
            f"worst case: {worst}")

    def test_criterion_5_exhaustive_increasing_differences(self, capsys):
        # The marginal cost of any edge never decreases when another edge
        # is added first: checked exhaustively over every subset, added
        # edge, and probe edge of four random instances up to 12 cells.
        from divmatch import ClusterSums
        rng = np.random.default_rng(40)
        comparisons = 0
        violations = 0
        for _ in range(4):
            inst = random_instance(rng, max_m=4, max_n=4, max_cells=12)
            cells = inst.m * inst.n
            for code in range(1 << cells):
                sums = ClusterSums(inst)
                for b in range(cells):
                    if code >> b & 1:
                        sums.add(b // inst.n, b % inst.n)
                outside = [(b // inst.n, b % inst.n)
                           for b in range(cells) if not code >> b & 1]
                for f in outside:
                    base = {e: sums.gain(*e) for e in outside if e != f}
                    sums.add(*f)
                    for e, before in base.items():
                        comparisons += 1
                        if sums.gain(*e) < before:
                            violations += 1
                    sums.remove(*f)
        ok = violations == 0
        announce(capsys, 5, ok,
                 f"{comparisons} exhaustive comparisons, "
                 f"{violations} violations")
        assert ok, violations

    def test_criterion_6_scaling(self, capsys):
        # Greedy stays interactive while the exact solver burns its
        # budget; at the largest size greedy must be strictly faster.
        budget_ms = 2000.0
        rows = run_scaling(sizes=(25, 50, 100, 200), budget_ms=budget_ms)
        failures = []
        for row in rows:
            if row["status_greedy"] != FEASIBLE_INCUMBENT:
                failures.append((row["m"], "greedy", row["status_greedy"]))
            if row["wall_s_greedy"] >= 5.0:
                failures.append((row["m"], "greedy wall",
                                 row["wall_s_greedy"]))
        largest = rows[-1]
        if largest["wall_s_greedy"] >= largest["wall_s_exact"]:
            failures.append((largest["m"], "greedy not faster",
                             (largest["wall_s_greedy"],
                              largest["wall_s_exact"])))
        ok = not failures
        walls = ", ".join(f"m={r['m']}: {r['wall_s_greedy']:.3f}s"
                          for r in rows)
        announce(capsys, 6, ok,
                 f"greedy walls {walls}; exact at m=200 "
                 f"{largest['wall_s_exact']:.3f}s (budget {budget_ms:g}ms)")
        assert ok, failures

    def test_criterion_7_bounds_sweep_endpoints(self, capsys):
        # Saturation end: identical matchings, ratio exactly 1.  Loose
        # end: the sweep completes and flags the ratio when undefined.
        batch = run_bounds_sweep(m=8, n=4, k=3, seed=11)
        by_lo = {row.sweep_value: row.report for row in batch.rows}
        failures = []
        if set(by_lo) != set(range(1, 9)):
            failures.append(("rows", sorted(by_lo)))
        saturated = by_lo[8]
        if saturated.pod != 1.0:
            failures.append(("saturated pod", saturated.pod))
        loose = by_lo[1]
        if loose.eg is None and not loose.diagnostic:
            failures.append(("loose end eg missing diagnostic", None))
        if loose.eg is not None and loose.eg <= 0.0:
            failures.append(("loose end eg", loose.eg))
        ok = not failures
        eg_text = ("undefined (flagged)" if loose.eg is None
                   else f"{loose.eg:.3f}")
        announce(capsys, 7, ok,
                 f"saturated ratio {saturated.pod!r}, loose-end entropy "
                 f"gain {eg_text}")
        assert ok, failures

    def test_criterion_8_reference_values_cited_in_docs(self, capsys):
        # The three published real-data operating points appear in the
        # README as context only; nothing in the package claims to
        # reproduce them, and no real dataset ships here.
        readme = Path(__file__).resolve().parent.parent / "README.md"
        exists = readme.is_file()
        text = " ".join(readme.read_text().split()) if exists else ""
        numbers = ("0.99", "0.92", "0.94", "1.45", "1.63", "4.28")
        missing = [v for v in numbers if v not in text]
        context_marked = "context, not a test target" in text
        ok = exists and not missing and context_marked
        announce(capsys, 8, ok,
                 f"README cites {len(numbers) - len(missing)}/{len(numbers)} "
                 f"reference values, context-only wording "
                 f"{'present' if context_marked else 'absent'}")
        assert ok, (exists, missing, context_marked)
