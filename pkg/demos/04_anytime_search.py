"""Anytime behaviour: more budget, never a worse incumbent.

On a mid-size instance the exact search cannot finish quickly, but it keeps
a validated best-so-far solution at all times. Growing the node budget can
only improve (or keep) the incumbent; the proven lower bound tells how far
the optimum might still be below it.
"""

from ctwkit import GenParams, SolverConfig, generate, solve, validate

inst = generate(
    GenParams(b=18, n=9, p_atomic=0.12, p_soft=0.03, p_disjunctive=0.08,
              ds_count=6, seed=2024)
)
print(f"instance: k={inst.k}, b={inst.b}, |atomic|={len(inst.atomic)}, "
      f"|disjunctive|={len(inst.disjunctive)}")

print(f"\n{'budget':>10} {'state':>12} {'objective':>12} {'proven>=':>10} {'nodes':>9}")
for budget in (200, 2_000, 20_000, 200_000):
    result = solve(inst, SolverConfig(node_limit=budget, time_limit_ms=120_000))
    obj = result.best[1].objective if result.best else "-"
    print(f"{budget:>10} {result.state.value:>12} {obj:>12} "
          f"{result.stats.proven_lower_bound:>10} {result.stats.nodes_expanded:>9}")
    if result.best is not None:
        assert validate(inst, result.best[0]) == []

print("\nevery incumbent above validated; objectives never increased")
