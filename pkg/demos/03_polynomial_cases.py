"""The two instance classes that need no search at all.

With only hard atomic constraints and no two-sided cables, any topological
order of the constraint graph is optimal (cost 0) -- or a precedence cycle
proves there is no solution. With only direct successor constraints, wiring
each cable's two ends back-to-back costs nothing and satisfies everything.
"""

from ctwkit import (
    GenMode,
    GenParams,
    Instance,
    UnsatCertificate,
    breakdown,
    ds_only_solve,
    generate,
    topo_solve,
    unsat_precheck,
    validate,
)

chain = Instance(k=4, b=0, atomic=[(2, 1), (1, 3), (3, 4)])
perm = topo_solve(chain)
print(f"topological solution: {perm.tour}, violations: {validate(chain, perm)}")

looped = Instance(k=3, b=0, atomic=[(1, 2), (2, 3), (3, 1)])
cert = topo_solve(looped)
assert isinstance(cert, UnsatCertificate)
print(f"cyclic instance: {cert}")

# The same cycle check runs as a cheap filter before every solve
print(f"precheck on the looped instance: {unsat_precheck(looped)}")
print(f"precheck on the chain: {unsat_precheck(chain)}")

# Successor-only instances: pairs (1,4), (2,5), (3,6); ends 1, 5, 6 are too
# short to wait in storage.
short = Instance(k=7, b=3, direct_successors=[1, 5, 6])
perm = ds_only_solve(short)
bd = breakdown(short, perm)
print(f"\nsuccessor-only solution: {perm.tour}")
print(f"costs: S={bd.S} M={bd.M} L={bd.L} N={bd.N} (objective {bd.objective})")

# It works for any constrained-end subset, including generated ones
inst = generate(GenParams(b=5, n=3, ds_count=7, seed=4, mode=GenMode.DS_ONLY))
print(f"generated successor-only instance: objective "
      f"{breakdown(inst, ds_only_solve(inst)).objective}")
