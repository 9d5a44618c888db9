"""
Looking for other solutions
===========================

Equal basis-plane curvatures plus the Jacobi identity is a system of five
homogeneous quadrics in six unknowns.  A multi-start least-squares search
on the unit sphere shows where its real points lie.
"""

from collections import Counter

from circulant_geometry.liegroup import case_spec, scan_invariance_variety

# 1. Seeded random starts, plus three starts placed on the known families.
starts = [case_spec("A", 1, 0, 0), case_spec("B", 1, 0), case_spec("C", 1, 1)]
result = scan_invariance_variety(seed=1, trials=300, starts=starts)

# 2. Every converged point is tagged with the family it falls in.
print("distinct solutions:", len(result))
print("by family:", dict(Counter(s.family for s in result)))
print("worst residual:", max(s.residual for s in result))

# 3. Points that round to small rationals get re-checked exactly.
exact = [s for s in result if s.exact is not None]
print("rationalized:", len(exact), " all exact zeros:", all(s.exact_zero for s in exact))

# 4. The hand-placed starts stay where they were put.
for o in result.seeded:
    print("start moved by", f"{o.moved:.1e}", "fixed" if o.fixed else "MOVED")
