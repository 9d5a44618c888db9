"""
Left-invariant examples in exact arithmetic
===========================================

On a 3-dimensional Lie group with an orthonormal left-invariant frame
x1, x2, x3 and Q x1 = x2, Q x2 = x3, Q x3 = x1, everything is a polynomial
in the structure constants.  Fractions keep it exact.
"""

from fractions import Fraction

from circulant_geometry import ReducedSpec, case_spec, lie_curvature
from circulant_geometry.liegroup import lie_fundamental, reduced_jacobi_residual, verify_case_propositions

# 1. Structure constants lam = C_12, nu = C_23.  The third bracket C_13 is then
#    fixed by asking F to factor through the Lee forms.
spec = ReducedSpec((Fraction(7, 6), Fraction(1, 6), Fraction(-5, 6)), (Fraction(5, 6), Fraction(-1, 6), Fraction(-7, 6)))
print("mu =", [str(x) for x in spec.mu], " Jacobi residual =", [str(x) for x in reduced_jacobi_residual(spec)])

curv = lie_curvature(spec.full())
print("basis-plane curvatures (k23, k13, k12) =", [str(x) for x in curv.k])
print("tau =", curv.tau, " tau* =", curv.tau_star)

# 2. Three families make the three basis-plane curvatures equal.
for which, params in (("A", (1, 1, 1)), ("B", (2, 0)), ("C", (1, 1))):
    c = lie_curvature(case_spec(which, *params).full())
    print(f"Case {which}{params}: k = {c.k[0]}, tau = {c.tau}, rho diagonal = {c.rho[0, 0]}, "
          f"off-diagonal = {c.rho[0, 1]}")

# 3. In Case C the fundamental tensor vanishes and Q preserves brackets.  Its
#    Ricci tensor is a combination of g and gt rather than a multiple of g.
rep = verify_case_propositions("C", (1, 1))
F, _, _ = lie_fundamental(rep.spec.full())
print("Case C: F is zero:", all(x == 0 for x in F.flat))
for clause in rep.clauses:
    print(f"  {clause.name:<20s} {'holds' if clause.holds else 'does not hold'}  {clause.note}")
