"""
Rescaling the metric
====================

Multiplying g by a positive function alpha rescales gt by the same factor.
Over a constant metric (where F vanishes) the new F comes entirely from
the gradient of alpha.
"""

from circulant_geometry import ConformalData, barred_frame_at
from circulant_geometry.conformal import barred_lee_forms, check_corollaries, half_formula, half_formula_as_printed

# 1. A constant base, so F = 0 before the change.
const = ConformalData.parse("3", "1", "5")
print("constant alpha, max|Fbar| =", check_corollaries(const, [(0.2, 0.4, 0.6)]).max_F_bar)

# 2. A non-constant factor switches F on.
data = ConformalData.parse("3", "1", "1+x2^2")
p = (0.0, 1.0, 0.0)
bf = barred_frame_at(data, p)
print("alpha =", bf.alpha.value, " grad alpha =", bf.alpha.grad)
print("max|Fbar| =", abs(bf.bar.F).max())

# 3. Fbar can be written with the gradient of alpha and the barred metrics,
#    provided the whole combination is divided by alpha.
print("with 1/alpha:    ", abs(bf.bar.F - half_formula(bf.bar, bf.alpha)).max())
print("without 1/alpha: ", abs(bf.bar.F - half_formula_as_printed(bf.bar, bf.alpha)).max())

# 4. The Lee forms pick up multiples of d log alpha.
theta_bar, theta_star_bar, _ = barred_lee_forms(ConformalData.parse("2", "1", "exp(x1)"), (0, 0, 0))
print("theta bar  =", theta_bar)
print("theta* bar =", theta_star_bar)
