"""Divisors of a x^2 + b y^3 in arithmetic progressions.

Run: python demos/cubic_divisors.py
"""

import math

from quadcong import experiments as ex

# Summed over a full period of y, the root counts of a x^2 + b y^3 mod d add up to d.
d = 35
counts = [ex.rho_cubic(1, 1, y, d) for y in range(d)]
print(f"sum over y mod {d} of rho = {sum(counts)}")

f = ex.bump(1, 1.5, 0.5)
p = ex.ypoisson_check(1, 1, d, 1000, f)
print(f"smoothed y-sum vs main term: {p.lhs:.6f} vs {p.main:.6f}")

for X in (10**4, 10**5):
    A, B = math.sqrt(X), X ** (1 / 3)
    r = ex.x2y3_typeI2(X, math.isqrt(math.isqrt(X**3)), int(X**0.25), 1, 1, f, f, f, A, B)
    mass = r.parameters["sum_a"] / (A * B * f.integral**2)
    print(f"X={X:>6}: mass ratio {mass:.4f}, error/X^(5/6) = {r.ratio_to_bound:.2e}")
