"""Type I sums, prime equidistribution and largest prime factors at desk scale.

Run: python demos/discrepancies.py   (about 20 seconds)
"""

import math

from quadcong import experiments as ex

psi1, psi2 = ex.bump(1, 2), ex.bump(-1, 1)

# The measured error tracks the bound's shape: the ratio barely moves while X grows a hundredfold.
for X in (10**3, 10**4, 10**5):
    r = ex.type1(X, X, math.floor(X**0.4), 1, 1, psi1, psi2)
    print(f"type I  X={X:>6}: error {r.total_error:10.3f}  bound {r.paper_bound:12.1f}  ratio {r.ratio_to_bound:.2e}")

# Roots nu/p of nu^2 + 1 = 0 mod p, p <= X, spread over deciles of [0, 1].
for X in (10**4, 10**5, 10**6):
    t = ex.equidist(X, 1, 1, ex.deciles())
    print(f"equidist X={X:>7}: {t.total} roots, worst decile deviation {t.max_deviation():.4f}")

g = ex.gpf_scan(10**5, 1, 1)
print(f"largest prime factor of n^2+1 over 1e5 <= n <= 2e5: {g.max_gpf} at n={g.argmax} (exponent {g.exponent:.3f})")
c = ex.chebyshev_identity(1000, 1, 1)
print("sieve and factorization sides agree to", c.difference)
