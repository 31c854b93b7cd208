"""Square roots of -h/a modulo k and the Heegner points they come from.

Run: python demos/roots_and_points.py
"""

from quadcong.lattice import coset_reps, heegner_points, reduce, SymMat
from quadcong.modcore import factorize, rho, roots_mod_k

# The roots of 1*v^2 + 1 modulo 65 = 5 * 13 are glued together by CRT from
# the two roots modulo 5 and the two modulo 13.
rs = roots_mod_k(1, 1, 65)
print("roots of v^2 + 1 mod 65:", rs.roots)
print("rho(65) =", rho(1, 1, 65), "=", rho(1, 1, 5), "*", rho(1, 1, 13))

# A prime power where Hensel lifting goes through the degenerate branch.
print("roots of v^2 + 1 mod 2^4:", roots_mod_k(1, 1, 16).roots, "(none: -1 is not a square mod 4)")
print("roots of v^2 + 7 mod 2^6:", roots_mod_k(1, 7, 64).roots)

# Each root b of b^2 + h = 0 mod c gives a positive form (aa, bb, cc) with
# aa*cc - bb^2 = h. Reducing picks one per SL2(Z) class.
for h in (1, 2, 5, 14, 23):
    pts = heegner_points(h)
    listing = ", ".join(f"{tuple(p.sym)}|stab {p.stab_order}" for p in pts)
    print(f"h={h:3d}: {len(pts)} point(s): {listing}")

point, gamma = reduce(SymMat(13, 5, 2))
print("(13, 5, 2) reduces to", tuple(point.sym), "via", tuple(gamma))

print("Gamma0(6) has", len(coset_reps(6)), "cosets; 10001 =", factorize(10001))
