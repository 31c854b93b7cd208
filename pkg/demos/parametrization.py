"""Checking the parametrization identities inside finite boxes.

Each verifier enumerates one side of a set identity inside an entry box,
regenerates it from the other side with a wider margin, and reports
misses and double hits.

Run: python demos/parametrization.py
"""

from quadcong import parametrize as P
from quadcong.lattice import SymMat

r = P.verify_para1(1, 5, 3, 40)
print("coset parametrization, h=5, d=3:", r.hits, "of", r.elements_enumerated, "hit once; passed =", r.passed)

r = P.verify_para2(1, 5, 1, 2, 3, 60)
print("pair parametrization, n1=2, n2=3:", r.hits, "pairs; passed =", r.passed)

# A determinant 8 = 2 * 2^2 form splits as (2 sigma^-1) acting on a determinant-2 base.
sigma, base = P.cube_decompose(SymMat(1, 0, 8), 2, 2, 1, 1)
print("(1, 0, 8) = ascend", tuple(sigma), "of", tuple(base))
print("Hecke representatives for y=6:", [tuple(s) for s in P.hecke_orbits(6)])

r = P.verify_para3(1, 30, 6, 1, 80)
print("cube parametrization, h=30, y=6:", r.hits, "forms; passed =", r.passed)

# A deliberately starved generation bound is reported as inconclusive, never as a pass.
r = P.verify_para1(1, 5, 1, 30, gen_bound=2)
print("starved generator box: misses =", len(r.misses), "inconclusive =", r.inconclusive)
