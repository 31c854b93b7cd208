"""Automorphic kernel sums with the majorant k(u) = 1{u <= Z} / sqrt(1 + u).

The true smooth kernels are only bounded above by this majorant, so every value
here is an upper-bound surrogate for the corresponding spectral quantity.
"""

from __future__ import annotations

import math
import time
from fractions import Fraction

from ..lattice import SymMat, heegner_points, projective_line
from ..modcore import is_squarefree, roots_mod_k
from .discrepancy import _map
from .report import DiscrepancyRow, ExperimentReport


def _cform(c: int, d: int, g) -> int:
    return c * c * g[0] + 2 * c * d * g[1] + d * d * g[2]


def heegner_neighbours(z2: SymMat, h: int, Z) -> list[tuple[SymMat, Fraction]]:
    """All w1 with det h and u(w1, z2) <= Z, with their u values."""
    Z = Fraction(Z)
    _, b2, c2 = z2
    out = []
    c1 = 1
    while True:
        gap = (c1 - c2) ** 2
        lim = 4 * Z * c1 * c2
        if gap > lim:
            if c1 > c2:
                break
            c1 += 1
            continue
        # (b1 c2 - b2 c1)^2 <= h (lim - gap)
        room = h * (lim - gap)
        w = math.isqrt(math.floor(room))
        lo = -((w - b2 * c1) // c2)  # ceil((b2 c1 - w) / c2)
        hi = (b2 * c1 + w) // c2
        for r in roots_mod_k(1, h, c1).roots:
            b1 = lo + (r - lo) % c1
            while b1 <= hi:
                num = (b1 * c2 - b2 * c1) ** 2 + h * gap
                if num <= 4 * h * Z * c1 * c2:
                    out.append((SymMat((b1 * b1 + h) // c1, b1, c1), Fraction(num, 4 * h * c1 * c2)))
                b1 += c1
        c1 += 1
    return out


def _heegner_q(args):
    q, h, pairs = args
    line = projective_line(q)
    total, diag = [], 0
    for z2, nbrs in pairs:
        taus = [(c, d) for c, d in line if _cform(c, d, z2) % q == 0]
        if not taus:
            continue
        for w1, u in nbrs:
            n = sum(1 for c, d in taus if _cform(c, d, w1) % q == 0)
            if n:
                total.append(n / math.sqrt(1 + u))
                if w1 == z2:
                    diag += n
    return q, math.fsum(total), diag


def heegner_bound(Q: int, h: int, Z) -> float:
    return Q * math.sqrt(h) + h * math.sqrt(Z)


def kernel_heegner(Qlo: int, Qhi: int, h: int, Z, workers: int = 1) -> ExperimentReport:
    """sum over q in [Qlo, Qhi] of sum_{z2 in Lambda_h} sum_{w1 in S_h} k(u(w1, z2)) #{tau : q | c(tau w1), c(tau z2)}.

    Levels with gcd(h, q^2) not squarefree are skipped and listed under ``skipped_q``.
    ``trivial_bound`` holds the diagonal (w1 = z2) count.
    """
    t0 = time.perf_counter()
    if h < 1 or Qlo < 1 or Qhi < Qlo or Z < 0:
        raise ValueError("need h >= 1, 1 <= Qlo <= Qhi, Z >= 0")
    Zf = Fraction(Z)
    pairs = [(hp.sym, heegner_neighbours(hp.sym, h, Zf)) for hp in heegner_points(h)]
    qs = [q for q in range(Qlo, Qhi + 1) if is_squarefree(math.gcd(h, q * q))]
    skipped = [q for q in range(Qlo, Qhi + 1) if q not in qs]
    res = _map(_heegner_q, [(q, h, pairs) for q in qs], workers)
    rows = [DiscrepancyRow(f"q={q}", v, 0.0, v) for q, v, _ in res]
    total = math.fsum(r.error for r in rows)
    bound = heegner_bound(Qhi - Qlo + 1, h, float(Zf))
    return ExperimentReport(
        "kernel_heegner", dict(Qlo=Qlo, Qhi=Qhi, h=h, Z=str(Zf), skipped_q=skipped),
        rows, total, float(sum(d for _, _, d in res)), bound, total / bound, time.perf_counter() - t0)


def u_skewed_exact(g, R: Fraction) -> Fraction:
    a, b, c, d = g
    return (a * a + (b / R) ** 2 + (c * R) ** 2 + d * d - 2) / 4


def support_box(Z, R) -> list[tuple[tuple[int, int, int, int], float]]:
    """Every g' in SL2(Z) (both signs) with u_R(g') <= Z, paired with the majorant weight."""
    Z, R = Fraction(Z), Fraction(R)
    s = 4 * Z + 2  # each squared scaled entry is at most 4u + 2
    ea, eb, ec = math.isqrt(math.floor(s)), math.isqrt(math.floor(s * R * R)), math.isqrt(math.floor(s / (R * R)))
    out = []
    for a in range(-ea, ea + 1):
        for d in range(-ea, ea + 1):
            for b in range(-eb, eb + 1):
                # c is forced by ad - bc = 1
                if b == 0:
                    if a * d != 1:
                        continue
                    cs = range(-ec, ec + 1)
                else:
                    if (a * d - 1) % b:
                        continue
                    cs = ((a * d - 1) // b,)
                for c in cs:
                    g = (a, b, c, d)
                    u = u_skewed_exact(g, R)
                    if u <= Z:
                        out.append((g, 1 / math.sqrt(1 + float(u))))
    return out


def lowertriang_bound(D, N0, N1, N2, T, V, Z, R) -> float:
    return N0 * T * V * (1 + R) * (N1 * N2 + N1 * V + N2 * V) + V * V * (1 / (D * R) + math.sqrt(Z))


def _lt_cells(D, N0, N1, N2, T):
    for t in range(1, T + 1):
        for n0 in range(1, N0 + 1):
            for n1 in range(1, N1 + 1):
                for n2 in range(1, N2 + 1):
                    if math.gcd(n1, n2) != 1:
                        continue
                    m = n0 * n1 * n2
                    for d in range(D + 1, m + 1):
                        if m % d == 0:
                            yield t, n0, n1, n2, d


def _lt_cell(args):
    (t, n0, n1, n2, d), V, box = args
    s = d * n0 * t * t
    q = s * n1 * n2
    x = s * n1 * pow(n1, -1, n2) if n2 > 1 else 0
    terms = []
    for v in range(-V, V + 1):
        for vp in range(-V, V + 1):
            for (a, b, c, dd), w in box:
                # gamma = n[-x v']^t g' n[x v]^t must lie in Gamma_0(q)
                if (c - x * vp * a + x * v * dd - x * x * v * vp * b) % q == 0:
                    terms.append(w)
    return math.fsum(terms)


def kernel_lowertriang(D: int, N0: int, N1: int, N2: int, T: int, V: int, Z, R, workers: int = 1) -> ExperimentReport:
    """Quintuple sum of <beta | K_{s n1 n2} k_{Z,R} | beta> with s = d n0 t^2 and d | n0 n1 n2, d > D.

    Summation runs over the full group Gamma_0(q), both signs included.
    """
    t0 = time.perf_counter()
    if min(D, N0, N1, N2, T, V) < 1 or Z < 0 or R <= 0:
        raise ValueError("need D, N0, N1, N2, T, V >= 1, Z >= 0 and R > 0")
    box = support_box(Z, R)
    cells = list(_lt_cells(D, N0, N1, N2, T))
    vals = _map(_lt_cell, [(c, V, box) for c in cells], workers)
    rows = [DiscrepancyRow("t={} n0={} n1={} n2={} d={}".format(*c), v, 0.0, v) for c, v in zip(cells, vals)]
    total = math.fsum(vals)
    bound = lowertriang_bound(D, N0, N1, N2, T, V, float(Z), float(R))
    return ExperimentReport(
        "kernel_lowertriang", dict(D=D, N0=N0, N1=N1, N2=N2, T=T, V=V, Z=str(Fraction(Z)), R=str(Fraction(R))),
        rows, total, float(len(box)), bound, total / bound, time.perf_counter() - t0)
