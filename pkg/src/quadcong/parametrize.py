"""Brute-force verifiers for the parametrizations of symmetric matrices.

``S(a, h, d)`` denotes the triples ``(aa, bb, cc)`` with ``aa*cc - bb**2 = a*h``,
``aa, cc > 0``, ``cc = 0 (mod a*d)`` and ``bb = 0 (mod a)``.  Each verifier
enumerates the left-hand set inside a box on the matrix entries, regenerates
it from the right-hand parametrization, and reports every element missed or
produced more often than it should be.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterator, NamedTuple

from .lattice import (
    SymMat,
    UniMat,
    act,
    coset_reps,
    heegner_points,
    p1_class,
    reduce,
)
from .modcore import divisors, factorize, is_squarefree


class HeckeOrbitRep(NamedTuple):
    e: int
    f: int
    g: int

    def matrix(self) -> UniMat:
        return UniMat(self.e, self.f, 0, self.g)


@dataclass
class ParamReport:
    parameters: dict
    elements_enumerated: int = 0
    hits: int = 0
    misses: list = field(default_factory=list)
    double_hits: list = field(default_factory=list)
    extras: list = field(default_factory=list)
    inconclusive: bool = False

    @property
    def passed(self) -> bool:
        return not (self.misses or self.double_hits or self.extras or self.inconclusive)

    def to_dict(self) -> dict:
        out = asdict(self)
        for key in ("misses", "double_hits", "extras"):
            out[key] = [list(x) if isinstance(x, tuple) else x for x in out[key]]
        out["passed"] = self.passed
        return out

    def merge(self, other: "ParamReport") -> "ParamReport":
        return ParamReport(
            self.parameters,
            self.elements_enumerated + other.elements_enumerated,
            self.hits + other.hits,
            self.misses + other.misses,
            self.double_hits + other.double_hits,
            self.extras + other.extras,
            self.inconclusive or other.inconclusive,
        )


def in_S(g: SymMat, a: int, h: int, d: int) -> bool:
    return (
        g.aa > 0
        and g.cc > 0
        and g.det() == a * h
        and g.cc % (a * d) == 0
        and g.bb % a == 0
    )


def enumerate_S(a: int, h: int, d: int, entry_bound: int) -> list[SymMat]:
    """All of S(a, h, d) with every entry bounded by entry_bound in absolute value."""
    out = []
    B = entry_bound
    step = a * d
    for cc in range(step, B + 1, step):
        for bb in range(-(B // a) * a, B + 1, a):
            num = bb * bb + a * h
            if num % cc == 0 and num // cc <= B:
                out.append(SymMat(num // cc, bb, cc))
    return sorted(out)


def _in_box(g: SymMat, B: int) -> bool:
    return abs(g.aa) <= B and abs(g.bb) <= B and abs(g.cc) <= B


def sl2_box(bound: int) -> Iterator[UniMat]:
    """Projective representatives of SL2(Z) with all entries bounded by ``bound``."""
    for c in range(0, bound + 1):
        for d in range(-bound, bound + 1):
            if c == 0 and d != 1:
                continue
            if math.gcd(c, d) != 1:
                continue
            if c == 0:
                for b in range(-bound, bound + 1):
                    yield UniMat(1, b, 0, 1)
                continue
            # a0*d - b0*c = 1
            a0 = pow(d, -1, c) if c > 1 else 0
            b0 = (a0 * d - 1) // c
            tlo = -((bound + a0) // c)
            thi = (bound - a0) // c
            for t in range(tlo, thi + 1):
                a, b = a0 + t * c, b0 + t * d
                if abs(a) <= bound and abs(b) <= bound:
                    yield UniMat(a, b, c, d)


def verify_para1(a: int, h: int, d: int, entry_bound: int, gen_bound: int | None = None) -> ParamReport:
    """Check S(a, h, d) against the union over Heegner points, cosets of Gamma_0(ad) and the group.

    Every target triple must be produced by exactly ``|stabilizer|`` pairs
    (tau, gamma), all coming from the same Heegner representative.
    """
    if math.gcd(a, h) != 1:
        raise ValueError("need gcd(a, h) = 1")
    if not is_squarefree(h):
        raise ValueError("h must be squarefree")
    B = entry_bound
    params = dict(a=a, h=h, d=d, entry_bound=B)
    report = ParamReport(params)
    if B < 1:
        return report
    q = a * d
    # for reduced z and beta z in the box: a^2 + b^2 <= 2B and c^2 + d^2 <= 2B
    required = math.isqrt(2 * B)
    gen = 2 * required if gen_bound is None else gen_bound
    report.parameters = dict(params, generation_bound=gen)
    report.inconclusive = gen < required

    targets = enumerate_S(a, h, d, B)
    report.elements_enumerated = len(targets)
    taus = {p1_class(t.c, t.d, q): t for t in coset_reps(q)}
    zs = [z.sym for z in heegner_points(a * h)]
    admissible = {
        (cls, z): (lambda y: y.cc % q == 0 and y.bb % a == 0)(act(tau, z))
        for cls, tau in taus.items()
        for z in zs
    }

    hits: Counter = Counter()
    origin: dict = defaultdict(set)
    for beta in sl2_box(gen):
        cls = p1_class(beta.c, beta.d, q)
        tau = taus.get(cls)
        if tau is None:
            # a gap in the coset list shows up as misses, not a crash
            continue
        gamma = beta @ tau.inv()
        if not gamma.in_gamma0(q):
            raise RuntimeError(f"coset bookkeeping broken at {beta}")
        for z in zs:
            if not admissible[cls, z]:
                continue
            w = act(gamma, act(tau, z))
            if _in_box(w, B):
                hits[w] += 1
                origin[w].add(z)

    target_set = set(targets)
    for w in targets:
        expected = reduce(w)[0].stab_order
        n = hits.get(w, 0)
        if n == expected and len(origin[w]) == 1:
            report.hits += 1
        elif n < expected and len(origin[w]) <= 1:
            report.misses.append(tuple(w))
        else:
            report.double_hits.append(tuple(w))
    report.extras = sorted(tuple(w) for w in hits if w not in target_set)
    return report


def _check_para2(a, h, n1, n2):
    if math.gcd(a, h) != 1:
        raise ValueError("need gcd(a, h) = 1")
    if math.gcd(n1, n2) != 1:
        raise ValueError("need gcd(n1, n2) = 1")


def pair_set(a: int, h: int, s: int, n1: int, n2: int, entry_bound: int) -> set:
    """Pairs (g1, g2) in S(a,h,s*n1) x S(a,h,s*n2) with equal aa and bb1 = bb2 (mod s*aa), inside the box."""
    _check_para2(a, h, n1, n2)
    by_aa = defaultdict(list)
    for g2 in enumerate_S(a, h, s * n2, entry_bound):
        by_aa[g2.aa].append(g2)
    out = set()
    for g1 in enumerate_S(a, h, s * n1, entry_bound):
        for g2 in by_aa.get(g1.aa, ()):
            if (g1.bb - g2.bb) % (s * g1.aa) == 0:
                out.add((g1, g2))
    return out


def _lower(x: int) -> UniMat:
    return UniMat(1, 0, x, 1)


def verify_para2(a: int, h: int, s: int, n1: int, n2: int, entry_bound: int) -> ParamReport:
    """Check the pair set against the union over (u1, u2) in Z^2/(n2, n1)Z of lower-triangular translates."""
    _check_para2(a, h, n1, n2)
    B = entry_bound
    report = ParamReport(dict(a=a, h=h, s=s, n1=n1, n2=n2, entry_bound=B))
    lhs = pair_set(a, h, s, n1, n2, B)
    report.elements_enumerated = len(lhs)

    produced: Counter = Counter()
    mod = a * s * n1 * n2
    for aa in range(1, B + 1):
        # u1 in [0, n2) shifts bb by a*s*n1*u1*aa >= 0, so bb may start this low
        lo = -B - a * s * n1 * (n2 - 1) * aa
        for bb in range(-(-lo // a) * a, B + 1, a):
            num = bb * bb + a * h
            if num % aa:
                continue
            cc = num // aa
            if cc % mod:
                continue
            g = SymMat(aa, bb, cc)
            step2 = a * s * n2 * aa
            for u1 in range(n2):
                g1 = act(_lower(a * s * n1 * u1), g)
                if not _in_box(g1, B):
                    continue
                # |bb + a*s*n2*u2*aa| <= B
                u2lo = -((B + bb) // step2)
                u2hi = (B - bb) // step2
                for u2 in range(u2lo, u2hi + 1):
                    g2 = act(_lower(a * s * n2 * u2), g)
                    if _in_box(g2, B):
                        produced[(g1, g2)] += 1

    for pair in sorted(lhs):
        n = produced.get(pair, 0)
        if n == 0:
            report.misses.append(_flat(pair))
        elif n > 1:
            report.double_hits.append(_flat(pair))
        else:
            report.hits += 1
    report.extras = sorted(_flat(p) for p in produced if p not in lhs)
    return report


def _flat(pair) -> tuple:
    return tuple(pair[0]) + tuple(pair[1])


# ----------------------------------------------------------------------------
# Hecke orbits and the cubic-discriminant decomposition
# ----------------------------------------------------------------------------

def hecke_orbits(h: int) -> list[HeckeOrbitRep]:
    """Upper-triangular (e, f; 0, g) with e*g = h and 0 <= f < g."""
    if h < 1:
        raise ValueError("h must be positive")
    return [HeckeOrbitRep(h // g, f, g) for g in divisors(h) for f in range(g)]


def hecke_apply(h: int, f: Callable, g) -> float:
    """(1/sqrt h) * sum over sigma in H_h of f(sigma g / sqrt h), g a real 2x2 matrix (a, b, c, d)."""
    if h < 1:
        raise ValueError("h must be positive")
    a, b, c, d = g
    r = math.sqrt(h)
    terms = []
    for e, ff, gg in hecke_orbits(h):
        m = ((e * a + ff * c) / r, (e * b + ff * d) / r, gg * c / r, gg * d / r)
        terms.append(f(m))
    return math.fsum(terms) / r


def _check_cube(a, h, y, d):
    if y < 1 or h % y:
        raise ValueError("need y | h")
    if not is_squarefree(math.gcd(h, y * y)):
        raise ValueError("need gcd(h, y^2) squarefree")
    if math.gcd(a, h) != 1:
        raise ValueError("need gcd(a, h) = 1")
    if math.gcd(y, a * d) != 1:
        raise ValueError("need gcd(y, a*d) = 1")


def _descend(sigma: HeckeOrbitRep, g: SymMat, y: int) -> SymMat | None:
    """(sigma g sigma^T) / y^2 when integral."""
    m = act(sigma.matrix(), g)
    y2 = y * y
    if m.aa % y2 or m.bb % y2 or m.cc % y2:
        return None
    return SymMat(m.aa // y2, m.bb // y2, m.cc // y2)


def ascend(sigma: HeckeOrbitRep, base: SymMat) -> SymMat:
    """(y sigma^{-1}) acting on base; y sigma^{-1} = (g, -f; 0, e)."""
    return act(UniMat(sigma.g, -sigma.f, 0, sigma.e), base)


def cube_decompose(g: SymMat, h: int, y: int, a: int, d: int) -> tuple[HeckeOrbitRep, SymMat]:
    """Write g in S(a, h*y^2, d) as (y sigma^{-1}) acting on a base in S(a, h, d)."""
    _check_cube(a, h, y, d)
    if not in_S(g, a, h * y * y, d):
        raise ValueError(f"{g} is not in S(a, h y^2, d)")
    # largest e | y with e^2 | cc
    e = max(e for e in divisors(y) if g.cc % (e * e) == 0)
    gg = y // e
    b1, c1 = g.bb // e, g.cc // (e * e)
    # solve b1 + f*c1 = 0 (mod gg); gcd(gg, c1) divides b1
    t = math.gcd(gg, c1)
    if b1 % t:
        raise RuntimeError(f"no decomposition for {g}")
    m = gg // t
    f0 = (-(b1 // t) * pow(c1 // t, -1, m)) % m if m > 1 else 0
    found = []
    for k in range(t):
        sigma = HeckeOrbitRep(e, (f0 + k * m) % gg, gg)
        base = _descend(sigma, g, y)
        if base is not None and in_S(base, a, h, d):
            found.append((sigma, base))
    if len(found) != 1:
        raise RuntimeError(f"expected a unique decomposition of {g}, found {len(found)}")
    return found[0]


def verify_para3(a: int, h: int, y: int, d: int, entry_bound: int) -> ParamReport:
    """Check S(a, h y^2, d) = disjoint union over sigma in H_y of (y sigma^{-1}) S(a, h, d) inside the box."""
    _check_cube(a, h, y, d)
    B = entry_bound
    report = ParamReport(dict(a=a, h=h, y=y, d=d, entry_bound=B))
    targets = enumerate_S(a, h * y * y, d, B)
    report.elements_enumerated = len(targets)
    orbits = hecke_orbits(y)

    # generation side: bases of a box image satisfy the same entry bound
    produced: Counter = Counter()
    for base in enumerate_S(a, h, d, B):
        for sigma in orbits:
            w = ascend(sigma, base)
            if _in_box(w, B):
                produced[w] += 1

    target_set = set(targets)
    for g in targets:
        valid = [s for s in orbits if (lambda b: b is not None and in_S(b, a, h, d))(_descend(s, g, y))]
        n = produced.get(g, 0)
        if not valid or n == 0:
            report.misses.append(tuple(g))
        elif len(valid) > 1 or n > 1:
            report.double_hits.append(tuple(g))
        else:
            sigma, _ = cube_decompose(g, h, y, a, d)
            if sigma != valid[0]:
                report.double_hits.append(tuple(g))
            else:
                report.hits += 1
    report.extras = sorted(tuple(w) for w in produced if w not in target_set)
    return report
