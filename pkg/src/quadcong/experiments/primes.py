"""Sums over primes: the log-weighted root-count sum and the distribution of roots nu/p."""

from __future__ import annotations

import cmath
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from ..modcore import _roots_mod_p, is_squarefree, jacobi, primes_between, rho
from .discrepancy import _map


def _rho_p(a: int, h: int, p: int) -> int:
    if p == 2 or (a * h) % p == 0:
        return rho(a, h, p)
    return 1 + jacobi(-a * h, p)


def hypothesis_sum(a: int, h: int, Y: int, Z: int) -> float:
    """sum_{Y <= p < Z} rho(p) log p / p."""
    if not 2 <= Y < Z:
        raise ValueError("need 2 <= Y < Z")
    terms = []
    for block in primes_between(Y, Z):
        for p in block.tolist():
            r = _rho_p(a, h, p)
            if r:
                terms.append(r * math.log(p) / p)
    return math.fsum(terms)


def hypothesis_rhs(Y: int, Z: int, eps: float) -> float:
    if eps <= 0:
        raise ValueError("eps must be positive")
    return (1 + eps) * math.log(Z / Y) + 1 / eps


def _as_interval(iv) -> tuple[Fraction, Fraction]:
    lo, hi = (Fraction(x) for x in iv)
    if not 0 <= lo < hi <= 1:
        raise ValueError(f"malformed interval ({lo}, {hi}]")
    return lo, hi


def _roots_block(args):
    """Roots in [1, p] for primes in [lo, hi]; returns flat (p, nu) int arrays."""
    a, h, lo, hi = args
    ps, nus = [], []
    for block in primes_between(lo, hi + 1):
        for p in block.tolist():
            for r in _roots_mod_p(a, h, p):
                ps.append(p)
                nus.append(r or p)
    return np.array(ps, dtype=np.int64), np.array(nus, dtype=np.int64)


def prime_roots(X: int, a: int, h: int, workers: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """All pairs (p, nu) with p <= X, 1 <= nu <= p and a nu^2 + h = 0 mod p, in increasing p."""
    if X < 2:
        return np.zeros(0, np.int64), np.zeros(0, np.int64)
    parts = max(1, workers) * 4
    step = -(-(X - 1) // parts)
    tasks = [(a, h, s, min(X, s + step - 1)) for s in range(2, X + 1, step)]
    res = _map(_roots_block, tasks, workers)
    return np.concatenate([r[0] for r in res]), np.concatenate([r[1] for r in res])


@dataclass
class EquidistRow:
    alpha: str
    beta: str
    count: int
    expected: float
    deviation: float


@dataclass
class EquidistTable:
    X: int
    a: int
    h: int
    total: int
    rows: list[EquidistRow] = field(default_factory=list)

    CSV_HEADER = ("alpha", "beta", "count", "expected", "deviation")

    def csv_rows(self):
        return [(r.alpha, r.beta, r.count, r.expected, r.deviation) for r in self.rows]

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        d["rows"] = [EquidistRow(**r) for r in d["rows"]]
        return cls(**d)

    def max_deviation(self) -> float:
        return max(abs(r.deviation) for r in self.rows)


def _count_in(ps, nus, lo: Fraction, hi: Fraction) -> int:
    # nu/p in (lo, hi]  <=>  nu*lo.den > lo.num*p  and  nu*hi.den <= hi.num*p
    big = int(ps.max(initial=0)) * max(lo.denominator, hi.denominator, lo.numerator, hi.numerator)
    if big < 1 << 62:
        m = (nus * lo.denominator > lo.numerator * ps) & (nus * hi.denominator <= hi.numerator * ps)
        return int(np.count_nonzero(m))
    return sum(1 for p, v in zip(ps.tolist(), nus.tolist()) if lo < Fraction(v, p) <= hi)


def equidist(X: int, a: int, h: int, intervals, workers: int = 1) -> EquidistTable:
    """Counts of root fractions nu/p in each interval against (beta - alpha) * sum_{p<=X} rho(p)."""
    if not is_squarefree(h) or math.gcd(a, h) != 1 or a < 1:
        raise ValueError("need squarefree h, a >= 1 and gcd(a, h) = 1")
    ivs = [_as_interval(iv) for iv in intervals]
    ps, nus = prime_roots(X, a, h, workers)
    total = int(ps.size)
    table = EquidistTable(X, a, h, total)
    for lo, hi in ivs:
        c = _count_in(ps, nus, lo, hi)
        exp = float((hi - lo) * total)
        dev = c / exp - 1 if exp else 0.0
        table.rows.append(EquidistRow(str(lo), str(hi), c, exp, dev))
    return table


def deciles() -> list[tuple[Fraction, Fraction]]:
    return [(Fraction(j, 10), Fraction(j + 1, 10)) for j in range(10)]


def weyl_sum(X: int, a: int, h: int, m: int, workers: int = 1) -> complex:
    """sum_{p<=X} sum_nu e(m nu / p)."""
    ps, nus = prime_roots(X, a, h, workers)
    # reduce m*nu mod p exactly so the phase is symmetric in m
    r = (m * nus) % ps
    r = np.where(2 * r > ps, r - ps, r)
    ang = 2 * np.pi * r / ps
    re = math.fsum(np.cos(ang))
    # r = p/2 only at p = 2; sin(pi) is not exactly 0 in floating point
    im = math.fsum(np.where(2 * r == ps, 0.0, np.sin(ang)))
    return complex(re, im)
