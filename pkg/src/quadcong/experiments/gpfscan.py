"""Greatest prime factors of a*n^2 + h over n in [X, 2X], and the Chebyshev identity."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import asdict, dataclass, field

import numpy as np

from ..modcore import _roots_mod_p, checked, factorize, primes_upto, roots_mod_prime_power

HIST_EDGES = np.round(np.arange(0, 3.5 + 1e-9, 0.05), 2)


@dataclass
class GpfRecord:
    n: int
    value: int
    gpf: int
    exponent: float


@dataclass
class GpfReport:
    X: int
    a: int
    h: int
    max_gpf: int
    argmax: int
    exponent: float
    histogram: list[int]
    bin_edges: list[float]
    records: list[GpfRecord] = field(default_factory=list)

    CSV_HEADER = ("n", "value", "gpf", "exponent")

    def csv_rows(self):
        return [(r.n, r.value, r.gpf, r.exponent) for r in self.records]

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        d["records"] = [GpfRecord(**r) for r in d["records"]]
        return cls(**d)


def _sieve(X: int, a: int, h: int):
    """Root sieve over n in [X, 2X]: returns (values, largest small prime factor, cofactor)."""
    top = checked(a * (2 * X) ** 2 + h)
    if top >= 1 << 62:
        raise OverflowError("a*(2X)^2 + h exceeds the int64 sieve range")
    vals = np.array([a * n * n + h for n in range(X, 2 * X + 1)], dtype=np.int64)
    rem = vals.copy()
    small = np.ones_like(vals)
    for p in primes_upto(math.isqrt(int(top))).tolist():
        for r in _roots_mod_p(a, h, p):
            sub = rem[(r - X) % p :: p]
            if sub.size == 0:
                continue
            small[(r - X) % p :: p] = p
            while True:
                mask = sub % p == 0
                if not mask.any():
                    break
                sub[mask] //= p
    return vals, small, rem


def gpf_scan(X: int, a: int, h: int) -> GpfReport:
    if X < 2:
        raise ValueError("X must be at least 2")
    if a < 1 or h < 1:
        raise ValueError("a and h must be positive")
    vals, small, rem = _sieve(X, a, h)
    # every prime factor above sqrt(max value) occurs at most once, so rem is 1 or prime
    g = np.maximum(small, rem)
    logX = math.log(X)
    expo = np.log(g.astype(float)) / logX
    i = int(np.argmax(g))
    hist, _ = np.histogram(np.minimum(expo, HIST_EDGES[-1]), bins=HIST_EDGES)
    recs = [GpfRecord(X + j, int(v), int(q), float(e)) for j, (v, q, e) in enumerate(zip(vals, g, expo))]
    return GpfReport(X, a, h, int(g[i]), X + i, math.log(int(g[i])) / logX, hist.tolist(), HIST_EDGES.tolist(), recs)


@dataclass
class ChebyshevResult:
    X: int
    a: int
    h: int
    lhs: float
    rhs: float
    difference: float
    mismatched_primes: list[int]
    distinct_primes: int

    def to_dict(self) -> dict:
        return asdict(self)

    CSV_HEADER = ("X", "a", "h", "lhs", "rhs", "difference")

    def csv_rows(self):
        return [(self.X, self.a, self.h, self.lhs, self.rhs, self.difference)]


def sieve_multiset(X: int, a: int, h: int) -> Counter:
    """Prime multiset of prod_{n in [X, 2X]} (a n^2 + h) from root counts alone."""
    top = a * (2 * X) ** 2 + h
    out: Counter = Counter()

    def hits(r: int, m: int) -> int:
        # #{n in [X, 2X] : n = r mod m}
        return (2 * X - r) // m - (X - 1 - r) // m

    for p in primes_upto(math.isqrt(top)).tolist():
        j, pj, tot = 1, p, 0
        while pj <= top:
            rs = roots_mod_prime_power(a, h, p, j).roots
            if not rs:
                break
            tot += sum(hits(r, pj) for r in rs)
            j += 1
            pj *= p
        if tot:
            out[p] = tot
    _, _, rem = _sieve(X, a, h)
    out.update(int(r) for r in rem.tolist() if r > 1)
    return out


def factor_multiset(X: int, a: int, h: int) -> Counter:
    out: Counter = Counter()
    for n in range(X, 2 * X + 1):
        for p, e in factorize(a * n * n + h).pairs:
            out[p] += e
    return out


def chebyshev_identity(X: int, a: int, h: int) -> ChebyshevResult:
    """sum log(a n^2 + h) against sum_{p^j} log p #{n : p^j | a n^2 + h}.

    ``difference`` is the log-weighted disagreement between the sieve multiset and
    per-n factorization; it is exactly 0.0 when the multisets agree.
    """
    if X < 2:
        raise ValueError("X must be at least 2")
    lhs = math.fsum(math.log(a * n * n + h) for n in range(X, 2 * X + 1))
    sv = sieve_multiset(X, a, h)
    fc = factor_multiset(X, a, h)
    rhs = math.fsum(math.log(p) * e for p, e in sorted(sv.items()))
    bad = sorted(p for p in sv.keys() | fc.keys() if sv[p] != fc[p])
    diff = math.fsum(math.log(p) * (sv[p] - fc[p]) for p in bad)
    return ChebyshevResult(X, a, h, lhs, rhs, diff, bad, len(sv))
