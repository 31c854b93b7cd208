"""The divisor problem for a x^2 + b y^3 along multiples of d."""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass

import numpy as np

from ..modcore import is_squarefree, rho
from .bump import BumpFn
from .report import DiscrepancyRow, ExperimentReport


def rho_cubic(a: int, b: int, y: int, d: int) -> int:
    """#{x mod d : a x^2 + b y^3 = 0 mod d}."""
    if d < 1:
        raise ValueError("d must be positive")
    return rho(a, (b * y**3) % d, d)


@dataclass
class YPoissonResult:
    lhs: float
    main: float
    error: float
    complete_sum: int
    d: int

    CSV_HEADER = ("d", "lhs", "main", "error", "complete_sum")

    def csv_rows(self):
        return [(self.d, self.lhs, self.main, self.error, self.complete_sum)]

    def to_dict(self) -> dict:
        return asdict(self)


def ypoisson_check(a: int, b: int, d: int, B: float, f2: BumpFn) -> YPoissonResult:
    """sum_y f2(y/B) rho_cubic(y) against B int f2 / d * sum_{y mod d} rho_cubic(y)."""
    if not is_squarefree(d) or math.gcd(a, b) != 1:
        raise ValueError("need squarefree d and gcd(a, b) = 1")
    if d > B**0.9:
        raise ValueError("need d <= B^0.9")
    per = [rho_cubic(a, b, y, d) for y in range(d)]
    ys = np.arange(math.floor(f2.lo * B) + 1, math.ceil(f2.hi * B))
    w = f2(ys / B)
    lhs = math.fsum(w * np.array([per[y % d] for y in ys.tolist()], dtype=float))
    main = B * f2.integral * sum(per) / d
    return YPoissonResult(lhs, main, lhs - main, sum(per), d)


def _interior(f: BumpFn, scale: float) -> np.ndarray:
    return np.arange(math.floor(f.lo * scale) + 1, math.ceil(f.hi * scale), dtype=np.int64)


def x2y3_sequences(X, a, b, f, f1, f2, A, B):
    """Dense arrays a_n, b_n (index n = 0..len-1)."""
    xs, ys = _interior(f1, A), _interior(f2, B)
    ns = _interior(f, X)
    top = int(max(a * int(xs.max(initial=0)) ** 2 + b * int(ys.max(initial=0)) ** 3, ns.max(initial=0))) + 1
    an = np.zeros(top)
    wx, wy = f1(xs / A), f2(ys / B)
    for y, vy in zip(ys.tolist(), wy):
        np.add.at(an, a * xs * xs + b * y**3, wx * vy)
    bn = np.zeros(top)
    if f.integral:
        bn[ns] = f(ns / X) * A * B * f1.integral * f2.integral / (X * f.integral)
    return an, bn


def x2y3_typeI2(X: int, K: int, Dmax: int, a: int, b: int, f: BumpFn, f1: BumpFn, f2: BumpFn,
                A: float, B: float) -> ExperimentReport:
    """sum_{d <= Dmax} | sum_{d | k} mu^2(k) f(k/K) sum_n w_{kn} | with w = a - b."""
    t0 = time.perf_counter()
    delta = f.hi - f.lo
    if math.gcd(a, b) != 1 or a < 1 or b < 1:
        raise ValueError("need coprime positive a, b")
    if not (delta * X**0.5 < A <= X**0.5 and delta * X ** (1 / 3) < B <= X ** (1 / 3) * (1 + 1e-12)):
        raise ValueError("need A in (delta X^1/2, X^1/2] and B in (delta X^1/3, X^1/3]")
    if K > X**0.75 or Dmax < 1:
        raise ValueError("need K <= X^3/4 and Dmax >= 1")
    an, bn = x2y3_sequences(X, a, b, f, f1, f2, A, B)
    ks = [k for k in _interior(f, K).tolist() if is_squarefree(k)]
    fk = {k: float(f(k / K)) for k in ks}
    sa = {k: math.fsum(an[k::k]) for k in ks}
    sb = {k: math.fsum(bn[k::k]) for k in ks}
    rows = []
    for d in range(1, Dmax + 1):
        kd = [k for k in ks if k % d == 0]
        ea = math.fsum(fk[k] * sa[k] for k in kd)
        eb = math.fsum(fk[k] * sb[k] for k in kd)
        rows.append(DiscrepancyRow(f"d={d}", ea, eb, ea - eb))
    total = math.fsum(abs(r.error) for r in rows)
    bound = X ** (5 / 6)
    params = dict(X=X, K=K, Dmax=Dmax, a=a, b=b, A=A, B=B, f=f.to_dict(), f1=f1.to_dict(), f2=f2.to_dict(),
                  sum_a=math.fsum(an), sum_b=math.fsum(bn))
    trivial = math.fsum(abs(r.exact_count) + abs(r.main_term) for r in rows)
    return ExperimentReport("x2y3_typeI2", params, rows, total, trivial, bound, total / bound, time.perf_counter() - t0)
