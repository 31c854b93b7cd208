"""Type I and Type II discrepancy sums for roots of a*l^2 + h mod k."""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable

import numpy as np

from ..modcore import factor_range, factorize, is_squarefree, rho_from_factorization, roots_from_factorization
from .bump import BumpFn
from .report import DEFAULT_THETA, DiscrepancyRow, ExperimentReport, check_theta


def _check_ah(a: int, h: int) -> None:
    if a < 1 or h < 1:
        raise ValueError("a and h must be positive")
    if not is_squarefree(h):
        raise ValueError(f"h={h} is not squarefree")
    if math.gcd(a, h) != 1:
        raise ValueError("gcd(a, h) must be 1")


def window_sum(roots, k: int, psi: BumpFn, X: float) -> float:
    """Sum of psi(l/X) over integers l in the support that reduce to one of the roots mod k."""
    if len(roots) == 0 or psi.amplitude == 0:
        return 0.0
    lo, hi = psi.lo * X, psi.hi * X
    r = np.asarray(roots, dtype=np.int64)
    jlo = math.floor((lo - k) / k)
    jhi = math.ceil(hi / k)
    ls = (r[:, None] + k * np.arange(jlo, jhi + 1, dtype=np.int64)[None, :]).ravel()
    ls = np.sort(ls[(ls > lo) & (ls < hi)])
    return math.fsum(psi(ls / X)) if ls.size else 0.0


def _type1_chunk(args):
    a, h, lo, hi, X, psi2 = args
    out = []
    for k, fac in zip(range(lo, hi + 1), factor_range(lo, hi + 1)):
        out.append((window_sum(roots_from_factorization(a, h, fac), k, psi2, X), rho_from_factorization(a, h, fac)))
    return out


def _chunks(lo: int, hi: int, parts: int):
    step = max(1, -(-(hi - lo + 1) // parts))
    return [(s, min(hi, s + step - 1)) for s in range(lo, hi + 1, step)]


def _map(fn, tasks, workers: int):
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, tasks))


def type1_bound(X, D, h, theta) -> float:
    return math.sqrt(D * X) * (math.sqrt(D) + h ** 0.25) * (1 + X / (D * (D + math.sqrt(h)))) ** theta


def type1(X: int, K: int, D: int, a: int, h: int, psi1: BumpFn, psi2: BumpFn,
          theta: float = DEFAULT_THETA, workers: int = 1) -> ExperimentReport:
    """sum_{d<=D} | sum_{d|k} psi1(k/K) (sum_{a l^2+h = 0 (k)} psi2(l/X) - rho(k)/k X int psi2) |."""
    t0 = time.perf_counter()
    theta = check_theta(theta)
    _check_ah(a, h)
    if not (1 <= D <= K <= X * X and D * D <= X):
        raise ValueError("need 1 <= D <= K <= X^2 and D <= X^(1/2)")
    kmin = max(1, math.floor(psi1.lo * K) + 1)
    kmax = math.ceil(psi1.hi * K) - 1
    ks = np.arange(kmin, kmax + 1)
    if kmax >= kmin:
        parts = _map(_type1_chunk, [(a, h, lo, hi, X, psi2) for lo, hi in _chunks(kmin, kmax, max(1, workers) * 4)], workers)
        flat = [row for part in parts for row in part]
    else:
        flat = []
    win = np.array([w for w, _ in flat], dtype=float)
    rh = np.array([r for _, r in flat], dtype=float)
    w1 = psi1(ks / K) if ks.size else np.zeros(0)
    main_k = rh / ks * X * psi2.integral if ks.size else np.zeros(0)
    rows = []
    for d in range(1, D + 1):
        sl = slice((-kmin) % d, None, d)
        exact = math.fsum(w1[sl] * win[sl])
        main = math.fsum(w1[sl] * main_k[sl])
        rows.append(DiscrepancyRow(f"d={d}", exact, main, exact - main))
    total = math.fsum(abs(r.error) for r in rows)
    bound = type1_bound(X, D, h, theta)
    trivial = math.fsum(abs(r.exact_count) + abs(r.main_term) for r in rows)
    return ExperimentReport(
        "type1", dict(X=X, K=K, D=D, a=a, h=h, theta=theta, psi1=psi1.to_dict(), psi2=psi2.to_dict()),
        rows, total, trivial, bound, total / bound, time.perf_counter() - t0)


def type2_bound(X, M, N, h, theta) -> float:
    return (math.sqrt(M * X) + M ** 0.25 * math.sqrt(N * X) * (math.sqrt(N) + h ** 0.125)
            * (1 + X / (math.sqrt(M) * N * (N + h ** 0.25))) ** theta)


def _type2_chunk(args):
    a, h, ms, ns, alpha, beta, X, psi = args
    rows = []
    for n in ns:
        bn = beta[n]
        ex, mn_ = [], []
        for m in ms:
            c = alpha[m] * bn
            if c == 0:
                continue
            k = m * n
            fac = factorize(k)
            ex.append(c * window_sum(roots_from_factorization(a, h, fac), k, psi, X))
            mn_.append(c * rho_from_factorization(a, h, fac) / k * X * psi.integral)
        e, mt = math.fsum(ex), math.fsum(mn_)
        rows.append((n, e, mt))
    return rows


COEFFICIENTS: dict[str, Callable[[int], float]] = {}


def _coef(name):
    def deco(fn):
        COEFFICIENTS[name] = fn
        return fn
    return deco


@_coef("one")
def _one(n):
    return 1.0


@_coef("zero")
def _zero(n):
    return 0.0


@_coef("squarefree")
def _sqf(n):
    return 1.0 if is_squarefree(n) else 0.0


@_coef("mobius")
def _mu(n):
    from ..modcore import mobius
    return float(mobius(n))


def type2(X: int, M: int, N: int, a: int, h: int, alpha, beta, psi: BumpFn,
          theta: float = DEFAULT_THETA, workers: int = 1) -> ExperimentReport:
    """Bilinear sum over m ~ M, n ~ N (M < m <= 2M) of alpha_m beta_n times the mn discrepancy.

    ``alpha`` and ``beta`` are callables or names from ``COEFFICIENTS``.
    """
    t0 = time.perf_counter()
    theta = check_theta(theta)
    _check_ah(a, h)
    if not (1 <= N <= M <= X <= M * N):
        raise ValueError("need N <= M <= X <= MN")
    for name in (alpha, beta):
        if isinstance(name, str) and name not in COEFFICIENTS:
            raise ValueError(f"unknown coefficient {name!r}; choose from {', '.join(COEFFICIENTS)}")
    alpha = COEFFICIENTS[alpha] if isinstance(alpha, str) else alpha
    beta = COEFFICIENTS[beta] if isinstance(beta, str) else beta
    ms = range(M + 1, 2 * M + 1)
    ns = list(range(N + 1, 2 * N + 1))
    al = {m: float(alpha(m)) for m in ms}
    be = {n: float(beta(n)) for n in ns}
    for n, v in be.items():
        if v and not is_squarefree(n):
            raise ValueError(f"beta is supported on non-squarefree n={n}")
    if any(abs(v) > 1 for v in (*al.values(), *be.values())):
        raise ValueError("coefficients must be bounded by 1")
    tasks = [(a, h, ms, ns[lo - N - 1:hi - N], al, be, X, psi) for lo, hi in _chunks(N + 1, 2 * N, max(1, workers) * 2)]
    flat = [r for part in _map(_type2_chunk, tasks, workers) for r in part]
    rows = [DiscrepancyRow(f"n={n}", e, mt, e - mt) for n, e, mt in flat]
    total = abs(math.fsum(r.error for r in rows))
    bound = type2_bound(X, M, N, h, theta)
    trivial = math.fsum(abs(r.exact_count) + abs(r.main_term) for r in rows)
    name = lambda f: next((k for k, v in COEFFICIENTS.items() if v is f), getattr(f, "__name__", "custom"))
    return ExperimentReport(
        "type2", dict(X=X, M=M, N=N, a=a, h=h, theta=theta, alpha=name(alpha), beta=name(beta), psi=psi.to_dict()),
        rows, total, trivial, bound, total / bound, time.perf_counter() - t0)
