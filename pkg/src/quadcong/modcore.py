"""Exact modular arithmetic.

Jacobi symbols, Tonelli-Shanks, Hensel lifting, CRT assembly of the roots of
``a*v**2 + h = 0 (mod k)``, the root count ``rho(a, h, k)``, and integer
factorization (Miller-Rabin + Pollard-Brent) for the prime-factor scans.

All integers are Python ints, but every value that the rest of the package
would store is range-checked against the signed 128-bit width; crossing it
raises ``OverflowError`` rather than silently growing.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import product
from typing import Iterator, NamedTuple

import numpy as np

INT_LIMIT = 1 << 127


def checked(x: int) -> int:
    """Return ``x`` unchanged, raising ``OverflowError`` outside the 128-bit signed range."""
    if not -INT_LIMIT <= x < INT_LIMIT:
        raise OverflowError(f"integer {x} exceeds the signed 128-bit range")
    return x


class Factorization(NamedTuple):
    pairs: tuple[tuple[int, int], ...]

    def value(self) -> int:
        out = 1
        for p, e in self.pairs:
            out *= p**e
        return out

    def primes(self) -> list[int]:
        return [p for p, _ in self.pairs]


class RootSet(NamedTuple):
    modulus: int
    roots: tuple[int, ...]

    def __len__(self) -> int:  # type: ignore[override]
        return len(self.roots)

    def __iter__(self):  # type: ignore[override]
        return iter(self.roots)

    def __contains__(self, x) -> bool:  # type: ignore[override]
        return x in self.roots


# ----------------------------------------------------------------------------
# symbols and square roots
# ----------------------------------------------------------------------------

def jacobi(n: int, m: int) -> int:
    """Jacobi symbol (n/m) for odd m >= 1."""
    if m < 1 or m % 2 == 0:
        raise ValueError(f"jacobi needs an odd positive modulus, got {m}")
    n %= m
    result = 1
    while n:
        while n % 2 == 0:
            n //= 2
            if m % 8 in (3, 5):
                result = -result
        n, m = m, n
        if n % 4 == 3 and m % 4 == 3:
            result = -result
        n %= m
    return result if m == 1 else 0


def _tonelli_shanks(n: int, p: int) -> int:
    # n is a nonzero quadratic residue mod the odd prime p
    if p % 4 == 3:
        return pow(n, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while jacobi(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def sqrt_mod_p(n: int, p: int) -> RootSet:
    """All solutions of x^2 = n (mod p) for a prime p."""
    if not is_prime(p):
        raise ValueError(f"sqrt_mod_p needs a prime modulus, got {p}")
    n %= p
    if p == 2 or n == 0:
        return RootSet(p, (n,))
    if jacobi(n, p) != 1:
        return RootSet(p, ())
    r = _tonelli_shanks(n, p)
    return RootSet(p, tuple(sorted((r, p - r))))


# ----------------------------------------------------------------------------
# roots of a*v^2 + h
# ----------------------------------------------------------------------------

def _roots_mod_p(a: int, h: int, p: int) -> list[int]:
    if p == 2 or a % p == 0:
        return [v for v in range(p) if (a * v * v + h) % p == 0]
    return list(sqrt_mod_p(-h * pow(a, -1, p), p).roots)


@lru_cache(maxsize=1 << 16)
def _roots_pp(a: int, h: int, p: int, j: int) -> tuple[int, ...]:
    roots = _roots_mod_p(a, h, p)
    pk = p
    for _ in range(1, j):
        # r + pk*t with f(r) = 0 mod pk: f(r + pk*t) = f(r) + f'(r)*pk*t mod pk*p,
        # since the quadratic term carries pk^2.
        nxt = []
        for r in roots:
            f = a * r * r + h
            df = 2 * a * r
            if df % p:
                t = (-(f // pk) * pow(df, -1, p)) % p
                nxt.append(r + pk * t)
            elif (f // pk) % p == 0:
                nxt.extend(r + pk * t for t in range(p))
        roots = nxt
        pk *= p
    return tuple(sorted(roots))


def roots_mod_prime_power(a: int, h: int, p: int, j: int) -> RootSet:
    """Residues v mod p^j with a*v^2 + h = 0 (mod p^j).

    Roots mod p^j all reduce to roots mod p^(j-1), so they are built level by
    level; where the derivative 2*a*v vanishes mod p (the p | 2ah branches)
    every one of the p lifts is tested instead of the unique Hensel lift.
    """
    if j < 1:
        raise ValueError("exponent must be >= 1")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    checked(p**j)
    return RootSet(p**j, _roots_pp(a, h, p, j))


def _crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    return (r1 + m1 * ((r2 - r1) * pow(m1, -1, m2) % m2)) % (m1 * m2)


def roots_mod_k(a: int, h: int, k: int) -> RootSet:
    """All residues v mod k with a*v^2 + h = 0 (mod k), ascending."""
    if k < 1:
        raise ValueError(f"modulus must be positive, got {k}")
    roots, mod = [0], 1
    for p, e in factorize(k).pairs:
        local = _roots_pp(a, h, p, e)
        if not local:
            return RootSet(k, ())
        pe = p**e
        roots = [_crt_pair(r, mod, s, pe) for r, s in product(roots, local)]
        mod *= pe
    return RootSet(k, tuple(sorted(roots)))


@lru_cache(maxsize=1 << 16)
def _rho_pp(a: int, h: int, p: int, e: int) -> int:
    if (2 * a * h) % p:
        return 1 + jacobi(-a * h, p)
    return len(_roots_pp(a, h, p, e))


def rho(a: int, h: int, k: int) -> int:
    """Number of v mod k with a*v^2 + h = 0 (mod k); multiplicative in k."""
    if k < 1:
        raise ValueError(f"modulus must be positive, got {k}")
    out = 1
    for p, e in factorize(k).pairs:
        out *= _rho_pp(a, h, p, e)
        if not out:
            break
    return out


def rho_from_factorization(a: int, h: int, fac: Factorization) -> int:
    out = 1
    for p, e in fac.pairs:
        out *= _rho_pp(a, h, p, e)
        if not out:
            break
    return out


def roots_from_factorization(a: int, h: int, fac: Factorization) -> tuple[int, ...]:
    roots, mod = [0], 1
    for p, e in fac.pairs:
        local = _roots_pp(a, h, p, e)
        if not local:
            return ()
        pe = p**e
        roots = [_crt_pair(r, mod, s, pe) for r, s in product(roots, local)]
        mod *= pe
    return tuple(sorted(roots))


# ----------------------------------------------------------------------------
# primality and factorization
# ----------------------------------------------------------------------------

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# bases 2..41 are a proven deterministic Miller-Rabin set below this bound
_MR_DETERMINISTIC_LIMIT = 3317044064679887385961981


def _strong_probable_prime(n: int, base: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(base, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _strong_lucas(n: int) -> bool:
    # Selfridge parameters: first D in 5, -7, 9, -11, ... with (D/n) = -1
    d = 5
    while True:
        j = jacobi(d, n)
        if j == -1:
            break
        if j == 0 and abs(d) != n:
            return False
        d = -d - 2 if d > 0 else -d + 2
    r = math.isqrt(n)
    if r * r == n:
        return False
    p, q = 1, (1 - d) // 4
    k, s = n + 1, 0
    while k % 2 == 0:
        k //= 2
        s += 1
    u, v, qk = 0, 2, 1
    inv2 = pow(2, -1, n)
    for bit in bin(k)[2:]:
        u, v = u * v % n, (v * v - 2 * qk) % n
        qk = qk * qk % n
        if bit == "1":
            u, v = (p * u + v) * inv2 % n, (d * u + p * v) * inv2 % n
            qk = qk * q % n
    if u == 0 or v == 0:
        return True
    for _ in range(s - 1):
        v = (v * v - 2 * qk) % n
        qk = qk * qk % n
        if v == 0:
            return True
    return False


def is_prime(n: int) -> bool:
    """Deterministic below 3.3e24; Baillie-PSW above that."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if not all(_strong_probable_prime(n, b) for b in _SMALL_PRIMES):
        return False
    if n < _MR_DETERMINISTIC_LIMIT:
        return True
    return _strong_lucas(n)


def _brent(n: int) -> int:
    # fixed seed sequence c = 1, 2, 3, ... keeps every run reproducible
    for c in range(1, 1000):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise RuntimeError(f"Pollard-Brent failed on {n}")


_TRIAL_BOUND = 1000


@lru_cache(maxsize=1)
def _trial_primes() -> tuple[int, ...]:
    return tuple(int(p) for p in primes_upto(_TRIAL_BOUND))


def factorize(n: int) -> Factorization:
    """Complete prime factorization of n >= 1, primes ascending."""
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    checked(n)
    counts: dict[int, int] = {}
    for p in _trial_primes():
        if p * p > n:
            break
        while n % p == 0:
            counts[p] = counts.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m < _TRIAL_BOUND**2 or is_prime(m):
            # every prime below the trial bound is already divided out
            counts[m] = counts.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = _brent(m)
        stack += [d, m // d]
    return Factorization(tuple(sorted(counts.items())))


def gpf(n: int) -> int:
    """Greatest prime factor of n >= 2."""
    if n < 2:
        raise ValueError(f"gpf needs n >= 2, got {n}")
    return factorize(n).pairs[-1][0]


# ----------------------------------------------------------------------------
# sieving
# ----------------------------------------------------------------------------

def primes_upto(n: int) -> np.ndarray:
    """All primes <= n as an int64 array."""
    if n < 2:
        return np.array([], dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.flatnonzero(sieve).astype(np.int64)


def primes_between(lo: int, hi: int, segment: int = 1 << 18) -> Iterator[np.ndarray]:
    """Yield the primes of [lo, hi) segment by segment (segmented Eratosthenes)."""
    lo = max(lo, 2)
    if hi <= lo:
        return
    base = primes_upto(math.isqrt(hi - 1) + 1)
    start = lo
    while start < hi:
        stop = min(start + segment, hi)
        mask = np.ones(stop - start, dtype=bool)
        for p in base:
            p = int(p)
            if p * p >= stop:
                break
            first = max(p * p, -(-start // p) * p)
            mask[first - start :: p] = False
        yield np.flatnonzero(mask).astype(np.int64) + start
        start = stop


def factor_range(lo: int, hi: int) -> list[Factorization]:
    """Factorizations of every integer in [lo, hi), lo >= 1, by sieving."""
    if lo < 1 or hi <= lo:
        raise ValueError("need 1 <= lo < hi")
    rest = list(range(lo, hi))
    pairs: list[list[tuple[int, int]]] = [[] for _ in rest]
    for p in primes_upto(math.isqrt(hi - 1)):
        p = int(p)
        for i in range((-lo) % p, hi - lo, p):
            e = 0
            while rest[i] % p == 0:
                rest[i] //= p
                e += 1
            pairs[i].append((p, e))
    out = []
    for r, pr in zip(rest, pairs):
        if r > 1:
            pr.append((r, 1))
        out.append(Factorization(tuple(pr)))
    return out


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for _, e in factorize(abs(n)).pairs)


def mobius(n: int) -> int:
    pairs = factorize(n).pairs
    if any(e > 1 for _, e in pairs):
        return 0
    return -1 if len(pairs) % 2 else 1


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n).pairs:
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def sigma(n: int) -> int:
    return sum(divisors(n))
