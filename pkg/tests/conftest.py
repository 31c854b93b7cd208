import math

import pytest
from hypothesis import settings

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")


def scan_roots(a, h, k):
    return [v for v in range(k) if (a * v * v + h) % k == 0]


def trial_factor(n):
    out, p = [], 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def naive_prime(n):
    return n >= 2 and all(n % q for q in range(2, math.isqrt(n) + 1))


@pytest.fixture
def scan():
    return scan_roots
