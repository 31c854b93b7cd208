import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from quadcong.modcore import (
    Factorization, INT_LIMIT, checked, divisors, factor_range, factorize, gpf, is_prime, is_squarefree,
    jacobi, mobius, primes_between, primes_upto, rho, roots_mod_k, roots_mod_prime_power, sqrt_mod_p,
)
from conftest import naive_prime, scan_roots, trial_factor


def legendre_by_squares(n, p):
    n %= p
    if n == 0:
        return 0
    return 1 if any(x * x % p == n for x in range(1, p)) else -1


class TestJacobi:
    @pytest.mark.parametrize("n,m,want", [(-1, 5, 1), (-1, 3, -1), (0, 7, 0)])
    def test_examples(self, n, m, want):
        assert jacobi(n, m) == want

    @pytest.mark.parametrize("m", [0, -3, 4, 10])
    def test_bad_modulus(self, m):
        with pytest.raises(ValueError):
            jacobi(1, m)

    def test_legendre_agrees_with_square_scan(self):
        for p in [3, 5, 7, 11, 13, 97, 101]:
            for n in range(-p, 2 * p):
                assert jacobi(n, p) == legendre_by_squares(n, p)

    @given(st.integers(-500, 500), st.integers(1, 200), st.integers(1, 200))
    def test_multiplicative_in_modulus(self, n, m1, m2):
        m1, m2 = 2 * m1 - 1, 2 * m2 - 1
        assert jacobi(n, m1 * m2) == jacobi(n, m1) * jacobi(n, m2)


class TestSqrt:
    def test_examples(self):
        assert sqrt_mod_p(-1, 13).roots == (5, 8)
        assert sqrt_mod_p(3, 7).roots == ()
        assert sqrt_mod_p(0, 5).roots == (0,)

    def test_composite_rejected(self):
        with pytest.raises(ValueError):
            sqrt_mod_p(1, 15)

    def test_matches_scan_for_p_3_mod_4_and_1_mod_8(self):
        # 1 mod 8 exercises the full Tonelli-Shanks loop
        for p in [3, 7, 17, 41, 73, 97, 113, 193, 257, 7681]:
            for n in range(0, p, max(1, p // 50)):
                assert list(sqrt_mod_p(n, p).roots) == [x for x in range(p) if (x * x - n) % p == 0]


class TestRoots:
    def test_prime_power_examples(self):
        assert roots_mod_prime_power(1, 1, 5, 2).roots == (7, 18)
        assert roots_mod_prime_power(1, 1, 2, 1).roots == (1,)
        assert roots_mod_prime_power(1, 1, 2, 2).roots == ()

    def test_mod_k_examples(self):
        assert roots_mod_k(1, 1, 65).roots == (8, 18, 47, 57)
        assert roots_mod_k(1, 1, 1).roots == (0,)
        assert roots_mod_k(1, 1, 4).roots == ()
        with pytest.raises(ValueError):
            roots_mod_k(1, 1, 0)

    def test_rho_examples(self):
        assert (rho(1, 1, 5), rho(1, 1, 3), rho(1, 1, 1)) == (2, 0, 1)

    def test_overflow(self):
        with pytest.raises(OverflowError):
            roots_mod_prime_power(1, 1, 5, 60)
        with pytest.raises(OverflowError):
            checked(INT_LIMIT)

    def test_ramified_prime_powers_match_scan(self):
        # p | 2ah, including non-squarefree h and p | a
        for a, h in [(1, 1), (1, 2), (2, 1), (3, 4), (1, 12), (4, 9), (1, 0), (5, 25), (9, 3)]:
            for p in (2, 3, 5):
                for j in range(1, 6):
                    got = roots_mod_prime_power(a, h, p, j).roots
                    assert list(got) == scan_roots(a, h, p**j), (a, h, p, j)

    @given(st.integers(1, 5), st.integers(-60, 60), st.integers(1, 3000))
    def test_roots_mod_k_matches_scan(self, a, h, k):
        rs = roots_mod_k(a, h, k)
        assert list(rs.roots) == scan_roots(a, h, k)
        assert rho(a, h, k) == len(rs)

    @given(st.integers(1, 5), st.integers(1, 50), st.integers(1, 300), st.integers(1, 300))
    def test_multiplicativity(self, a, h, k1, k2):
        if math.gcd(k1, k2) == 1:
            assert rho(a, h, k1 * k2) == rho(a, h, k1) * rho(a, h, k2)

    def test_closed_form_at_primes(self):
        for a in range(1, 6):
            for h in [1, 2, 3, 5, 6, 7, 10, 11, 30]:
                for p in primes_upto(2000).tolist():
                    if (2 * a * h) % p:
                        assert rho(a, h, p) == 1 + jacobi(-a * h, p)

    @given(st.integers(1, 5), st.integers(1, 50), st.sampled_from([3, 5, 7, 11, 13, 17, 19, 23]), st.integers(1, 6))
    def test_hensel_stability(self, a, h, p, j):
        if (2 * a * h) % p:
            assert len(roots_mod_prime_power(a, h, p, j)) == len(roots_mod_prime_power(a, h, p, 1))

    @given(st.integers(1, 5), st.integers(1, 50), st.integers(1, 5000))
    def test_rootset_contents(self, a, h, k):
        rs = roots_mod_k(a, h, k)
        assert list(rs.roots) == sorted(set(rs.roots))
        assert all(0 <= v < k and (a * v * v + h) % k == 0 for v in rs)


class TestFactor:
    def test_examples(self):
        assert factorize(50).pairs == ((2, 1), (5, 2))
        assert factorize(10001).pairs == ((73, 1), (137, 1))
        assert factorize(1).pairs == ()
        with pytest.raises(ValueError):
            factorize(0)

    def test_gpf_examples(self):
        assert gpf(101) == 101
        assert gpf(100**2 + 1) == 137
        assert gpf(12) == 3
        with pytest.raises(ValueError):
            gpf(1)

    @given(st.integers(1, 10**7))
    def test_matches_trial_division(self, n):
        assert list(factorize(n).pairs) == trial_factor(n)

    @given(st.integers(2, 10**30))
    def test_roundtrip_large(self, n):
        fac = factorize(n)
        assert fac.value() == n
        ps = [p for p, _ in fac.pairs]
        assert ps == sorted(set(ps))
        assert all(is_prime(p) for p in ps)
        g = gpf(n)
        assert n % g == 0 and g == ps[-1]

    def test_semiprime_of_large_primes(self):
        p, q = 1000000007, 998244353
        assert factorize(p * q).pairs == ((q, 1), (p, 1))
        r = 2**61 - 1
        assert factorize(r * r * 3).pairs == ((3, 1), (r, 2))

    def test_is_prime_small(self):
        assert [n for n in range(2000) if is_prime(n)] == [n for n in range(2000) if naive_prime(n)]

    def test_is_prime_known_pseudoprimes(self):
        # strong pseudoprimes to many bases, all composite
        for n in [3215031751, 2152302898747, 3474749660383, 341550071728321, 3825123056546413051,
                  318665857834031151167461, 3317044064679887385961981]:
            assert not is_prime(n)
        assert is_prime(2**89 - 1) and is_prime(2**107 - 1)
        assert not is_prime((2**61 - 1) * (2**67 - 1))

    def test_sieves(self):
        assert primes_upto(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
        seg = np.concatenate(list(primes_between(10**6, 10**6 + 5000, segment=997))).tolist()
        assert seg == [n for n in range(10**6, 10**6 + 5000) if naive_prime(n)]
        # segment boundaries cross-checked by Miller-Rabin
        assert all(is_prime(p) for p in seg)

    def test_factor_range(self):
        for n, fac in zip(range(1, 3000), factor_range(1, 3000)):
            assert list(fac.pairs) == trial_factor(n)

    def test_helpers(self):
        assert divisors(12) == [1, 2, 3, 4, 6, 12]
        assert [mobius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
        assert [n for n in range(1, 20) if is_squarefree(n)] == [1, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19]
