"""Roots of quadratic congruences a*l^2 + h = 0 (mod k) and the lattice machinery around them."""

__version__ = "0.1.0"

from .modcore import (
    Factorization,
    RootSet,
    factorize,
    gpf,
    is_prime,
    jacobi,
    primes_between,
    primes_upto,
    rho,
    roots_mod_k,
    roots_mod_prime_power,
    sqrt_mod_p,
)
from .lattice import (
    HeegnerPoint,
    SymMat,
    UniMat,
    UpperHalfPoint,
    act,
    c_transform,
    coset_reps,
    heegner_points,
    reduce,
    stabilizer_order,
    u_invariant,
    u_skewed,
)
