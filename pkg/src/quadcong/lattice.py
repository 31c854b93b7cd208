"""SL2(Z) and Gamma_0(q) machinery on integer symmetric matrices.

A symmetric matrix ``(aa, bb; bb, cc)`` with ``aa*cc - bb**2 = h > 0`` is
identified with the upper half-plane point ``z = (bb + i*sqrt(h)) / cc``;
``act(gamma, g) = gamma g gamma^T`` is then the Moebius action on ``z``.

Reduced representatives use the half-open convention
``-cc/2 < bb <= cc/2``, ``aa >= cc``, and ``bb >= 0`` when ``aa == cc``.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import NamedTuple

from .modcore import checked, factorize


class UniMat(NamedTuple):
    """Integer 2x2 matrix ``(a, b; c, d)``; elements of SL2(Z) have ``ad - bc = 1``."""

    a: int
    b: int
    c: int
    d: int

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, o: "UniMat") -> "UniMat":  # type: ignore[override]
        return UniMat(
            checked(self.a * o.a + self.b * o.c),
            checked(self.a * o.b + self.b * o.d),
            checked(self.c * o.a + self.d * o.c),
            checked(self.c * o.b + self.d * o.d),
        )

    def inv(self) -> "UniMat":
        return UniMat(self.d, -self.b, -self.c, self.a)

    def neg(self) -> "UniMat":
        return UniMat(-self.a, -self.b, -self.c, -self.d)

    def proj(self) -> "UniMat":
        """Canonical sign representative in PSL2: c > 0, or c == 0 and d > 0."""
        if self.c < 0 or (self.c == 0 and self.d < 0):
            return self.neg()
        return self

    def in_gamma0(self, q: int) -> bool:
        return self.c % q == 0


IDENTITY = UniMat(1, 0, 0, 1)
S_MAT = UniMat(0, -1, 1, 0)


def t_mat(n: int) -> UniMat:
    return UniMat(1, n, 0, 1)


class SymMat(NamedTuple):
    aa: int
    bb: int
    cc: int

    def det(self) -> int:
        return self.aa * self.cc - self.bb * self.bb

    def point(self) -> complex:
        return complex(self.bb / self.cc, math.sqrt(self.det()) / self.cc)

    def is_reduced(self) -> bool:
        aa, bb, cc = self
        if not (-cc < 2 * bb <= cc and aa >= cc):
            return False
        return bb >= 0 if aa == cc else True


class HeegnerPoint(NamedTuple):
    sym: SymMat
    stab_order: int

    def point(self) -> complex:
        return self.sym.point()


class UpperHalfPoint(NamedTuple):
    x: float
    y: float

    @classmethod
    def of(cls, z) -> "UpperHalfPoint":
        if isinstance(z, UpperHalfPoint):
            return z
        z = complex(z)
        return cls(z.real, z.imag)

    def as_complex(self) -> complex:
        return complex(self.x, self.y)


def act(gamma: UniMat, g: SymMat) -> SymMat:
    """gamma g gamma^T."""
    a, b, c, d = gamma
    A, B, C = g
    return SymMat(
        checked(a * a * A + 2 * a * b * B + b * b * C),
        checked(a * c * A + (a * d + b * c) * B + b * d * C),
        checked(c * c * A + 2 * c * d * B + d * d * C),
    )


def c_transform(tau: UniMat, g: SymMat) -> int:
    """Bottom-right entry of tau g tau^T, from the bottom row (c0, d0) of tau alone."""
    c0, d0 = tau.c, tau.d
    return checked(c0 * c0 * g.aa + 2 * c0 * d0 * g.bb + d0 * d0 * g.cc)


def _stab_order(r: SymMat) -> int:
    if r.aa == r.cc:
        if r.bb == 0:
            return 2
        if 2 * r.bb == r.cc:
            return 3
    return 1


def reduce(g: SymMat) -> tuple[HeegnerPoint, UniMat]:
    """Reduce g to the fundamental domain; returns (reduced point, gamma) with act(gamma, g) = point."""
    if g.aa <= 0 or g.cc <= 0 or g.det() <= 0:
        raise ValueError(f"{g} is not positive definite")
    gamma = IDENTITY
    A, B, C = g
    while True:
        # translate bb into (-cc/2, cc/2]
        n = (C - 2 * B) // (2 * C)
        if n:
            A, B = A + 2 * n * B + n * n * C, B + n * C
            gamma = t_mat(n) @ gamma
        if A < C or (A == C and B < 0):
            A, B, C = C, -B, A
            gamma = S_MAT @ gamma
            continue
        break
    r = SymMat(A, B, C)
    return HeegnerPoint(r, _stab_order(r)), gamma.proj()


def stabilizer_order(z: HeegnerPoint | SymMat) -> int:
    """Order of the stabilizer of a reduced point in PSL2(Z): 2 at i, 3 at the corner, else 1."""
    sym = z.sym if isinstance(z, HeegnerPoint) else z
    if not sym.is_reduced():
        raise ValueError(f"{sym} is not reduced")
    return _stab_order(sym)


def stabilizer(z: HeegnerPoint | SymMat) -> list[UniMat]:
    """Projective stabilizer elements of a reduced point."""
    n = stabilizer_order(z)
    if n == 2:
        return [IDENTITY, S_MAT]
    if n == 3:
        u = UniMat(1, -1, 1, 0)
        return [IDENTITY, u, (u @ u).proj()]
    return [IDENTITY]


@lru_cache(maxsize=4096)
def _heegner(h: int) -> tuple[HeegnerPoint, ...]:
    out = []
    cmax = math.isqrt(4 * h)  # cc <= 2 sqrt(h)
    for cc in range(1, cmax + 1):
        for bb in range(-((cc - 1) // 2), cc // 2 + 1):
            num = bb * bb + h
            if num % cc:
                continue
            g = SymMat(num // cc, bb, cc)
            if g.is_reduced():
                out.append(HeegnerPoint(g, _stab_order(g)))
    return tuple(out)


def heegner_points(h: int) -> list[HeegnerPoint]:
    """One reduced representative per SL2(Z)-orbit of symmetric integer matrices of determinant h."""
    if h < 1:
        raise ValueError("h must be positive")
    return list(_heegner(h))


# ----------------------------------------------------------------------------
# Gamma_0(q) cosets through P^1(Z/q)
# ----------------------------------------------------------------------------

def index_gamma0(q: int) -> int:
    out = q
    for p, _ in factorize(q).pairs:
        out = out // p * (p + 1)
    return out


@lru_cache(maxsize=512)
def projective_line(q: int) -> tuple[tuple[int, int], ...]:
    """Canonical representatives (c, d) of P^1(Z/q): lexicographically least among unit multiples."""
    if q == 1:
        return ((0, 1),)
    units = [u for u in range(1, q) if math.gcd(u, q) == 1]
    seen = set()
    reps = []
    for c in range(q):
        for d in range(q):
            if (c, d) in seen or math.gcd(math.gcd(c, d), q) != 1:
                continue
            reps.append((c, d))
            seen.update(((u * c) % q, (u * d) % q) for u in units)
    return tuple(reps)


def p1_class(c: int, d: int, q: int) -> tuple[int, int]:
    """Canonical P^1(Z/q) representative of (c : d)."""
    if q == 1:
        return (0, 1)
    return min(((u * c) % q, (u * d) % q) for u in range(1, q) if math.gcd(u, q) == 1)


def _lift_row(c: int, d: int, q: int) -> UniMat:
    if c == 0:
        # (0 : d) with d a unit is the class of (0 : 1)
        return IDENTITY
    while math.gcd(c, d) != 1:
        d += q
    g, x, y = _xgcd(d, c)  # x*d + y*c = 1 -> (a, b) = (x, -y)
    return UniMat(x, -y, c, d)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def coset_reps(q: int) -> list[UniMat]:
    """Representatives of Gamma_0(q) \\ SL2(Z), one per point of P^1(Z/q)."""
    if q < 1:
        raise ValueError("q must be positive")
    return [_lift_row(c, d, q) for c, d in projective_line(q)]


# ----------------------------------------------------------------------------
# hyperbolic invariants
# ----------------------------------------------------------------------------

def mobius(gamma, z: complex) -> complex:
    a, b, c, d = gamma
    return (a * z + b) / (c * z + d)


def u_invariant(w, z) -> float:
    """Point-pair invariant |w - z|^2 / (4 Im w Im z)."""
    w, z = UpperHalfPoint.of(w), UpperHalfPoint.of(z)
    if w.y <= 0 or z.y <= 0:
        raise ValueError("points must lie in the upper half-plane")
    return ((w.x - z.x) ** 2 + (w.y - z.y) ** 2) / (4 * w.y * z.y)


def u_skewed(g, R: float) -> float:
    """R-skewed hyperbolic size (a^2 + (b/R)^2 + (cR)^2 + d^2 - 2) / 4."""
    if R <= 0:
        raise ValueError("R must be positive")
    a, b, c, d = g
    return (a * a + (b / R) ** 2 + (c * R) ** 2 + d * d - 2) / 4
