"""Smooth compactly supported test functions."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

QUAD_TOL = 1e-10


def _prototype(s):
    s = np.asarray(s, dtype=float)
    out = np.zeros_like(s)
    inside = np.abs(s) < 1
    out[inside] = np.exp(-1.0 / (1.0 - s[inside] ** 2))
    return out


@dataclass(frozen=True)
class BumpFn:
    """``amplitude * exp(-1/(1 - s^2))`` with ``s`` the affine image of [lo, hi] onto [-1, 1].

    ``delta`` is the smoothness scale: the J-th derivative is O(delta^-J).
    """

    lo: float
    hi: float
    delta: float
    amplitude: float = 1.0
    integral: float = field(default=0.0, compare=False)
    integral_error: float = field(default=0.0, compare=False)

    def __call__(self, x):
        s = (2 * np.asarray(x, dtype=float) - self.lo - self.hi) / (self.hi - self.lo)
        out = self.amplitude * _prototype(s)
        return float(out) if out.ndim == 0 else out

    def to_dict(self) -> dict:
        return dict(lo=self.lo, hi=self.hi, delta=self.delta, amplitude=self.amplitude)


def bump(lo: float, hi: float, delta: float = 1.0, amplitude: float = 1.0) -> BumpFn:
    if not lo < hi:
        raise ValueError(f"empty support [{lo}, {hi}]")
    if not 0 < delta <= 1:
        raise ValueError("delta must lie in (0, 1]")
    proto = BumpFn(lo, hi, delta, amplitude)
    if amplitude == 0:
        return BumpFn(lo, hi, delta, 0.0, 0.0, 0.0)
    val, err = integrate.quad(proto, lo, hi, epsabs=1e-14, epsrel=1e-13, limit=200)
    if err > QUAD_TOL:
        raise ArithmeticError(f"quadrature error {err} above {QUAD_TOL}")
    return BumpFn(lo, hi, delta, amplitude, val, err)


def bump_eval(psi: BumpFn, x):
    return psi(x)


def bump_integral(psi: BumpFn) -> float:
    return psi.integral
