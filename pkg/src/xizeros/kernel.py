"""The superexponentially decaying kernel

    G(x) = sum_{m>=1} [2 pi^2 m^4 e^{9x} - 3 pi m^2 e^{5x}] e^{-pi m^2 e^{4x}}

with certified truncation of both the m-sum and the integration domain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
from mpmath import mp, mpf

from .numerics import BoundedReal, PrecisionContext


class KernelError(Exception):
    pass


class OutOfDomain(KernelError):
    pass


@dataclass(frozen=True)
class KernelTruncation:
    """Summation cutoff m_max, domain cutoff x_max, and the bound on the
    total neglected mass they leave behind."""

    m_max: int
    x_max: mpf
    tail_bound: mpf

    def __post_init__(self):
        if self.m_max < 1:
            raise ValueError("m_max must be >= 1")
        if self.x_max <= 0:
            raise ValueError("x_max must be positive")
        if self.tail_bound < 0:
            raise ValueError("tail_bound must be nonnegative")


def plan_truncation(aleph, tau_abs_bound, ctx: PrecisionContext) -> KernelTruncation:
    """Choose m_max and x_max so that the neglected kernel mass, weighted by
    e^{|aleph| x^2} cosh-growth up to |tau| <= tau_abs_bound, stays below the
    precision target.

    m_max is the smallest integer with pi*m_max^2 >= target_digits*ln10 + 25
    (bumped if the cosh weight demands it); x_max is the smallest real with
    pi*e^{4x} - 9x - tau_abs_bound*x - |aleph|*x^2 >= the same margin.
    """
    if tau_abs_bound < 0:
        raise ValueError("tau_abs_bound must be nonnegative")
    with ctx.workdps():
        aleph = mpf(aleph)
        tau = mpf(tau_abs_bound)
        margin = ctx.target_digits * mpmath.ln(10) + 25

        m_max = max(1, math.isqrt(int(mpmath.ceil(margin / mpmath.pi)) - 1) + 1)
        while mpmath.pi * m_max**2 < margin:
            m_max += 1
        # ensure the m-tail stays negligible under the cosh(tau x) weight:
        # pi m^2 (e^{4x}-1) >= 4 pi m^2 x must dominate tau*x
        while 4 * mpmath.pi * m_max**2 < tau:
            m_max += 1

        def gap(x):
            return mpmath.pi * mpmath.exp(4 * x) - 9 * x - tau * x - abs(aleph) * x * x - margin

        hi = mpf(1)
        while gap(hi) < 0:
            hi *= 2
        lo = mpf(0)
        for _ in range(ctx.working_digits * 4):
            mid = (lo + hi) / 2
            if gap(mid) >= 0:
                hi = mid
            else:
                lo = mid
            if hi - lo < mpf(10) ** (-ctx.working_digits):
                break
        x_max = hi

        tail_bound = 40 * mpmath.exp(-margin)
        return KernelTruncation(m_max=m_max, x_max=x_max, tail_bound=tail_bound)


_kernel_cache: dict = {}


def eval_kernel(x, trunc: KernelTruncation, ctx: PrecisionContext) -> BoundedReal:
    """Evaluate the truncated kernel sum at x in [0, x_max].

    The error radius covers the neglected m-tail at this x.  Points beyond
    x_max are refused; that mass is accounted for by trunc.tail_bound.
    """
    with ctx.workdps():
        x = mpf(x)
        if x < 0 or x > trunc.x_max:
            raise OutOfDomain(f"x={x} outside [0, {trunc.x_max}]")
        key = (x, trunc.m_max, ctx.working_digits)
        hit = _kernel_cache.get(key)
        if hit is not None:
            return hit
        pi = mpmath.pi
        e4 = mpmath.exp(4 * x)
        e5 = mpmath.exp(5 * x)
        e9 = mpmath.exp(9 * x)
        total = mpf(0)
        for m in range(1, trunc.m_max + 1):
            m2 = m * m
            total += (2 * pi**2 * m2 * m2 * e9 - 3 * pi * m2 * e5) * mpmath.exp(-pi * m2 * e4)
        # first omitted term dominates the tail geometrically; factor 1.1 slack
        m1 = trunc.m_max + 1
        tail = mpf("1.1") * (2 * pi**2 * m1**4 * e9 + 3 * pi * m1 * m1 * e5) * mpmath.exp(
            -pi * m1 * m1 * e4
        )
        result = BoundedReal(total, tail)
        _kernel_cache[key] = result
        return result
