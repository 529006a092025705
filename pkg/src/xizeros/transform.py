"""Evaluation of the two family members

    M_aleph(tau)   = int_0^inf e^{-aleph x^2} G(x) cosh(tau x) dx
    Xi_aleph(lam)  = M_aleph(i lam) = int_0^inf e^{-aleph x^2} G(x) cos(lam x) dx

their lambda-derivatives under the integral sign, and the backward-heat
residuals relating the aleph- and lambda-derivatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import mpmath
from mpmath import mpc, mpf

from .kernel import KernelTruncation, eval_kernel, plan_truncation
from .numerics import (
    BoundedComplex,
    BoundedReal,
    NonConvergent,
    PrecisionContext,
    differentiate,
    integrate_pairs,
)


@dataclass(frozen=True)
class AlephParam:
    """The real family parameter.  Any finite real value is accepted.

    Note the sign convention: the de Bruijn-Newman literature's t satisfies
    t = -aleph (damping factor here is e^{-aleph x^2}).
    """

    aleph: mpf

    def __post_init__(self):
        object.__setattr__(self, "aleph", mpf(self.aleph))
        if not mpmath.isfinite(self.aleph):
            raise ValueError("aleph must be finite")

    @property
    def literature_t(self) -> mpf:
        return -self.aleph


@dataclass(frozen=True)
class EvalResult:
    value: BoundedComplex
    plan: Optional[KernelTruncation]
    quadrature_converged: bool = True


_weight_cache: dict = {}


def _weight(aleph: mpf, x: mpf, trunc: KernelTruncation, ctx: PrecisionContext):
    """(value, error_radius) of e^{-aleph x^2} G(x), cached per point."""
    key = (aleph, x, trunc.m_max, ctx.working_digits)
    hit = _weight_cache.get(key)
    if hit is None:
        g = eval_kernel(x, trunc, ctx)
        damp = mpmath.exp(-aleph * x * x)
        hit = (damp * g.value, damp * g.error_radius)
        _weight_cache[key] = hit
    return hit


_PANEL_GRANULARITY = 60


def _presplit(x_max, osc_rate) -> int:
    """Initial uniform panel count for an integrand oscillating (or growing)
    at rate ``osc_rate`` over [0, x_max].

    The rate is rounded up to the next multiple of a fixed granularity so
    that all evaluations within a band of nearby rates land on identical
    quadrature nodes; the per-node kernel weights are then computed once per
    band instead of once per evaluation.  The 1.7 panel width factor matches
    what adaptive halving settles on for degree-20 panels at high rates, so
    the forced split rarely needs further refinement.
    """
    if osc_rate <= 0:
        return 1
    band = _PANEL_GRANULARITY * mpmath.ceil(osc_rate / _PANEL_GRANULARITY)
    return max(1, int(mpmath.ceil(x_max * band / mpf("1.7"))))


def _integrate_weighted(aleph, osc, plan, ctx, osc_rate=0):
    """Integrate weight(x)*osc(x) over [0, x_max]; returns (Bounded, converged)."""

    def f(x):
        wv, we = _weight(aleph, x, plan, ctx)
        o = osc(x)
        return wv * o, we * abs(o)

    presplit = _presplit(plan.x_max, osc_rate)
    try:
        return integrate_pairs(f, 0, plan.x_max, ctx, presplit=presplit), True
    except NonConvergent as exc:
        return exc.result, False


def eval_M(aleph: AlephParam, tau, ctx: PrecisionContext, plan: Optional[KernelTruncation] = None) -> EvalResult:
    """The cosh-weighted integral M_aleph(tau) for arbitrary complex tau."""
    with ctx.workdps():
        tau = mpc(tau) if (isinstance(tau, (complex, mpc)) and mpc(tau).imag != 0) else mpf(mpmath.re(tau))
        if plan is None:
            plan = plan_truncation(aleph.aleph, abs(tau), ctx)
        value, converged = _integrate_weighted(
            aleph.aleph,
            lambda x: mpmath.cosh(tau * x),
            plan,
            ctx,
            # node sharing only pays off for real arguments (scans walk many
            # nearby points); complex contour work is better served adaptively
            osc_rate=abs(tau) if isinstance(tau, mpf) else 0,
        )
        out = BoundedComplex(value.value, value.error_radius + plan.tail_bound)
        return EvalResult(value=out, plan=plan, quadrature_converged=converged)


def eval_Xi(aleph: AlephParam, lam, ctx: PrecisionContext, plan: Optional[KernelTruncation] = None) -> EvalResult:
    """Xi_aleph(lam) = M_aleph(i*lam); the cos-weighted integral.

    For real lam the integrand is real, so the imaginary part of the result
    is exactly zero.
    """
    with ctx.workdps():
        lam = mpc(lam) if (isinstance(lam, (complex, mpc)) and mpc(lam).imag != 0) else mpf(mpmath.re(lam))
        if plan is None:
            plan = plan_truncation(aleph.aleph, abs(lam), ctx)
        value, converged = _integrate_weighted(
            aleph.aleph,
            lambda x: mpmath.cos(lam * x),
            plan,
            ctx,
            osc_rate=abs(lam) if isinstance(lam, mpf) else 0,
        )
        out = BoundedComplex(value.value, value.error_radius + plan.tail_bound)
        return EvalResult(value=out, plan=plan, quadrature_converged=converged)


def eval_Xi_derivative(
    aleph: AlephParam,
    lam,
    order: int,
    ctx: PrecisionContext,
    plan: Optional[KernelTruncation] = None,
) -> EvalResult:
    """d/dlam or d^2/dlam^2 of Xi_aleph at lam, by differentiation under the
    integral sign: integrands -x w(x) sin(lam x) and -x^2 w(x) cos(lam x).
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    with ctx.workdps():
        lam = mpc(lam) if (isinstance(lam, (complex, mpc)) and mpc(lam).imag != 0) else mpf(mpmath.re(lam))
        if plan is None:
            plan = plan_truncation(aleph.aleph, abs(lam), ctx)
        if order == 1:
            osc = lambda x: -x * mpmath.sin(lam * x)
        else:
            osc = lambda x: -(x * x) * mpmath.cos(lam * x)
        value, converged = _integrate_weighted(
            aleph.aleph, osc, plan, ctx, osc_rate=abs(lam) if isinstance(lam, mpf) else 0
        )
        out = BoundedComplex(value.value, value.error_radius + plan.tail_bound)
        return EvalResult(value=out, plan=plan, quadrature_converged=converged)


def heat_flow_residual(aleph: AlephParam, lam, ctx: PrecisionContext):
    """Residuals of the two sign conventions of the heat equation linking
    d/d_aleph and d^2/d_lambda^2.

    Returns (res_minus, res_plus) with res_minus = |d_aleph Xi - d_ll Xi| and
    res_plus = |d_aleph Xi + d_ll Xi|.  Under the e^{-aleph x^2} damping
    convention used here, differentiation under the integral makes the two
    derivatives equal, so res_minus is the one expected to vanish; res_plus
    realizes the equation with the opposite relative sign.
    """
    with ctx.workdps():
        lam = mpf(lam)
        a0 = aleph.aleph

        def xi_of_aleph(a):
            r = eval_Xi(AlephParam(a), lam, ctx)
            return r.value.real

        step = mpf(10) ** (-mpf(ctx.target_digits) / 3)
        d_aleph = differentiate(xi_of_aleph, a0, 1, ctx, step=step)
        d_ll = eval_Xi_derivative(aleph, lam, 2, ctx).value.real
        res_minus = abs(d_aleph - d_ll)
        res_plus = abs(d_aleph + d_ll)
        return res_minus, res_plus
