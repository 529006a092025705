"""Taylor coefficients of M_aleph, power-series evaluation, and the Turan
(log-concavity) necessary-condition diagnostic for the real-zeros property.

The even-order coefficients are the scaled moments

    alpha_{2g} = 1/(2g)! * int_0^inf x^{2g} e^{-aleph x^2} G(x) dx,

all strictly positive because G > 0 on (0, inf).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import mpmath
from mpmath import mpf

from .kernel import KernelTruncation, plan_truncation
from .numerics import (
    BoundedComplex,
    BoundedReal,
    NonConvergent,
    PrecisionContext,
    integrate_pairs,
)
from .transform import AlephParam, EvalResult, _weight


class SeriesError(Exception):
    pass


class PositivityViolation(SeriesError):
    pass


class TailNotBounded(SeriesError):
    pass


class InsufficientEntries(SeriesError):
    pass


@dataclass(frozen=True)
class CoefficientTable:
    aleph: AlephParam
    entries: Tuple[Tuple[int, BoundedReal], ...]

    def __post_init__(self):
        for i, (g, alpha) in enumerate(self.entries):
            if g != i:
                raise ValueError("entries must be contiguous from gamma=0")
            if alpha.value - alpha.error_radius <= 0:
                raise PositivityViolation(f"alpha_{2 * g} not positive beyond error radius")

    @property
    def gamma_max(self) -> int:
        return len(self.entries) - 1

    def alpha(self, gamma: int) -> BoundedReal:
        return self.entries[gamma][1]


def _log_envelope(aleph, gamma, x):
    """log of the m=1 kernel envelope times x^{2 gamma} e^{-aleph x^2}."""
    pi = mpmath.pi
    return (
        2 * gamma * mpmath.ln(x)
        - aleph * x * x
        + mpmath.ln(2 * pi**2)
        + 9 * x
        - pi * mpmath.exp(4 * x)
    )


def _moment_plan(aleph, gamma, ctx: PrecisionContext) -> Tuple[KernelTruncation, mpf]:
    """Per-gamma truncation: x_max grows with gamma so that the cut-off tail
    is small relative to the moment's own peak, not just in absolute terms.

    Returns (plan, log_peak) with log_peak the envelope maximum, used to
    rescale the quadrature into O(1) range.
    """
    base = plan_truncation(aleph, 0, ctx)
    with ctx.workdps():
        aleph = mpf(aleph)
        if gamma == 0:
            return base, mpf(0)
        # locate the envelope peak on a coarse grid, then golden refinement
        grid = [base.x_max * mpf(k) / 256 for k in range(1, 257)]
        logs = [_log_envelope(aleph, gamma, x) for x in grid]
        k = max(range(len(logs)), key=lambda i: logs[i])
        lo = grid[max(0, k - 1)]
        hi = grid[min(len(grid) - 1, k + 1)]
        for _ in range(80):
            m1 = lo + (hi - lo) / 3
            m2 = hi - (hi - lo) / 3
            if _log_envelope(aleph, gamma, m1) < _log_envelope(aleph, gamma, m2):
                lo = m1
            else:
                hi = m2
        x_peak = (lo + hi) / 2
        log_peak = _log_envelope(aleph, gamma, x_peak)

        drop = (ctx.target_digits + 5) * mpmath.ln(10)
        x_hi = max(base.x_max, x_peak)
        while _log_envelope(aleph, gamma, x_hi) > log_peak - drop:
            x_hi += mpf(1) / 4
        lo, hi = x_peak, x_hi
        for _ in range(200):
            mid = (lo + hi) / 2
            if _log_envelope(aleph, gamma, mid) > log_peak - drop:
                lo = mid
            else:
                hi = mid
            if hi - lo < mpf(10) ** (-ctx.working_digits):
                break
        x_max = max(base.x_max, hi)
        tail = mpmath.exp(log_peak - drop)
        return KernelTruncation(m_max=base.m_max, x_max=x_max, tail_bound=base.tail_bound + tail), log_peak


def compute_coefficients(aleph: AlephParam, gamma_max: int, ctx: PrecisionContext) -> CoefficientTable:
    """Quadrature of the even moments for gamma = 0..gamma_max.

    Each moment uses its own domain cutoff and is rescaled by its envelope
    peak so the quadrature tolerance acts relatively; the factorial division
    happens after integration.
    """
    if gamma_max < 0:
        raise ValueError("gamma_max must be >= 0")
    entries = []
    with ctx.workdps():
        for g in range(gamma_max + 1):
            plan, log_peak = _moment_plan(aleph.aleph, g, ctx)
            scale = mpmath.exp(-log_peak)

            def f(x, g=g, plan=plan, scale=scale):
                wv, we = _weight(aleph.aleph, x, plan, ctx)
                fac = scale * x ** (2 * g) if g else scale
                return fac * wv, fac * we

            raw = integrate_pairs(f, 0, plan.x_max, ctx)
            fact = mpmath.factorial(2 * g)
            value = raw.value / scale / fact
            # quadrature error, domain tail, and m-tail, all de-scaled
            err = (raw.error_radius / scale + plan.tail_bound) / fact
            alpha = BoundedReal(value, err)
            if alpha.value - alpha.error_radius <= 0:
                raise PositivityViolation(
                    f"alpha_{2 * g} = {alpha.value} +- {alpha.error_radius} at aleph={aleph.aleph}"
                )
            entries.append((g, alpha))
    return CoefficientTable(aleph=aleph, entries=tuple(entries))


def eval_series(table: CoefficientTable, tau, ctx: PrecisionContext) -> EvalResult:
    """Evaluate the truncated even power series at tau.

    Requires the empirical ratio condition |tau|^2 * a_last/a_prev < 1/2 so
    the omitted tail is geometrically bounded by the last retained term.
    """
    if table.gamma_max < 1:
        raise InsufficientEntries("need at least two coefficients")
    with ctx.workdps():
        tau = mpmath.mpmathify(tau)
        gmax = table.gamma_max
        ratio = abs(tau) ** 2 * table.alpha(gmax).value / table.alpha(gmax - 1).value
        if not ratio < mpf(1) / 2:
            raise TailNotBounded(
                f"|tau|^2 * alpha ratio = {ratio} >= 1/2; enlarge gamma_max"
            )
        value = mpmath.mpf(0) * tau
        err = mpf(0)
        t2 = tau * tau
        power = mpmath.mpf(1) + 0 * tau
        for g, alpha in table.entries:
            term = alpha.value * power
            value += term
            err += alpha.error_radius * abs(power)
            last_mag = abs(term)
            power *= t2
        tail = last_mag * ratio / (1 - ratio)
        return EvalResult(
            value=BoundedComplex(value, err + tail), plan=None, quadrature_converged=True
        )


@dataclass(frozen=True)
class TuranMargin:
    gamma: int
    margin: mpf
    error_radius: mpf
    passed: bool


def turan_diagnostic(table: CoefficientTable):
    """Log-concavity margins of the factorial-normalized sequence
    c_g = g! * alpha_{2g}: margin_g = c_g^2 - c_{g-1} c_{g+1}.

    A margin below the propagated error certifies a non-real zero; all
    margins passing is necessary but not sufficient for only-real zeros.
    """
    if table.gamma_max < 2:
        raise InsufficientEntries("turan diagnostic needs gamma_max >= 2")
    out = []
    with mpmath.mp.workdps(60):
        cs = []
        for g, alpha in table.entries:
            fact = mpmath.factorial(g)
            cs.append(BoundedReal(fact * alpha.value, fact * alpha.error_radius))
        for g in range(1, table.gamma_max):
            m = cs[g] * cs[g] - cs[g - 1] * cs[g + 1]
            out.append(
                TuranMargin(
                    gamma=g,
                    margin=m.value,
                    error_radius=m.error_radius,
                    passed=bool(m.value >= -m.error_radius),
                )
            )
    return out
