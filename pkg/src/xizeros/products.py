"""Truncated Hadamard products over computed zeros, zero-power sums with
density-based tail estimates, entire-order estimation, and the named identity
verification suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import mpmath
from mpmath import mpc, mpf

from .numerics import BoundedComplex, BoundedReal, PrecisionContext
from .series import CoefficientTable, compute_coefficients, eval_series
from .transform import AlephParam, EvalResult, eval_M
from .zeros import RealZero, ZeroTable, scan_real_zeros


class ProductError(Exception):
    pass


class InsufficientZeros(ProductError):
    pass


class EmptyTable(ProductError):
    pass


@dataclass(frozen=True)
class ProductTruncation:
    L: int
    tail_estimate: mpf


@dataclass(frozen=True)
class IdentityReport:
    name: str
    lhs: BoundedComplex
    rhs: BoundedComplex
    residual: mpf
    tolerance: mpf
    passed: bool
    notes: str = ""


# ---------------------------------------------------------------------------
# zero bookkeeping helpers

def _xi_zero_factors(table: ZeroTable):
    """Stored zeros in the lambda plane, ordered by modulus, with the
    number of zeros each entry accounts for (conjugate pairs count 2)."""
    items = []
    for z in table.real_zeros:
        items.append((mpc(z.location, 0), 1))
    for z in table.complex_zeros:
        weight = 1 if z.location.imag == 0 else 2
        items.append((z.location, weight * z.multiplicity))
    items.sort(key=lambda t: abs(t[0]))
    return items


def fit_zero_density(table: ZeroTable):
    """Least-squares fit of the counting function N(rho) ~ c1*rho*ln(rho)+c2
    over the table's real zeros.  Used only for tail extrapolation."""
    rhos = [z.location for z in table.real_zeros]
    if len(rhos) < 2:
        # degenerate table: one zero, assume unit density scale
        rho = rhos[0] if rhos else mpf(30)
        return mpf(1) / (rho * mpmath.ln(rho)), mpf(0)
    xs = [r * mpmath.ln(r) for r in rhos]
    ys = [mpf(i + 1) for i in range(len(rhos))]
    n = len(xs)
    sx = mpmath.fsum(xs)
    sy = mpmath.fsum(ys)
    sxx = mpmath.fsum(x * x for x in xs)
    sxy = mpmath.fsum(x * y for x, y in zip(xs, ys))
    det = n * sxx - sx * sx
    c1 = (n * sxy - sx * sy) / det
    c2 = (sy * sxx - sx * sxy) / det
    return c1, c2


def _tail_sum_rho2(table: ZeroTable, rho_from: mpf) -> mpf:
    """Estimated sum of rho^{-2} over zeros beyond rho_from, from the fitted
    density.

    The c*rho*ln(rho) counting model has no linear term, so the fitted c
    underestimates the density at the table frontier by roughly 30% (the
    true counting function carries a negative linear correction that the
    fit folds into c).  The factor 2 covers that systematic bias with
    headroom on top of ordinary fit scatter."""
    c1, _ = fit_zero_density(table)
    return 2 * c1 * (mpmath.ln(rho_from) + 2) / rho_from


def zero_sum_tail(table: ZeroTable, rho_from) -> mpf:
    """Public tail estimate for the zero-power sum beyond modulus rho_from."""
    return _tail_sum_rho2(table, mpf(rho_from))


def eval_product(
    M0: BoundedReal,
    table: ZeroTable,
    L: int,
    lam,
    ctx: PrecisionContext,
) -> Tuple[EvalResult, ProductTruncation]:
    """M0 * prod over the first L stored zeros of (1 - lam^2/zero^2) in the
    lambda plane; complex zeros contribute their conjugate factor as well.

    tail_estimate bounds |log| of the omitted factors at lam via the fitted
    zero density.
    """
    if L < 0:
        raise ValueError("L must be nonnegative")
    items = _xi_zero_factors(table)
    if sum(w for _, w in items) < L:
        raise InsufficientZeros(f"table holds fewer than L={L} zeros")
    with ctx.workdps():
        lam = mpmath.mpmathify(lam)
        lam2 = lam * lam
        acc = BoundedComplex(mpc(M0.value, 0), M0.error_radius)
        used = 0
        last_rho = mpf(0)
        for loc, weight in items:
            if used >= L:
                break
            factor = BoundedComplex(1 - lam2 / (loc * loc), mpf(0))
            acc = acc * factor
            if loc.imag != 0:
                conj_loc = mpmath.conj(loc)
                acc = acc * BoundedComplex(1 - lam2 / (conj_loc * conj_loc), mpf(0))
            used += weight
            last_rho = abs(loc)
        if last_rho == 0:
            last_rho = abs(items[0][0]) if items else mpf(1)
        tail = abs(lam2) * _tail_sum_rho2(table, last_rho)
        result = EvalResult(value=acc, plan=None, quadrature_converged=True)
        return result, ProductTruncation(L=L, tail_estimate=tail)


def zero_sum(table: ZeroTable, exponent: int = 2):
    """Cumulative sums of zero^{-2} over the stored zeros in the lambda
    plane (positive for real zeros; in the M plane the sums carry the
    opposite sign since sigma = i*rho).

    Returns (partial_sums, tail_estimate) with the tail extrapolated from
    the fitted counting density past the last stored zero.
    """
    if exponent != 2:
        raise ValueError("only exponent 2 is supported")
    items = _xi_zero_factors(table)
    if not items:
        raise EmptyTable("no zeros stored")
    sums: List[BoundedReal] = []
    acc = BoundedReal(0)
    with mpmath.mp.workdps(60):
        for loc, weight in items:
            if loc.imag == 0:
                term = weight / (loc.real * loc.real)
            else:
                conj_loc = mpmath.conj(loc)
                term = (loc ** -2 + conj_loc ** -2) * (weight / 2)
                term = term.real
            acc = acc + BoundedReal(term, mpf(0))
            sums.append(acc)
        tail = _tail_sum_rho2(table, abs(items[-1][0]))
    return sums, tail


def termwise_diagnostic(table: ZeroTable):
    """Per-zero differences sigma^{-2} - conj(sigma)^{-2} for the M-plane
    zeros sigma = i * (lambda-plane zero).

    Exactly zero whenever Re(sigma)*Im(sigma) = 0; nonzero off-axis, which is
    why the sum identity does not force the termwise one.
    """
    items = _xi_zero_factors(table)
    if not items:
        raise EmptyTable("no zeros stored")
    out = []
    with mpmath.mp.workdps(60):
        for ell, (loc, _weight) in enumerate(items, start=1):
            sigma = mpc(0, 1) * loc
            if sigma.real == 0 or sigma.imag == 0:
                delta = BoundedComplex(mpc(0, 0), mpf(0))
            else:
                delta = BoundedComplex(sigma ** -2 - mpmath.conj(sigma) ** -2, mpf(0))
            out.append((ell, delta))
    return out


def fit_growth_order(radii, magnitudes, norm) -> BoundedReal:
    """Least-squares slope of ln ln(magnitude/norm) against ln r.

    Normalizing by the value at the center keeps the double log real at
    small radii and makes the slope exactly invariant under rescaling the
    function by a constant.  The max fit residual is the error radius.
    """
    xs = [mpmath.ln(mpf(r)) for r in radii]
    ys = [mpmath.ln(mpmath.ln(mpf(m) / norm)) for m in magnitudes]
    n = len(xs)
    sx = mpmath.fsum(xs)
    sy = mpmath.fsum(ys)
    sxx = mpmath.fsum(x * x for x in xs)
    sxy = mpmath.fsum(x * y for x, y in zip(xs, ys))
    det = n * sxx - sx * sx
    slope = (n * sxy - sx * sy) / det
    intercept = (sy * sxx - sx * sxy) / det
    resid = max(abs(y - (slope * x + intercept)) for x, y in zip(xs, ys))
    return BoundedReal(slope, resid)


def estimate_order(aleph: AlephParam, ctx: PrecisionContext, radii=(10, 20, 40, 80)) -> BoundedReal:
    """Growth-order fit over |tau| = r for the given radii (the max of |M|
    sits on the real axis where cosh growth dominates)."""
    with ctx.workdps():
        norm = abs(eval_M(aleph, 0, ctx).value.value)
        mags = [abs(eval_M(aleph, mpf(r), ctx).value.value) for r in radii]
        return fit_growth_order(radii, mags, norm)


# ---------------------------------------------------------------------------
# identity suite

SUITE_NAMES = (
    "CONJ",
    "EVEN",
    "SERIES_EQ_INTEGRAL",
    "SERIES_EQ_PRODUCT",
    "CONJ_PRODUCT",
    "SUM_EQ",
    "THETA0",
    "POSITIVITY",
)

_TEST_POINTS = (mpf("0.5"), mpc(1, 1), mpf(2), mpc(0, 5))

DEFAULT_SUITE_L = 50
DEFAULT_SUITE_GAMMA_MAX = 40


def _graded_target(lam_hi, base: int) -> int:
    """Target digits needed to resolve the sign of Xi out to lam_hi.

    |Xi_0(lam)| decays like e^{-pi lam/8}, so the absolute error floor must
    sink proportionally with the scan frontier; 12 guard digits on top.
    """
    needed = int(mpmath.ceil(mpf(lam_hi) * mpmath.pi / (8 * mpmath.ln(10)))) + 12
    return max(base, needed)


def deep_scan(aleph: AlephParam, L: int, ctx: PrecisionContext, segment=60, cap=1000) -> ZeroTable:
    """Scan outward in segments with graded precision until L real zeros
    are collected (or the range cap is hit).

    Running the whole range at the precision the far end needs would make
    the near-origin evaluations pointlessly expensive; each segment gets
    just enough digits for its own frontier.  Segments overlap by 1 to
    avoid losing a zero that straddles a boundary; duplicates are dropped.
    """
    zeros: list = []
    flagged: list = []
    lo, hi = mpf(0), mpf(segment)
    while True:
        t = _graded_target(hi, ctx.target_digits)
        seg_ctx = PrecisionContext(
            working_digits=t + 15,
            target_digits=t,
            max_refinements=ctx.max_refinements,
        )
        part = scan_real_zeros(aleph, max(lo - 1, 0), hi, seg_ctx)
        for z in part.real_zeros:
            if not zeros or z.location > zeros[-1].location + mpf("1e-6"):
                zeros.append(z)
        flagged.extend(part.flagged_intervals)
        if len(zeros) >= L or hi >= cap:
            break
        lo, hi = hi, min(mpf(cap), hi + segment)
    zeros = [
        RealZero(z.aleph, i + 1, z.location, z.bracket, z.certified_digits)
        for i, z in enumerate(zeros)
    ]
    return ZeroTable(
        aleph=aleph,
        real_zeros=tuple(zeros),
        provenance=f"deep_scan L={L} hi={hi} base_td={ctx.target_digits}",
        flagged_intervals=tuple(flagged),
    )


def default_suite_tables(aleph: AlephParam, ctx: PrecisionContext, L=DEFAULT_SUITE_L, gamma_max=DEFAULT_SUITE_GAMMA_MAX):
    """Build the zero and coefficient tables the suite consumes.

    The zero table comes from the graded-precision segmented scan; the
    coefficient table is floored at 30 target digits (see _coeff_ctx).
    """
    table = deep_scan(aleph, L, ctx)
    coeffs = compute_coefficients(aleph, gamma_max, _coeff_ctx(ctx)) if gamma_max > 0 else None
    return table, coeffs


def _coeff_ctx(ctx: PrecisionContext) -> PrecisionContext:
    """Coefficients of high index are tiny (alpha_80 ~ 1e-141); certifying
    their positivity needs at least ~30 target digits regardless of the
    requested output precision."""
    return PrecisionContext(
        working_digits=max(ctx.working_digits, 50),
        target_digits=max(ctx.target_digits, 30),
        max_refinements=ctx.max_refinements,
    )


def _combined_radius(*vals) -> mpf:
    return mpmath.fsum(v.error_radius for v in vals)


def _make_report(name, lhs: BoundedComplex, rhs: BoundedComplex, tolerance, notes="") -> IdentityReport:
    residual = abs(lhs.value - rhs.value)
    tolerance = max(mpf(tolerance), _combined_radius(lhs, rhs))
    return IdentityReport(
        name=name,
        lhs=lhs,
        rhs=rhs,
        residual=residual,
        tolerance=tolerance,
        passed=bool(residual <= tolerance),
        notes=notes,
    )


def _worst(reports: Sequence[IdentityReport]) -> IdentityReport:
    # keep the report with the smallest margin (residual - tolerance)
    return max(reports, key=lambda r: r.residual - r.tolerance)


def check_identities(
    aleph: AlephParam,
    suite: Iterable[str],
    ctx: PrecisionContext,
    zero_table: Optional[ZeroTable] = None,
    coeff_table: Optional[CoefficientTable] = None,
    L: int = DEFAULT_SUITE_L,
) -> List[IdentityReport]:
    """Run the named identity checks and return one report per name.

    Checks needing tables build them at default sizes unless given.  A
    failing check returns passed=False; only upstream precision failures
    raise.
    """
    from .numerics import differentiate  # local import to avoid cycle noise

    suite = list(suite)
    unknown = [s for s in suite if s not in SUITE_NAMES]
    if unknown:
        raise ValueError(f"unknown checks: {unknown}")
    needs_zeros = any(s in ("SERIES_EQ_PRODUCT", "CONJ_PRODUCT", "SUM_EQ") for s in suite)
    needs_coeffs = any(s in ("SERIES_EQ_INTEGRAL", "SERIES_EQ_PRODUCT", "POSITIVITY") for s in suite)
    with ctx.workdps():
        if needs_zeros and zero_table is None:
            zero_table, auto_coeffs = default_suite_tables(aleph, ctx, L=L)
            if coeff_table is None:
                coeff_table = auto_coeffs
        if needs_coeffs and coeff_table is None:
            coeff_table = compute_coefficients(aleph, DEFAULT_SUITE_GAMMA_MAX, _coeff_ctx(ctx))

        reports: List[IdentityReport] = []

        for name in suite:
            if name == "CONJ":
                per_point = []
                for tau in _TEST_POINTS:
                    lhs = eval_M(aleph, mpmath.conj(tau), ctx).value
                    rhs = eval_M(aleph, tau, ctx).value.conjugate()
                    per_point.append(_make_report(name, lhs, rhs, 3 * _combined_radius(lhs, rhs), notes=f"tau={tau}"))
                reports.append(_worst(per_point))
            elif name == "EVEN":
                per_point = []
                for tau in _TEST_POINTS:
                    lhs = eval_M(aleph, tau, ctx).value
                    rhs = eval_M(aleph, -tau, ctx).value
                    per_point.append(_make_report(name, lhs, rhs, 3 * _combined_radius(lhs, rhs), notes=f"tau={tau}"))
                reports.append(_worst(per_point))
            elif name == "SERIES_EQ_INTEGRAL":
                per_point = []
                for tau in _TEST_POINTS:
                    lhs = eval_series(coeff_table, tau, ctx).value
                    rhs = eval_M(aleph, tau, ctx).value
                    per_point.append(_make_report(name, lhs, rhs, 3 * _combined_radius(lhs, rhs), notes=f"tau={tau}"))
                reports.append(_worst(per_point))
            elif name == "SERIES_EQ_PRODUCT":
                M0 = BoundedReal(coeff_table.alpha(0).value, coeff_table.alpha(0).error_radius)
                per_point = []
                for tau in _TEST_POINTS:
                    lam = mpc(0, 1) * tau  # product runs in the lambda plane
                    lhs = eval_series(coeff_table, tau, ctx).value
                    prod, trunc = eval_product(M0, zero_table, L, lam, ctx)
                    rhs = prod.value
                    # the omitted factors multiply the product, so the
                    # truncation allowance scales with the product itself
                    tol = 3 * _combined_radius(lhs, rhs) + abs(rhs.value) * mpmath.expm1(trunc.tail_estimate)
                    per_point.append(
                        _make_report(name, lhs, rhs, tol, notes=f"tau={tau}, L={L}, tail={mpmath.nstr(trunc.tail_estimate, 6)}")
                    )
                reports.append(_worst(per_point))
            elif name == "CONJ_PRODUCT":
                M0v = eval_M(aleph, 0, ctx).value
                M0 = BoundedReal(M0v.value.real, M0v.error_radius)
                items = _xi_zero_factors(zero_table)
                per_point = []
                for tau in _TEST_POINTS:
                    varsigma = mpmath.conj(tau)
                    lhs = BoundedComplex(mpc(M0.value, 0), M0.error_radius)
                    rhs = BoundedComplex(mpc(M0.value, 0), M0.error_radius)
                    used = 0
                    for loc, weight in items:
                        if used >= L:
                            break
                        sigma = mpc(0, 1) * loc  # M-plane zero
                        lhs = lhs * BoundedComplex(1 - varsigma**2 / sigma**2, mpf(0))
                        rhs = rhs * BoundedComplex(1 - varsigma**2 / mpmath.conj(sigma) ** 2, mpf(0))
                        used += weight
                    per_point.append(_make_report(name, lhs, rhs, 3 * _combined_radius(lhs, rhs), notes=f"varsigma={varsigma}, L={L}"))
                reports.append(_worst(per_point))
            elif name == "SUM_EQ":
                items = _xi_zero_factors(zero_table)
                s1 = mpc(0)
                s2 = mpc(0)
                for loc, weight in items:
                    sigma = mpc(0, 1) * loc
                    s1 += weight * sigma ** -2
                    s2 += weight * mpmath.conj(sigma) ** -2
                lhs = BoundedComplex(s1, mpf(0))
                rhs = BoundedComplex(s2, mpf(0))
                tol = mpf(10) ** (-(ctx.target_digits - 2))
                reports.append(_make_report(name, lhs, rhs, tol, notes="over stored zeros"))
            elif name == "THETA0":
                m0 = eval_M(aleph, 0, ctx).value

                def m_real(t):
                    return eval_M(aleph, t, ctx).value.real

                d0 = differentiate(m_real, 0, 1, ctx)
                theta0 = d0.value / m0.value.real
                err = (d0.error_radius + abs(theta0) * m0.error_radius) / abs(m0.value.real)
                lhs = BoundedComplex(mpc(theta0, 0), err)
                rhs = BoundedComplex(mpc(0, 0), mpf(0))
                tol = max(10 * err, mpf(10) ** (-(ctx.target_digits - 10)))
                reports.append(
                    _make_report(name, lhs, rhs, tol, notes=f"theta0 estimate = {mpmath.nstr(theta0, 6)} (evenness forces 0)")
                )
            elif name == "POSITIVITY":
                m0 = eval_M(aleph, 0, ctx).value.real
                margins = [m0.value - m0.error_radius]
                if coeff_table is not None:
                    margins += [a.value - a.error_radius for _g, a in coeff_table.entries]
                worst = min(margins)
                lhs = BoundedComplex(mpc(worst, 0), mpf(0))
                rhs = BoundedComplex(mpc(0, 0), mpf(0))
                reports.append(
                    IdentityReport(
                        name=name,
                        lhs=lhs,
                        rhs=rhs,
                        residual=mpf(0) if worst > 0 else abs(worst),
                        tolerance=mpf(0),
                        passed=bool(worst > 0),
                        notes="worst positivity margin (M(0) and all coefficients)",
                    )
                )
        return reports
