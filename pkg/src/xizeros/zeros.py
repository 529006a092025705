"""Zero location for Xi_aleph: real-axis sign scans with bisection + Newton
polish, argument-principle counting over rectangles, quadtree isolation of
complex zeros, and the box reality certificate comparing the two counts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import mpmath
from mpmath import mpc, mpf

from .kernel import KernelTruncation, plan_truncation
from .numerics import BoundedReal, PrecisionContext
from .transform import AlephParam, eval_Xi, eval_Xi_derivative


class ZerosError(Exception):
    pass


class NoSignChange(ZerosError):
    pass


class NewtonDiverged(ZerosError):
    pass


class PrecisionExhausted(ZerosError):
    pass


class SubdivisionLimit(ZerosError):
    pass


class ZeroOnContour(ZerosError):
    """The contour cannot separate a zero from the boundary.  Carries a
    deterministic sequence of outward perturbation sizes to retry with."""

    def __init__(self, message, suggested_epsilons):
        super().__init__(message)
        self.suggested_epsilons = tuple(suggested_epsilons)


@dataclass(frozen=True)
class Box:
    re_lo: mpf
    re_hi: mpf
    im_lo: mpf
    im_hi: mpf

    def __post_init__(self):
        for f in ("re_lo", "re_hi", "im_lo", "im_hi"):
            object.__setattr__(self, f, mpf(getattr(self, f)))
        if self.re_lo >= self.re_hi or self.im_lo >= self.im_hi:
            raise ValueError("degenerate box")

    @property
    def diameter(self) -> mpf:
        return mpmath.hypot(self.re_hi - self.re_lo, self.im_hi - self.im_lo)

    @property
    def center(self) -> mpc:
        return mpc((self.re_lo + self.re_hi) / 2, (self.im_lo + self.im_hi) / 2)

    @property
    def im_extent(self) -> mpf:
        """Largest |Im z| on the box; bounds the oscillator growth e^{|Im z| x}."""
        return max(abs(self.im_lo), abs(self.im_hi))

    @property
    def max_abs(self) -> mpf:
        return max(
            abs(mpc(r, i))
            for r in (self.re_lo, self.re_hi)
            for i in (self.im_lo, self.im_hi)
        )

    def contains(self, z: mpc, slack=mpf(0)) -> bool:
        return (
            self.re_lo - slack <= z.real <= self.re_hi + slack
            and self.im_lo - slack <= z.imag <= self.im_hi + slack
        )

    def quadrants(self, dx=mpf(0), dy=mpf(0)):
        cx = (self.re_lo + self.re_hi) / 2 + dx
        cy = (self.im_lo + self.im_hi) / 2 + dy
        return (
            Box(self.re_lo, cx, self.im_lo, cy),
            Box(cx, self.re_hi, self.im_lo, cy),
            Box(self.re_lo, cx, cy, self.im_hi),
            Box(cx, self.re_hi, cy, self.im_hi),
        )


@dataclass(frozen=True)
class RealZero:
    aleph: AlephParam
    index: int
    location: mpf
    bracket: Tuple[mpf, mpf]
    certified_digits: int

    def __post_init__(self):
        lo, hi = self.bracket
        if not (lo < self.location < hi):
            raise ValueError("location must lie inside its bracket")


@dataclass(frozen=True)
class ComplexZero:
    aleph: AlephParam
    location: mpc
    residual: mpf
    multiplicity: int = 1

    def __post_init__(self):
        if self.location.imag < 0:
            raise ValueError("store upper-half representative")


@dataclass(frozen=True)
class BoxCount:
    box: Box
    count: int
    min_modulus_on_contour: mpf


@dataclass(frozen=True)
class ZeroTable:
    aleph: AlephParam
    real_zeros: Tuple[RealZero, ...]
    complex_zeros: Tuple[ComplexZero, ...] = ()
    provenance: str = ""
    flagged_intervals: Tuple[Tuple[mpf, mpf], ...] = ()

    def __post_init__(self):
        locs = [z.location for z in self.real_zeros]
        if locs != sorted(locs):
            raise ValueError("real zeros must be ordered by location")


# ---------------------------------------------------------------------------

_AXIS_IM_THRESHOLD = mpf("1e-3")
_BISECTION_WIDTH = mpf("1e-6")


def _xi_real(aleph: AlephParam, lam, ctx, plan) -> BoundedReal:
    r = eval_Xi(aleph, lam, ctx, plan=plan)
    return r.value.real


def refine_zero(
    aleph: AlephParam,
    bracket: Tuple[mpf, mpf],
    ctx: PrecisionContext,
    plan: Optional[KernelTruncation] = None,
    index: int = 1,
) -> RealZero:
    """Safeguarded Newton with the analytic derivative: each step is taken
    only if it stays inside the current sign-change bracket, otherwise the
    bracket is bisected; iteration stops when the step drops below
    10^(-target_digits+5) or |Xi| sinks below its own error radius.
    """
    with ctx.workdps():
        lo, hi = mpf(bracket[0]), mpf(bracket[1])
        if plan is None:
            # on the real axis the cos oscillator is bounded by 1, so the
            # domain cutoff needs no growth allowance
            plan = plan_truncation(aleph.aleph, 0, ctx)
        flo = _xi_real(aleph, lo, ctx, plan)
        fhi = _xi_real(aleph, hi, ctx, plan)
        if abs(flo.value) <= flo.error_radius or abs(fhi.value) <= fhi.error_radius:
            raise PrecisionExhausted(f"cannot resolve sign at bracket {bracket}")
        if mpmath.sign(flo.value) == mpmath.sign(fhi.value):
            raise NoSignChange(f"no sign change over {bracket}")
        orig = (lo, hi)
        slo = mpmath.sign(flo.value)

        x = (lo + hi) / 2
        step_tol = mpf(10) ** (-(ctx.target_digits - 5))
        last_step = hi - lo
        for _ in range(200):
            fx = _xi_real(aleph, x, ctx, plan)
            if abs(fx.value) <= fx.error_radius:
                # at the zero to within the evaluation noise floor; let the
                # residual/derivative quotient alone set the uncertainty
                last_step = mpf(0)
                break
            if mpmath.sign(fx.value) == slo:
                lo = x
            else:
                hi = x
            dfx = eval_Xi_derivative(aleph, x, 1, ctx, plan=plan).value.real
            x_new = None
            if dfx.value != 0 and abs(dfx.value) > dfx.error_radius:
                cand = x - fx.value / dfx.value
                if lo < cand < hi:
                    x_new = cand
            if x_new is None:
                x_new = (lo + hi) / 2
            last_step = min(abs(x_new - x), hi - lo)
            x = x_new
            if last_step < step_tol:
                break

        fx = _xi_real(aleph, x, ctx, plan)
        dfx = eval_Xi_derivative(aleph, x, 1, ctx, plan=plan).value.real
        uncert = last_step
        if abs(dfx.value) > dfx.error_radius:
            uncert = max(uncert, (abs(fx.value) + fx.error_radius) / abs(dfx.value))
        elif uncert == 0:
            uncert = hi - lo
        certified = int(mpmath.floor(-mpmath.log10(uncert))) if uncert > 0 else ctx.target_digits
        certified = max(1, min(certified, ctx.target_digits))
        blo = min(orig[0], x - _BISECTION_WIDTH)
        bhi = max(orig[1], x + _BISECTION_WIDTH)
        return RealZero(
            aleph=aleph,
            index=index,
            location=x,
            bracket=(orig[0], orig[1]) if orig[0] < x < orig[1] else (blo, bhi),
            certified_digits=certified,
        )


def scan_real_zeros(aleph: AlephParam, a, b, ctx: PrecisionContext, initial_step=mpf("0.5")) -> ZeroTable:
    """Sign scan of Xi_aleph over [a, b] >= 0 with adaptive step halving near
    dips, bracketing every sign change and polishing each bracket.

    Subintervals where |Xi| cannot be resolved above its error radius are
    flagged and skipped rather than aborting the scan.
    """
    with ctx.workdps():
        a, b = mpf(a), mpf(b)
        if not (0 <= a < b):
            raise ValueError("need 0 <= a < b")
        if b > 1000:
            raise ValueError("scan range capped at 1000")
        # bounded oscillator on the real axis: no growth allowance needed
        plan = plan_truncation(aleph.aleph, 0, ctx)
        min_step = mpf(initial_step) / 64
        flagged: List[Tuple[mpf, mpf]] = []
        brackets: List[Tuple[mpf, mpf]] = []

        def fval(x):
            return _xi_real(aleph, x, ctx, plan)

        def resolved(fv):
            return abs(fv.value) > fv.error_radius

        def examine(x1, f1, x2, f2):
            if resolved(f1) and resolved(f2) and mpmath.sign(f1.value) != mpmath.sign(f2.value):
                brackets.append((x1, x2))
                return
            if x2 - x1 <= min_step:
                if not (resolved(f1) and resolved(f2)):
                    flagged.append((x1, x2))
                return
            xm = (x1 + x2) / 2
            fm = fval(xm)
            dip = (not resolved(fm)) or abs(fm.value) < min(abs(f1.value), abs(f2.value))
            if dip or not (resolved(f1) and resolved(f2)):
                examine(x1, f1, xm, fm)
                examine(xm, fm, x2, f2)

        step = mpf(initial_step)
        xs = [a + step * k for k in range(int(mpmath.ceil((b - a) / step)))] + [b]
        xs = [x for x in xs if x <= b]
        fs = [fval(x) for x in xs]
        for i in range(len(xs) - 1):
            examine(xs[i], fs[i], xs[i + 1], fs[i + 1])

        zeros = []
        for i, br in enumerate(sorted(brackets)):
            try:
                zeros.append(refine_zero(aleph, br, ctx, plan=plan, index=i + 1))
            except PrecisionExhausted:
                flagged.append(br)
        zeros.sort(key=lambda z: z.location)
        zeros = [
            RealZero(z.aleph, i + 1, z.location, z.bracket, z.certified_digits)
            for i, z in enumerate(zeros)
        ]
        prov = f"scan[{a},{b}] step={initial_step} wd={ctx.working_digits} td={ctx.target_digits}"
        return ZeroTable(
            aleph=aleph,
            real_zeros=tuple(zeros),
            provenance=prov,
            flagged_intervals=tuple(flagged),
        )


def count_zeros_in_box(
    aleph: AlephParam,
    box: Box,
    ctx: PrecisionContext,
    plan: Optional[KernelTruncation] = None,
) -> BoxCount:
    """Winding number of Xi_aleph around the rectangle boundary.

    The contour is sampled adaptively until consecutive phase changes stay
    below pi/2; raises ZeroOnContour when the minimum modulus cannot clear
    3x the evaluation error radius.
    """
    with ctx.workdps():
        if plan is None:
            plan = plan_truncation(aleph.aleph, box.im_extent, ctx)
        cache: dict = {}
        state = {"min_mod": mpmath.inf, "max_err": mpf(0)}
        eps_seq = [mpf(e) * box.diameter for e in ("1e-3", "3e-3", "1e-2")]

        def F(z):
            hit = cache.get(z)
            if hit is None:
                hit = eval_Xi(aleph, z, ctx, plan=plan).value
                cache[z] = hit
                mod = abs(hit.value)
                if mod < state["min_mod"]:
                    state["min_mod"] = mod
                if hit.error_radius > state["max_err"]:
                    state["max_err"] = hit.error_radius
                if mod < 3 * hit.error_radius:
                    raise ZeroOnContour(
                        f"|Xi({z})| = {mod} within 3x error radius", eps_seq
                    )
            return hit

        corners = [
            mpc(box.re_lo, box.im_lo),
            mpc(box.re_hi, box.im_lo),
            mpc(box.re_hi, box.im_hi),
            mpc(box.re_lo, box.im_hi),
        ]

        half_pi = mpmath.pi / 2

        def walk(z1, f1, z2, f2, depth):
            d = mpmath.arg(f2.value / f1.value)
            if abs(d) < half_pi:
                return d
            if depth >= ctx.max_refinements + 20:
                raise ZeroOnContour(
                    f"phase unresolved between {z1} and {z2}", eps_seq
                )
            zm = (z1 + z2) / 2
            fm = F(zm)
            return walk(z1, f1, zm, fm, depth + 1) + walk(zm, fm, z2, f2, depth + 1)

        total = mpf(0)
        for k in range(4):
            z1, z2 = corners[k], corners[(k + 1) % 4]
            n = max(4, int(mpmath.ceil(abs(z2 - z1) / mpf("0.5"))))
            pts = [z1 + (z2 - z1) * mpf(j) / n for j in range(n)] + [z2]
            fpts = [F(z) for z in pts]
            for j in range(n):
                total += walk(pts[j], fpts[j], pts[j + 1], fpts[j + 1], 0)

        turns = total / (2 * mpmath.pi)
        count = int(mpmath.nint(turns))
        if abs(turns - count) >= mpf("0.1"):
            raise ZerosError(f"winding number {turns} not near an integer")
        if count < 0:
            raise ZerosError(f"negative winding number {count}")
        return BoxCount(box=box, count=count, min_modulus_on_contour=state["min_mod"])


def _count_with_retries(aleph, box, ctx, plan):
    """Count, growing the box outward by the deterministic epsilon ladder
    whenever a zero sits on (or too near) the contour."""
    attempt = box
    last = None
    for eps in [mpf(0)] + [mpf(e) * box.diameter for e in ("1e-3", "3e-3", "1e-2")]:
        attempt = Box(box.re_lo - eps, box.re_hi + eps, box.im_lo - eps, box.im_hi + eps)
        try:
            return count_zeros_in_box(aleph, attempt, ctx, plan=plan)
        except ZeroOnContour as exc:
            last = exc
    raise last


def _complex_newton(aleph, z0, ctx, plan, box):
    step_tol = mpf(10) ** (-(ctx.target_digits - 5))
    z = mpc(z0)
    slack = box.diameter
    for _ in range(60):
        f = eval_Xi(aleph, z, ctx, plan=plan).value
        df = eval_Xi_derivative(aleph, z, 1, ctx, plan=plan).value
        if abs(df.value) <= df.error_radius or df.value == 0:
            raise NewtonDiverged("derivative unresolved")
        step = f.value / df.value
        z = z - step
        if not box.contains(z, slack=slack):
            raise NewtonDiverged("left the search box")
        if abs(step) < step_tol:
            return z
    raise NewtonDiverged("no convergence in 60 iterations")


def locate_complex_zeros(
    aleph: AlephParam,
    box: Box,
    ctx: PrecisionContext,
    plan: Optional[KernelTruncation] = None,
) -> List[ComplexZero]:
    """Quadtree subdivision until each sub-box isolates a single zero, then
    complex Newton polish; zeros within 1e-3 of the real axis are polished on
    the axis.  Returned multiplicities sum to the box count; zeros are stored
    with their upper-half representative.
    """
    with ctx.workdps():
        if plan is None:
            plan = plan_truncation(aleph.aleph, box.im_extent + 1, ctx)
        found: List[Tuple[mpc, mpf, int]] = []

        def polish(sub: Box, multiplicity: int):
            z = _complex_newton(aleph, sub.center, ctx, plan, sub)
            if abs(z.imag) <= _AXIS_IM_THRESHOLD:
                zr = _complex_newton(aleph, mpc(z.real, 0), ctx, plan, sub)
                z = mpc(zr.real, 0)
            if not sub.contains(z, slack=sub.diameter * mpf("1e-3")):
                # converged onto a zero belonging to a different sub-box;
                # subdividing further re-centers the iteration
                raise NewtonDiverged(f"converged outside the sub-box at {z}")
            f = eval_Xi(aleph, z, ctx, plan=plan).value
            resid = abs(f.value)
            if resid > 10 * max(f.error_radius, mpf(10) ** (-ctx.working_digits)):
                raise NewtonDiverged(f"residual {resid} too large at {z}")
            found.append((z, resid, multiplicity))

        def descend(sub: Box, count: int, depth: int):
            if count == 0:
                return
            if count == 1 or sub.diameter < mpf("1e-3"):
                try:
                    polish(sub, count)
                    return
                except NewtonDiverged:
                    if sub.diameter < mpf("1e-3"):
                        # accept the sub-box center; residual from evaluation
                        c = sub.center
                        f = eval_Xi(aleph, c, ctx, plan=plan).value
                        found.append((c, abs(f.value), count))
                        return
            if depth >= ctx.max_refinements:
                raise SubdivisionLimit(f"depth {depth} at {sub}")
            shift_seq = [mpf(0)] + [mpf(e) * sub.diameter for e in ("1e-3", "3e-3", "1e-2")]
            for shift in shift_seq:
                quads = sub.quadrants(dx=shift, dy=shift)
                try:
                    counts = [count_zeros_in_box(aleph, q, ctx, plan=plan).count for q in quads]
                except ZeroOnContour:
                    continue
                if sum(counts) != count:
                    continue
                for q, c in zip(quads, counts):
                    descend(q, c, depth + 1)
                return
            raise ZeroOnContour(f"cannot split {sub} cleanly", shift_seq[1:])

        top = count_zeros_in_box(aleph, box, ctx, plan=plan)
        descend(box, top.count, 0)

        # store upper-half representatives; a reflected lower-half duplicate
        # is the implied conjugate of an already-located zero, so merging it
        # must not inflate the multiplicity
        merged: List[Tuple[mpc, mpf, int]] = []
        tol = mpf(10) ** (-6)
        for z, resid, mult in found:
            if z.imag < 0:
                z = mpmath.conj(z)
            for i, (z2, r2, m2) in enumerate(merged):
                if abs(z - z2) < tol:
                    merged[i] = (z2, min(resid, r2), max(m2, mult))
                    break
            else:
                merged.append((z, resid, mult))
        out = [
            ComplexZero(aleph=aleph, location=z, residual=r, multiplicity=m)
            for z, r, m in merged
        ]
        out.sort(key=lambda c: (c.location.real, c.location.imag))
        return out


def located_zero_count(zeros) -> int:
    """Box-count contribution of located zeros: each upper-half entry
    stands for itself and its implied conjugate."""
    return sum(z.multiplicity * (2 if z.location.imag > 0 else 1) for z in zeros)


@dataclass(frozen=True)
class RealityReport:
    aleph: AlephParam
    re_hi: mpf
    height: mpf
    n_real: int
    n_box: int
    verdict: str
    real_zeros: ZeroTable
    non_real: Tuple[ComplexZero, ...]
    consistent: bool
    notes: str = ""


def reality_certificate(aleph: AlephParam, b, height, ctx: PrecisionContext) -> RealityReport:
    """Compare the argument-principle count over [0,b] x [-h,h] with the
    number of real zeros found on [0,b].

    Verdict ALL_REAL_IN_BOX iff the counts agree; otherwise the non-real
    zeros are located and attached, and internal consistency requires
    n_box = n_real + (number of located non-real zeros, counting both
    conjugates).
    """
    with ctx.workdps():
        b, h = mpf(b), mpf(height)
        box = Box(0, b, -h, h)
        plan = plan_truncation(aleph.aleph, box.im_extent + 1, ctx)
        bc = _count_with_retries(aleph, box, ctx, plan)
        box = bc.box
        table = scan_real_zeros(aleph, 0, box.re_hi, ctx)
        n_real = len(table.real_zeros)
        n_box = bc.count
        if n_box == n_real:
            return RealityReport(
                aleph=aleph,
                re_hi=box.re_hi,
                height=box.im_hi,
                n_real=n_real,
                n_box=n_box,
                verdict="ALL_REAL_IN_BOX",
                real_zeros=table,
                non_real=(),
                consistent=True,
                notes=f"axis classification threshold |Im| <= {mpmath.nstr(_AXIS_IM_THRESHOLD, 3)}",
            )
        located = locate_complex_zeros(aleph, box, ctx, plan=plan)
        non_real = tuple(z for z in located if z.location.imag > _AXIS_IM_THRESHOLD)
        n_non_real = sum(2 * z.multiplicity for z in non_real)
        consistent = n_box == n_real + n_non_real
        return RealityReport(
            aleph=aleph,
            re_hi=box.re_hi,
            height=box.im_hi,
            n_real=n_real,
            n_box=n_box,
            verdict="NON_REAL_PRESENT",
            real_zeros=table,
            non_real=non_real,
            consistent=consistent,
            notes=f"axis classification threshold |Im| <= {mpmath.nstr(_AXIS_IM_THRESHOLD, 3)}",
        )
