import mpmath
import pytest
from mpmath import mpc, mpf

from xizeros import (
    AlephParam,
    BoundedReal,
    check_identities,
    estimate_order,
    eval_M,
    eval_product,
    fit_zero_density,
    termwise_diagnostic,
    zero_sum,
)
from xizeros.products import (
    SUITE_NAMES,
    EmptyTable,
    InsufficientZeros,
    fit_growth_order,
    zero_sum_tail,
)

from conftest import zeta_zero_ordinates


def test_zero_sum_partial_matches_oracle(zero_table_60):
    # oracle derived from the independently located zeta ordinates
    sums, tail = zero_sum(zero_table_60)
    with mpmath.mp.workdps(40):
        oracle = mpmath.fsum(1 / (2 * t) ** 2 for t in zeta_zero_ordinates(3))
    assert abs(sums[2].value - oracle) < mpf(10) ** (-15)
    assert tail > 0
    # partial sums increase monotonically (every term is positive)
    vals = [s.value for s in sums]
    assert vals == sorted(vals)


def test_zero_sum_rejects_other_exponents(zero_table_60):
    with pytest.raises(ValueError):
        zero_sum(zero_table_60, exponent=4)


def test_termwise_differences_vanish_on_axis(zero_table_60):
    # all base-family zeros are real, so sigma = i*rho is purely imaginary
    # and each termwise difference is exactly zero
    for _ell, delta in termwise_diagnostic(zero_table_60):
        assert delta.value == 0


def test_density_fit_is_increasing(zero_table_60):
    c1, _c2 = fit_zero_density(zero_table_60)
    assert c1 > 0
    assert zero_sum_tail(zero_table_60, 60) > 0
    # the tail estimate shrinks as the cutoff grows
    assert zero_sum_tail(zero_table_60, 120) < zero_sum_tail(zero_table_60, 60)


def test_product_needs_enough_zeros(ctx, aleph0, zero_table_60):
    m0 = eval_M(aleph0, 0, ctx).value.real
    with pytest.raises(InsufficientZeros):
        eval_product(BoundedReal(m0.value, m0.error_radius), zero_table_60, 10, 1, ctx)


def test_product_at_zero_is_m0(ctx, aleph0, zero_table_60):
    m0 = eval_M(aleph0, 0, ctx).value.real
    res, trunc = eval_product(BoundedReal(m0.value, m0.error_radius), zero_table_60, 3, 0, ctx)
    assert res.value.value == mpc(m0.value, 0)
    assert trunc.L == 3


def test_product_vanishes_at_stored_zero(ctx, aleph0, zero_table_60):
    m0 = eval_M(aleph0, 0, ctx).value.real
    rho1 = zero_table_60.real_zeros[0].location
    res, _ = eval_product(BoundedReal(m0.value, m0.error_radius), zero_table_60, 3, rho1, ctx)
    assert abs(res.value.value) < mpf(10) ** (-25)


def test_growth_order_matches_xi_oracle(ctx, aleph0):
    order = estimate_order(aleph0, ctx)
    # independent oracle: the same normalized double-log fit computed from
    # xi(1/2 + r/2)/8 via mpmath's gamma/zeta.  At radii 10..80 the ln ln r
    # correction to the order-1 growth makes the finite-radius slope ~1.8;
    # it approaches 1 only far beyond these radii.
    with mpmath.mp.workdps(50):

        def xi(s):
            s = mpmath.mpf(s)
            return s * (s - 1) / 2 * mpmath.pi ** (-s / 2) * mpmath.gamma(s / 2) * mpmath.zeta(s)

        radii = [10, 20, 40, 80]
        norm = xi(mpf("0.5")) / 8
        mags = [abs(xi(mpf("0.5") + mpf(r) / 2) / 8) for r in radii]
        oracle = fit_growth_order(radii, mags, norm)
    assert abs(order.value - oracle.value) < mpf(10) ** (-10)
    assert abs(order.error_radius - oracle.error_radius) < mpf(10) ** (-10)
    assert mpf(1) < order.value < mpf("2.5")


def test_growth_order_scaling_invariance():
    with mpmath.mp.workdps(60):
        radii = [10, 20, 40]
        mags = [mpmath.exp(mpf(r)) for r in radii]
        base = fit_growth_order(radii, mags, mpf(1))
        scaled = fit_growth_order(radii, [1000 * m for m in mags], mpf(1000))
    assert base.value == scaled.value
    assert abs(base.value - 1) < mpf("0.05")


def test_empty_table_raises(aleph0, ctx, zero_table_60):
    from xizeros import ZeroTable

    empty = ZeroTable(aleph=aleph0, real_zeros=())
    with pytest.raises(EmptyTable):
        zero_sum(empty)
    with pytest.raises(EmptyTable):
        termwise_diagnostic(empty)


def test_check_identities_rejects_unknown(ctx, aleph0):
    with pytest.raises(ValueError):
        check_identities(aleph0, ["NOT_A_CHECK"], ctx)


def test_cheap_identity_checks_pass(ctx, aleph0, coeff_table_20):
    reports = check_identities(
        aleph0,
        ["CONJ", "EVEN", "THETA0", "POSITIVITY", "SERIES_EQ_INTEGRAL"],
        ctx,
        coeff_table=coeff_table_20,
    )
    assert [r.name for r in reports] == [
        "CONJ",
        "EVEN",
        "THETA0",
        "POSITIVITY",
        "SERIES_EQ_INTEGRAL",
    ]
    for r in reports:
        assert r.passed, f"{r.name}: residual {r.residual} > tol {r.tolerance}"


def test_table_backed_identity_checks_pass(ctx, aleph0, suite_tables):
    zero_table, coeff_table = suite_tables
    reports = check_identities(
        aleph0,
        ["SERIES_EQ_PRODUCT", "CONJ_PRODUCT", "SUM_EQ"],
        ctx,
        zero_table=zero_table,
        coeff_table=coeff_table,
    )
    for r in reports:
        assert r.passed, f"{r.name}: residual {r.residual} > tol {r.tolerance}"


def test_suite_names_complete():
    assert set(SUITE_NAMES) == {
        "CONJ",
        "EVEN",
        "SERIES_EQ_INTEGRAL",
        "SERIES_EQ_PRODUCT",
        "CONJ_PRODUCT",
        "SUM_EQ",
        "THETA0",
        "POSITIVITY",
    }
