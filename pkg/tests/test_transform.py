import mpmath
import pytest
from mpmath import mpc, mpf

from xizeros import (
    AlephParam,
    PrecisionContext,
    differentiate,
    eval_M,
    eval_Xi,
    eval_Xi_derivative,
    heat_flow_residual,
)


def xi_completed(s):
    """Independent oracle: the completed zeta function
    xi(s) = (1/2) s (s-1) pi^{-s/2} Gamma(s/2) zeta(s), via mpmath's gamma
    and zeta (no shared code with the package quadrature)."""
    with mpmath.mp.workdps(60):
        s = mpmath.mpmathify(s)
        return s * (s - 1) / 2 * mpmath.pi ** (-s / 2) * mpmath.gamma(s / 2) * mpmath.zeta(s)


def test_aleph_param_validation():
    with pytest.raises(ValueError):
        AlephParam(mpmath.inf)
    a = AlephParam("-2.5")
    assert a.literature_t == mpf("2.5")


def test_origin_matches_completed_zeta(ctx, aleph0):
    # at the family's base parameter the integral equals xi(1/2)/8
    r = eval_M(aleph0, 0, ctx)
    oracle = xi_completed(mpf(1) / 2) / 8
    assert abs(r.value.value - oracle) <= r.value.error_radius + mpf(10) ** (-40)
    assert abs(r.value.value - oracle) < mpf(10) ** (-28)


@pytest.mark.parametrize("lam", ["1", "7.5", "20"])
def test_xi_matches_critical_line_zeta(ctx, aleph0, lam):
    # Xi_0(lam) = xi(1/2 + i lam/2) / 8 on the critical line
    lam = mpf(lam)
    r = eval_Xi(aleph0, lam, ctx)
    oracle = xi_completed(mpc(mpf(1) / 2, lam / 2)) / 8
    assert abs(oracle.imag) < mpf(10) ** (-50)
    assert abs(r.value.value - oracle.real) < mpf(10) ** (-27)


def test_xi_equals_M_at_rotated_argument(ctx, aleph0):
    lam = mpf("3.25")
    a = eval_Xi(aleph0, lam, ctx).value
    b = eval_M(aleph0, mpc(0, 1) * lam, ctx).value
    assert abs(a.value - b.value) <= a.error_radius + b.error_radius + mpf(10) ** (-40)


def test_M_even_and_conjugate_symmetric(ctx):
    aleph = AlephParam(1)
    tau = mpc("1.3", "0.7")
    m = eval_M(aleph, tau, ctx).value
    m_neg = eval_M(aleph, -tau, ctx).value
    m_conj = eval_M(aleph, mpmath.conj(tau), ctx).value
    tol = 3 * (m.error_radius + m_neg.error_radius) + mpf(10) ** (-40)
    assert abs(m.value - m_neg.value) <= tol
    assert abs(mpmath.conj(m.value) - m_conj.value) <= tol


def test_xi_real_on_real_axis(ctx, aleph0):
    r = eval_Xi(aleph0, mpf("11.0"), ctx)
    assert r.value.value.imag == 0


def test_derivative_matches_finite_difference(ctx, aleph0):
    lam = mpf("5.0")
    d1 = eval_Xi_derivative(aleph0, lam, 1, ctx).value
    fd = differentiate(lambda t: eval_Xi(aleph0, t, ctx).value.real, lam, 1, ctx)
    assert abs(d1.value - fd.value) <= d1.error_radius + fd.error_radius + mpf(10) ** (-20)

    d2 = eval_Xi_derivative(aleph0, lam, 2, ctx).value
    fd2 = differentiate(lambda t: eval_Xi(aleph0, t, ctx).value.real, lam, 2, ctx)
    assert abs(d2.value - fd2.value) <= d2.error_radius + fd2.error_radius + mpf(10) ** (-15)


def test_derivative_rejects_order_3(ctx, aleph0):
    with pytest.raises(ValueError):
        eval_Xi_derivative(aleph0, 1, 3, ctx)


def test_plan_reuse_changes_nothing(ctx, aleph0):
    r1 = eval_Xi(aleph0, 2, ctx)
    r2 = eval_Xi(aleph0, 2, ctx, plan=r1.plan)
    assert r1.value.value == r2.value.value


@pytest.mark.parametrize("aleph,lam", [(0, 5), (1, 0)])
def test_heat_equation_sign_convention(ctx, aleph, lam):
    res_minus, res_plus = heat_flow_residual(AlephParam(aleph), lam, ctx)
    assert res_minus.value < mpf(10) ** (-8)
    assert res_plus.value > 1000 * res_minus.value
