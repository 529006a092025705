"""Shared fixtures.

Comparisons against high-precision oracles must run at raised mpmath
precision; an autouse fixture pins mp.dps to 60 for every test so that
assertions on mpf values do not silently round to double precision.

The expensive session fixtures (zero tables, coefficient tables) are built
once and shared between the unit tests and the acceptance suite.
"""

import mpmath
import pytest

from xizeros import (
    AlephParam,
    PrecisionContext,
    compute_coefficients,
    scan_real_zeros,
)
from xizeros.products import default_suite_tables


@pytest.fixture(autouse=True)
def high_dps():
    old = mpmath.mp.dps
    mpmath.mp.dps = 60
    yield
    mpmath.mp.dps = old


@pytest.fixture(scope="session")
def ctx():
    return PrecisionContext()


@pytest.fixture(scope="session")
def fast_ctx():
    return PrecisionContext(working_digits=35, target_digits=20)


@pytest.fixture(scope="session")
def aleph0():
    return AlephParam(0)


@pytest.fixture(scope="session")
def zero_table_60(ctx, aleph0):
    with mpmath.mp.workdps(60):
        return scan_real_zeros(aleph0, 0, 60, ctx)


@pytest.fixture(scope="session")
def coeff_table_20(ctx, aleph0):
    with mpmath.mp.workdps(60):
        return compute_coefficients(aleph0, 20, ctx)


@pytest.fixture(scope="session")
def suite_tables(ctx, aleph0):
    """(zero table with >= 50 real zeros at boosted precision,
    coefficient table to gamma_max=40)."""
    with mpmath.mp.workdps(80):
        return default_suite_tables(aleph0, ctx, L=50, gamma_max=40)


def zeta_zero_ordinates(n):
    """Independent oracle: imaginary parts of the first n nontrivial zeta
    zeros, via mpmath's dedicated zero finder (no shared code paths with
    the package's quadrature or scanning)."""
    with mpmath.mp.workdps(40):
        return [mpmath.zetazero(k).imag for k in range(1, n + 1)]
