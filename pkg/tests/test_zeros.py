import mpmath
import pytest
from mpmath import mpc, mpf

from xizeros import (
    AlephParam,
    Box,
    count_zeros_in_box,
    locate_complex_zeros,
    located_zero_count,
    reality_certificate,
    refine_zero,
    scan_real_zeros,
)
from xizeros.zeros import NoSignChange, ZerosError

from conftest import zeta_zero_ordinates


def test_box_validation():
    with pytest.raises(ValueError):
        Box(1, 1, 0, 2)
    b = Box(0, 4, -1, 1)
    assert b.center == mpc(2, 0)
    assert b.contains(mpc(4, 1))
    assert not b.contains(mpc(5, 0))
    quads = b.quadrants()
    assert len(quads) == 4
    assert sum(q.diameter > 0 for q in quads) == 4


def test_scan_finds_first_three_zeros(zero_table_60):
    # independent oracle: twice the ordinates of the first zeta zeros
    oracles = [2 * t for t in zeta_zero_ordinates(3)]
    assert len(zero_table_60.real_zeros) == 3
    assert not zero_table_60.flagged_intervals
    for z, oracle in zip(zero_table_60.real_zeros, oracles):
        assert abs(z.location - oracle) < mpf(10) ** (-20)
        lo, hi = z.bracket
        assert lo < z.location < hi
        assert z.certified_digits >= 10


def test_scan_indices_sequential(zero_table_60):
    assert [z.index for z in zero_table_60.real_zeros] == [1, 2, 3]


def test_scan_rejects_bad_range(ctx, aleph0):
    with pytest.raises(ValueError):
        scan_real_zeros(aleph0, 10, 5, ctx)
    with pytest.raises(ValueError):
        scan_real_zeros(aleph0, 0, 2000, ctx)


def test_refine_zero_certifies_digits(ctx, aleph0):
    z = refine_zero(aleph0, (mpf(28), mpf(29)), ctx)
    oracle = 2 * zeta_zero_ordinates(1)[0]
    assert abs(z.location - oracle) < mpf(10) ** (-z.certified_digits)
    assert z.certified_digits >= 20


def test_refine_zero_requires_sign_change(ctx, aleph0):
    with pytest.raises(NoSignChange):
        refine_zero(aleph0, (mpf(1), mpf(2)), ctx)


def test_count_box_with_three_zeros(ctx, aleph0):
    bc = count_zeros_in_box(aleph0, Box(20, 60, -2, 2), ctx)
    assert bc.count == 3
    assert bc.min_modulus_on_contour > 0


def test_count_empty_box(ctx, aleph0):
    bc = count_zeros_in_box(aleph0, Box(1, 20, -1, 1), ctx)
    assert bc.count == 0


def test_count_negative_winding_impossible(ctx, aleph0):
    # a box symmetric about the real axis can never give negative counts
    bc = count_zeros_in_box(aleph0, Box(25, 31, -1, 1), ctx)
    assert bc.count == 1


def test_locate_isolates_two_real_zeros(ctx, aleph0, zero_table_60):
    found = locate_complex_zeros(aleph0, Box(25, 45, -1, 1), ctx)
    assert located_zero_count(found) == 2
    locs = sorted(z.location.real for z in found)
    assert abs(locs[0] - zero_table_60.real_zeros[0].location) < mpf(10) ** (-15)
    assert abs(locs[1] - zero_table_60.real_zeros[1].location) < mpf(10) ** (-15)
    for z in found:
        assert z.location.imag == 0
        assert z.multiplicity == 1


def test_locate_empty_region(ctx, aleph0):
    assert locate_complex_zeros(aleph0, Box(2, 20, -1, 1), ctx) == []


def test_reality_certificate_base_family(ctx, aleph0):
    rep = reality_certificate(aleph0, 60, 2, ctx)
    assert rep.verdict == "ALL_REAL_IN_BOX"
    assert rep.n_box == rep.n_real == 3
    assert rep.consistent
    assert rep.non_real == ()


def test_certificate_counts_match_scan(ctx, aleph0, zero_table_60):
    rep = reality_certificate(aleph0, 60, 2, ctx)
    assert rep.n_real == len(zero_table_60.real_zeros)
