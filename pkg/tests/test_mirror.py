import pytest

from conftest import extended_runs
from quasimap.correlators import Model, OpenTruncationPolicy, gf_closed
from quasimap.mirror import (
    cp2_nd_from_gw,
    disk_degree,
    disk_invariant_cp2,
    extract_gw,
    gmt_check_closed,
    gmt_check_open,
    gw_closed_gf,
    gw_open_gf,
    kontsevich_nd,
    mirror_map_closed,
)
from quasimap.rational import Rat
from quasimap.series import HalfInt

CP2 = Model.cp(3)
M89 = Model.hypersurface(8, 9)


def test_cp2_mirror_map_leading_corrections():
    fmap = mirror_map_closed(CP2, 2, 2)
    assert fmap.corr["x2"].coefficient(2, {"x2": 4}) == Rat(1, 4)
    assert fmap.grading_corr.coefficient(2, {"x2": 3}) == Rat(1, 2)
    assert fmap.corr["x0"].coefficient(2, {"x2": 2}) == Rat(1, 2)


def test_cp2_two_point_function_before_inversion():
    s = gf_closed(CP2, 1, 1, 3, 2)
    assert s.coefficient(0, {"x0": 1}) == 1
    assert s.coefficient(2, {"x2": 2}) == 1
    assert s.coefficient(4, {"x2": 5}) == Rat(16, 15)
    assert s.coefficient(6, {"x2": 8}) == Rat(961, 420)


def test_cp2_instanton_numbers_match_recursion():
    assert cp2_nd_from_gw(4) == kontsevich_nd(4)
    assert kontsevich_nd(5) == [1, 1, 12, 620, 87304]


def test_disk_invariants_small():
    assert disk_invariant_cp2(1) == 2
    assert disk_invariant_cp2(2) == Rat(-9, 4)
    assert disk_invariant_cp2(3) == Rat(3361, 32)


def test_disk_invariant_degree7():
    assert disk_invariant_cp2(4) == Rat(-5784805, 256)


@pytest.mark.skipif(not extended_runs(), reason="set QUASIMAP_EXTENDED=1")
def test_disk_invariant_degree9_extended():
    assert disk_invariant_cp2(5) == Rat(28104787833, 2048)


@pytest.mark.skipif(not extended_runs(), reason="set QUASIMAP_EXTENDED=1")
def test_disk_invariant_degree11_extended():
    assert disk_invariant_cp2(6) == Rat(-291021328876469, 16384)


def test_m89_mirror_map_and_two_point():
    fmap = mirror_map_closed(M89, 3)
    assert fmap.corr["x2"].coefficient(2, {}) == 34138908
    assert fmap.corr["x3"].coefficient(2, {"x2": 1}) == 124995960
    s = gf_closed(M89, 1, 1, 3).scale(Rat(1, 9))
    assert s.coefficient(2, {"x3": 1}) == 306470385
    assert s.coefficient(2, {"x2": 2}) == 215613333


def test_m89_gw_series():
    series = gw_closed_gf(M89, 1, 1, 3).scale(Rat(1, 9))
    assert series.coefficient(2, {"x3": 1}) == 56718144
    assert series.coefficient(2, {"x2": 2}) == Rat(90617373, 2)
    assert series.coefficient(4, {"x2": 1}) == Rat(35512880615374365, 2)
    assert series.coefficient(6, {}) == 1345851991844128981741851


def test_m89_disk_series_values():
    policy = OpenTruncationPolicy(3, jmax=3)
    s_h = gw_open_gf(M89, 1, policy)
    s_1 = gw_open_gf(M89, 0, policy)
    assert extract_gw(s_h, disk_degree(1), {2: 1}) == 945
    assert extract_gw(s_1, disk_degree(1), {3: 1}) == 945
    assert extract_gw(s_1, disk_degree(1), {2: 2}) == Rat(945, 2)
    assert extract_gw(s_1, disk_degree(2), {2: 1}) == 33973546005
    assert extract_gw(s_h, disk_degree(2), {}) == 58381461390
    assert extract_gw(s_1, disk_degree(3), {}) == Rat(41731576876146796884, 25)


def test_extract_gw_bounds():
    series = gw_closed_gf(CP2, 1, 1, 2, 2)
    with pytest.raises(ValueError):
        extract_gw(series, 3, {2: 8})
    assert extract_gw(series, HalfInt(2, 2), {2: 2}) == 1


def test_gmt_identities_m89():
    for d in (2, 3):
        lhs, rhs = gmt_check_closed(M89, d, 1, 1)
        assert lhs == rhs, d
    for d in (2, 3):
        lhs, rhs = gmt_check_open(M89, d, 1)
        assert lhs == rhs, d


def test_open_truncation_stability():
    """Enlarging jmax and the O_1 caps does not change the extracted
    CP^2 disk invariants."""
    base = disk_invariant_cp2(2)
    for jmax in (2, 3, 4):
        policy = OpenTruncationPolicy(
            2, jmax=jmax, unit_cap=lambda f: max(2 - f, 0) + 1
        )
        series = gw_open_gf(CP2, 2, policy)
        assert extract_gw(series, disk_degree(2), {2: 3}) == base
