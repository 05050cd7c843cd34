import pytest
from hypothesis import given
from hypothesis import strategies as st

from census.partition import Subrange, partition_range, run_partitioned


def test_single_part():
    assert partition_range(1, 10, 1) == [Subrange(1, 10)]


def test_three_parts_cover_in_order():
    parts = partition_range(1, 10, 3)
    assert len(parts) == 3
    assert parts[0].lo == 1 and parts[-1].hi == 10
    assert all(a.hi + 1 == b.lo for a, b in zip(parts, parts[1:]))


def test_more_parts_than_integers():
    parts = partition_range(4, 6, 10)
    assert [len(p) for p in parts] == [1, 1, 1]


def test_odd_bounds():
    assert Subrange(9, 12).odd_bounds() == (9, 2)
    assert Subrange(10, 16).odd_bounds() == (11, 3)
    assert Subrange(10, 10).odd_bounds()[1] == 0


@given(lo=st.integers(-50, 50), size=st.integers(1, 200), parts=st.integers(1, 12))
def test_partition_is_a_disjoint_cover(lo, size, parts):
    hi = lo + size - 1
    subranges = partition_range(lo, hi, parts)
    flat = [x for s in subranges for x in range(s.lo, s.hi + 1)]
    assert flat == list(range(lo, hi + 1))
    assert all(len(s) >= 1 for s in subranges)


def test_bad_arguments():
    with pytest.raises(ValueError):
        partition_range(5, 4, 1)
    with pytest.raises(ValueError):
        partition_range(1, 4, 0)


def test_run_partitioned_keeps_order():
    parts = partition_range(1, 100, 7)
    sizes = run_partitioned(len, parts, threads=4)
    assert sizes == [len(p) for p in parts]
    assert sum(sizes) == 100
