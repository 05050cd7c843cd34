from collections import Counter

import numpy as np
import pytest

from config import settings
from calculus.chains import extract_chain
from calculus.classify import (
    ALL_PREDICATES,
    IncidencePredicate,
    Window,
    classify_integer,
    generative_lower_bound,
    is_generative,
)
from calculus.errors import GuardExceededError, TooSmallNError, ValueOverflowError
from census.oracle import (
    COUNT_KEYS,
    CensusReport,
    chain_block,
    chain_codes,
    generative_census,
    generative_seeds,
    integer_census,
    integer_census_variants,
    iter_odd_blocks,
    predicate_mask,
    shape_census,
)
from census.partition import Subrange, partition_range
from utils.cache import CensusStore, census_cache, census_key

FINAL_STRICT = IncidencePredicate(Window.FINAL, True)
BOUNDARY_STRICT = IncidencePredicate(Window.BOUNDARY, True)


def test_shape_census_n3():
    report = shape_census(3)
    assert report.counts == {"official": 1, "non_official": 0, "unsatisfying": 3}
    assert report.total == 4
    assert report.to_dict()["counts"]["unsatisfying"] == 3


@pytest.mark.parametrize("n", range(3, 11))
def test_shape_census_satisfying_matches_gamma_table(n):
    assert shape_census(n).satisfying == settings.REFERENCE_GAMMA[n]


def test_chain_block_agrees_with_scalar_chains():
    n = 8
    seeds = np.arange(257, 512, 2, dtype=np.int64)
    block = chain_block(seeds, n)
    for i, L in enumerate(seeds.tolist()):
        trace = extract_chain(L, n)
        assert block.final[i] == trace.final
        assert block.codes[i] == trace.shape.code
        assert block.alpha[i] == trace.alpha
        assert block.boundary_min[i] == min(trace.boundary_values)


def test_chain_block_refuses_values_past_int64_headroom():
    with pytest.raises(ValueOverflowError):
        chain_block(np.array([(1 << 61) + 1], dtype=np.int64), 1)


@pytest.mark.parametrize("n, counts", [
    (3, {"official": 1, "non_official": 0, "incidental": 0, "unresolved": 3}),
    (4, {"official": 1, "non_official": 1, "incidental": 2, "unresolved": 4}),
    (5, {"official": 5, "non_official": 1, "incidental": 1, "unresolved": 9}),
])
def test_integer_census_final_below_strict(n, counts):
    report = integer_census(n, FINAL_STRICT)
    assert report.counts == counts
    assert report.evens == 1 << (n - 1)
    assert report.odd_total == 1 << (n - 1)


def test_boundary_window_counts_seed_nine():
    assert integer_census(3, BOUNDARY_STRICT).t == 1
    assert integer_census(5, BOUNDARY_STRICT).t == 3


@pytest.mark.parametrize("partitions", [1, 2, 7])
def test_census_independent_of_partitioning(partitions):
    baseline = integer_census_variants(9, partitions=1, threads=1)
    census_cache.clear()
    split = integer_census_variants(9, partitions=partitions, threads=4)
    assert {t: r.counts for t, r in split.items()} == {t: r.counts for t, r in baseline.items()}
    assert all(r.partition_count == partitions for r in split.values())


def _all_odd_seeds(n):
    return np.arange((1 << n) + 1, 1 << (n + 1), 2, dtype=np.int64)


@pytest.mark.parametrize("n", range(3, 15))
@pytest.mark.parametrize("strict", [True, False])
def test_window_masks_are_nested(n, strict):
    block = chain_block(_all_odd_seeds(n), n)
    final, boundary, postb = (
        predicate_mask(block, n, IncidencePredicate(w, strict)) for w in (Window.FINAL, Window.BOUNDARY, Window.POSTB)
    )
    assert not (final & ~boundary).any()
    assert not (boundary & ~postb).any()


@pytest.mark.parametrize("n", range(3, 11))
def test_predicate_mask_agrees_with_scalar_accepts(n):
    seeds = _all_odd_seeds(n)
    block = chain_block(seeds, n)
    traces = [extract_chain(L, n) for L in seeds.tolist()]
    for pred in ALL_PREDICATES:
        expected = [pred.accepts(trace, n) for trace in traces]
        assert predicate_mask(block, n, pred).tolist() == expected, pred.token


@pytest.mark.parametrize("n", range(3, 9))
def test_census_counts_agree_with_per_integer_classification(n):
    reports = integer_census_variants(n)
    for pred in ALL_PREDICATES:
        outcomes = Counter(classify_integer(L, n, pred).value for L in _all_odd_seeds(n).tolist())
        assert reports[pred.token].counts == {k: outcomes.get(k, 0) for k in COUNT_KEYS}


def test_variants_report_every_predicate():
    reports = integer_census_variants(10)
    assert list(reports) == [p.token for p in ALL_PREDICATES]


def test_integer_census_shape_counts_follow_gamma():
    report = integer_census(10, FINAL_STRICT)
    assert report.counts["official"] + report.counts["non_official"] == settings.REFERENCE_GAMMA[10]


def test_census_guards():
    with pytest.raises(GuardExceededError):
        integer_census(27, FINAL_STRICT)
    with pytest.raises(TooSmallNError):
        integer_census(2, FINAL_STRICT)
    with pytest.raises(GuardExceededError):
        shape_census(30)


def test_census_store_round_trip(tmp_path):
    store = CensusStore(str(tmp_path))
    first = integer_census(6, FINAL_STRICT, store=store)
    assert store.path_for(6, FINAL_STRICT.token).exists()

    census_cache.clear()
    again = integer_census(6, FINAL_STRICT, store=store)
    assert again.counts == first.counts
    assert census_cache.get(census_key(6, FINAL_STRICT.token)) is again
    assert CensusReport.from_dict(again.to_dict()).counts == first.counts


def test_chain_codes_are_a_bijection():
    seeds, codes = chain_codes(10)
    assert seeds.size == 512
    assert np.unique(codes).size == 512


def test_generative_seeds_include_worked_example():
    assert 31 in generative_seeds(5).tolist()


@pytest.mark.parametrize("n", range(7, 15))
def test_generative_seeds_match_scalar_test(n):
    lo = generative_lower_bound(n) | 1
    expected = [L for L in range(lo, (1 << n) + 1, 2) if is_generative(L, n)]
    assert generative_seeds(n).tolist() == expected


def test_odd_blocks_visit_each_odd_once():
    seen = [int(L) for part in partition_range(9, 16, 2) for block in iter_odd_blocks(part, 1) for L in block]
    assert seen == [9, 11, 13, 15]
    assert [b.tolist() for b in iter_odd_blocks(Subrange(17, 32), 3)] == [[17, 19, 21], [23, 25, 27], [29, 31]]


def test_generative_census_report():
    report = generative_census(10)
    assert report.delta_formula == settings.REFERENCE_DELTA[10]
    assert report.proper_in_range == report.g_count
    assert sum(report.per_interval_K.values()) == report.g_count
    assert report.to_dict()["n"] == 10


def test_generative_census_needs_n_at_least_seven():
    with pytest.raises(TooSmallNError):
        generative_census(6)
