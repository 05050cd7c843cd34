from census.calibrate import calibrate_predicate, check_reference_consistency
from utils.alerts import get_recent_mismatches


def test_published_tables_agree_row_by_row():
    assert check_reference_consistency(range(3, 26)) == []


def test_calibration_small_range():
    report = calibrate_predicate(3, 5)
    assert [row["n"] for row in report.rows] == [3, 4, 5]
    assert report.scores["final-below-strict"] == 1
    assert report.scores["boundary-below-strict"] == 1
    assert report.scores["postb-below-strict"] == 0
    # ties resolve to canonical order
    assert report.best == "final-below-strict"

    diff = {row["n"]: row for row in report.diff_rows()}
    assert diff[3]["match"]
    assert diff[4]["census_t"] == 2 and diff[4]["diff"] == 1
    assert diff[5]["census_t"] == 1 and diff[5]["diff"] == -2


def test_calibration_misses_become_mismatch_records():
    calibrate_predicate(3, 5)
    misses = get_recent_mismatches(source="calibration")
    assert sorted(r.details["n"] for r in misses) == [4, 5]


def test_boundary_window_counts_nine_at_n3():
    report = calibrate_predicate(3, 3)
    assert report.rows[0]["t"]["boundary-below-strict"] == 1
    assert report.rows[0]["t"]["postb-below-strict"] == 1
    assert report.rows[0]["t"]["final-below-strict"] == 0


def test_empty_range():
    report = calibrate_predicate(5, 4)
    assert report.is_empty
    assert report.best is None
    assert report.to_dict()["best_diff"] == []
