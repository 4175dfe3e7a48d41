import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import bfs_components, definition_ranks, mean_pairwise, spearman_by_definition
from sciswarm.errors import EmptySwarm
from sciswarm.metrics import (
    CSV_COLUMNS, IterationMetrics, average_ranks, camp_count, consensus_variance, default_link_threshold,
    detect_camps, mean_pairwise_distance, rank_correlation,
)


def test_variance():
    assert consensus_variance([(1, 1)] * 3) == 0.0
    assert consensus_variance([(0, 0), (2, 0)]) == 1.0
    assert consensus_variance([(4, 2)]) == 0.0
    with pytest.raises(EmptySwarm):
        consensus_variance([])


def test_mean_pairwise():
    assert mean_pairwise_distance([(0, 0), (2, 0)]) == 2.0
    assert mean_pairwise_distance([(3, 3)]) == 0.0
    assert mean_pairwise_distance([0.0, 1.0, 2.0]) == pytest.approx(4 / 3, rel=1e-12)


def test_camps_examples():
    camps = detect_camps([0.0, 0.1, 5.0, 5.1], 1.0)
    assert camps == {0: 0, 1: 0, 2: 1, 3: 1}
    assert camp_count(detect_camps([0.0, 0.9, 1.8, 2.7], 1.0)) == 1
    assert camp_count(detect_camps([], 1.0)) == 0


def test_camps_keyed_by_lab_id():
    camps = detect_camps({12: (5.0,), 3: (0.0,), 7: (5.5,)}, 1.0)
    assert camps == {3: 0, 7: 1, 12: 1}


def test_default_threshold():
    assert default_link_threshold(0.6, 4) == pytest.approx(0.6, rel=1e-12)


@settings(max_examples=150)
@given(st.lists(st.tuples(st.floats(-5, 5), st.floats(-5, 5)), max_size=20), st.floats(0.1, 3))
def test_camps_match_bfs(pts, threshold):
    camps = detect_camps(pts, threshold)
    groups = {}
    for lab, camp in camps.items():
        groups.setdefault(camp, []).append(lab)
    assert sorted(groups.values()) == bfs_components(pts, threshold)


@settings(max_examples=150)
@given(st.lists(st.tuples(st.floats(-5, 5), st.floats(-5, 5)), min_size=1, max_size=15))
def test_pairwise_matches_oracle(pts):
    assert mean_pairwise_distance(pts) == pytest.approx(mean_pairwise(pts), rel=1e-12, abs=1e-12)


def test_spearman_examples():
    assert rank_correlation([1, 2, 3], [1, 2, 3]) == 1.0
    assert rank_correlation([1, 2, 3], [3, 2, 1]) == -1.0
    assert rank_correlation([1, 2, 3], [1, 3, 2]) == 0.5 == spearman_by_definition([1, 2, 3], [1, 3, 2])
    assert rank_correlation([1], [2]) is None
    assert rank_correlation([1, 1, 1], [1, 2, 3]) is None


@settings(max_examples=300)
@given(st.lists(st.integers(0, 5), min_size=1, max_size=20))
def test_average_ranks_by_definition(values):
    assert average_ranks(values).tolist() == definition_ranks(values)


@settings(max_examples=300)
@given(st.lists(st.tuples(st.integers(0, 50), st.integers(0, 50)), min_size=2, max_size=20))
def test_spearman_matches_definition(pairs):
    a, b = zip(*pairs)
    got = rank_correlation(a, b)
    if got is not None:
        assert got == pytest.approx(spearman_by_definition(a, b), rel=1e-12, abs=1e-12)


def test_csv_row_formatting():
    m = IterationMetrics(3, 20, 0.5, 1.25, 2, -0.1, None, None, 1, 0)
    row = m.row()
    assert len(row) == len(CSV_COLUMNS)
    assert row == ["3", "20", "0.5", "1.25", "2", "-0.1", "", "", "1", "0"]
