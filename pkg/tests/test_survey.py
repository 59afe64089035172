import pandas as pd
import pytest

from weighted_trees.survey import (
    SURVEY_COLUMNS, count_disagreements, format_r, run_survey, survey_row, survey_weight_vectors,
    tree_independence,
)
from weighted_trees.utils import TreeValidationError
from weighted_trees.weightings import WeightVector


def test_survey_weight_vectors():
    vectors = survey_weight_vectors(4, 2)
    assert len(vectors) == 8
    assert vectors[0].entries == (1, 1, 1, 1)
    assert vectors[-1].entries == (2, 2, 2, 2)
    assert all(sum(r) % 2 == 0 for r in vectors)
    assert survey_weight_vectors(4, 0) == []


def test_format_r():
    assert format_r(WeightVector((3, 2, 2, 2, 1))) == "3,2,2,2,1"


def test_survey_row(fan5):
    row = survey_row(fan5, 0, WeightVector((3, 2, 2, 2, 1)))
    assert list(row) == SURVEY_COLUMNS
    assert row["verdict"] == "NotGorenstein(NoAdmissibleDegree)"
    assert row["oracle"] == "NotGorenstein(AmbiguousMinimum(k=2))"
    assert row["depth"] == 6
    assert row["a"] is None
    assert row["agree"]


def test_run_survey_four_leaves():
    frame = run_survey(4, 2)
    assert list(frame.columns) == SURVEY_COLUMNS
    assert len(frame) == 16
    assert frame.iloc[0]["r"] == "1,1,1,1"
    assert frame["tree_index"].tolist()[:2] == [0, 1]
    assert frame.iloc[0]["verdict"] == "Gorenstein(a=2)"
    assert frame.iloc[0]["depth"] == 6
    assert str(frame["a"].dtype) == "Int64"
    assert count_disagreements(frame) == 0


def test_run_survey_with_fixed_depth():
    frame = run_survey(4, 1, depth=2)
    assert frame["depth"].tolist() == [2, 2]
    assert frame["oracle"].tolist() == ["Gorenstein(a=2)"] * 2


def test_count_disagreements():
    assert count_disagreements(pd.DataFrame(columns=SURVEY_COLUMNS)) == 0
    frame = pd.DataFrame({"agree": [True, False, False]})
    assert count_disagreements(frame) == 2


def test_tree_independence():
    independent, frame = tree_independence(5, WeightVector((1, 1, 1, 1, 2)), 3)
    assert independent
    assert len(frame) == 5
    assert list(frame.columns) == ["tree_index", "verdict", "h0", "h1", "h2", "h3"]
    assert frame["h0"].tolist() == [1] * 5


def test_run_survey_rejects_three_leaves():
    with pytest.raises(TreeValidationError, match="잎 4개 이상"):
        run_survey(3, 2)


def test_run_survey_parallel_matches_sequential():
    sequential = run_survey(5, 2, workers=1)
    parallel = run_survey(5, 2, workers=2)
    pd.testing.assert_frame_equal(parallel, sequential)
