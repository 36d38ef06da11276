import pandas as pd
import pytest

from graphroot.definitions import describe_cols, survey_cols, survey_group_cols
from graphroot.generators import gen_known_square, gen_planted_batch
from graphroot.survey import _cut_by_n, survey


@pytest.fixture(scope="module")
def batch():
    return gen_planted_batch(5, 8, 2, 1)


def test_survey_raw(batch):
    result = survey(batch, raw=True)
    assert list(result.columns) == survey_cols
    assert len(result) == 5
    assert result["answer"].all()
    assert (result["root_edges"] <= result["n"] - 1 + result["k"]).all()


def test_survey_includes_max_root(batch):
    result = survey(batch, raw=True, include_max=True)
    assert list(result.columns) == survey_cols + ["max_root_edges"]
    assert (result["max_root_edges"] >= result["root_edges"]).all()


def test_survey_grouped(batch):
    result = survey(batch, n_interval=5)
    assert list(result.columns) == survey_group_cols + describe_cols


def test_survey_kernel_rows():
    cycle = gen_known_square("cycle_square", 7)
    result = survey([cycle], raw=True)
    assert result.loc[0, "answer"]
    assert result.loc[0, "root_edges"] == 7
    assert result.loc[0, "kernel_vertices"] <= result.loc[0, "kernel_bound"]

    grouped = survey([cycle, cycle])
    assert grouped.loc[0, "count"] == 2


def test_survey_with_jobs(batch):
    pd.testing.assert_frame_equal(survey(batch, raw=True, jobs=2), survey(batch, raw=True))


def test_survey_invalid_setting(batch):
    with pytest.raises(ValueError, match="raw"):
        survey(batch, raw="yes")
    with pytest.raises(ValueError, match="n_interval"):
        survey(batch, n_interval=0)


def test_cut_by_n():
    data = _cut_by_n(pd.DataFrame({"n": [3, 10, 11, 25]}), 10)
    assert [str(x) for x in data["n_range"]] == ["(0, 10]", "(0, 10]", "(10, 20]", "(20, 30]"]
