from collections import Counter

import pytest

from towerlab.catalog import catalog_list, check_distinct, survey, survey_one, survey_table
from towerlab.errors import GroupSpecError
from towerlab.named import construct_named
from towerlab.tower import Ordinal, run_tower


def test_small_examples():
    assert [e.spec for e in catalog_list(1)] == ["T"]
    eight = [e for e in catalog_list(8) if e.group.order == 8]
    assert len(eight) == 5 and {"D8", "Q8"} <= {e.spec for e in eight}
    six = catalog_list(6)
    assert check_distinct(six) == []
    assert len(six) == 8


def test_counts_up_to_15(catalog):
    counts = Counter(e.group.order for e in catalog if e.group.order <= 15)
    assert [counts[n] for n in range(1, 16)] == [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1]


def test_pairwise_non_isomorphic(catalog):
    assert check_distinct(catalog) == []


def test_tags(catalog):
    by = {e.spec: e for e in catalog}
    assert by["S3"].tags == {"abelian": False, "centerless": True, "complete": True}
    assert by["C5"].tags["abelian"] and not by["C5"].tags["complete"]
    assert not by["D8"].centerless
    assert not by["C2xC2xC2"].complete


def test_bounds():
    with pytest.raises(GroupSpecError):
        catalog_list(49)
    with pytest.raises(GroupSpecError):
        catalog_list(0)


def test_survey_examples():
    rows = {r.spec: r for r in survey(["D8", "S3", "C4xC4", "Z7"])}
    assert rows["D8"].termination == Ordinal(1, 1) and rows["D8"].centerless_onset == Ordinal(1, 1)
    assert rows["S3"].termination == Ordinal(0, 0)
    assert rows["C4xC4"].status == "cap-exceeded" and rows["C4xC4"].stage_orders[0][0] == 16
    assert rows["Z7"].status == "error"


def test_survey_centerless_small_are_finite():
    for r in survey(catalog_list(15)):
        if r.center_order == 1:
            assert r.termination is not None and r.termination.limit_part == 0


def test_survey_rows_rederivable():
    for spec in ("D8", "C3xC3", "S3xS3", "Q8"):
        row = survey_one(spec)
        run = run_tower(construct_named(spec))
        assert row.termination == run.termination
        assert row.stage_orders == tuple(tuple(g.order for g in b.stages) for b in run.blocks)
        assert survey_one(spec) == row


def test_parallel_matches_serial():
    specs = [e.spec for e in catalog_list(10)]
    assert survey(specs, workers=2) == survey(specs)


def test_table_is_aligned():
    text = survey_table(survey(["T", "D8"]))
    lines = text.splitlines()
    assert lines[0].startswith("spec") and "ω+1" in lines[2]
