from math import comb

import pytest

from starconfig.classify import (
    REASONS,
    ValidationError,
    answer,
    classification_table,
    cross_validate,
    degree_bound,
    dimension_count,
)

# rows l = 2..8, columns d = 1..10; Y = a generic curve contains some X(l)
TRUTH = {
    2: "YYYYYYYYYY",
    3: "NYYYYYYYYY",
    4: "NNYYYYYYYY",
    5: "NNNNYYYYYY",
    6: "NNNNNNNNNN",
    7: "NNNNNNNNNN",
    8: "NNNNNNNNNN",
}


def test_truth_table():
    table = classification_table(10, 8)
    assert len(table) == 70
    for l, row in TRUTH.items():
        for d, ch in enumerate(row, 1):
            assert table[(d, l)].answer == (ch == "Y"), (d, l)


def test_reasons():
    assert answer(1, 3).reason == "degree-bound"
    assert answer(3, 5).reason == "degree-bound"
    assert answer(4, 5).reason == "luroth"
    assert answer(3, 4).reason == "group-law"
    assert answer(2, 3).reason == "trivial-small-l"
    assert answer(1, 2).reason == "trivial-small-l"
    assert answer(4, 4).reason == "certified-rank"
    assert answer(5, 5).reason == "certified-rank"
    assert answer(9, 6).reason == "dimension-count"
    assert answer(2, 6).reason == "degree-bound"
    assert all(v.reason in REASONS for v in classification_table(12, 9).values())


def test_degree_bound():
    assert degree_bound(3, 5) and not degree_bound(4, 5)
    with pytest.raises(ValueError):
        degree_bound(0, 3)
    with pytest.raises(ValueError):
        degree_bound(3, 1)


@pytest.mark.parametrize("l", range(2, 10))
def test_dimension_count(l):
    for d in range(l - 1, l + 4):
        sigma, target, ok = dimension_count(d, l)
        assert target == comb(d + 2, 2) - 1
        assert sigma - target == l * (5 - l) // 2
        assert ok == (l <= 5)


def test_dimension_count_needs_generators():
    with pytest.raises(ValueError):
        dimension_count(2, 5)


def test_verdict_json():
    data = answer(4, 5).to_json()
    assert data["answer"] == "no" and data["evidence"]["luroth_hypersurface_degree"] == 54
    assert answer(9, 7).to_json()["evidence"]["excess"] == 2 * 7 - comb(7, 2) == -7


def test_table_ranges():
    table = classification_table(6, 5, d_min=4, l_min=4)
    assert sorted(table) == [(d, l) for d in range(4, 7) for l in (4, 5)]


@pytest.mark.parametrize("d,l", [(1, 2), (2, 3), (3, 4), (4, 4), (4, 5), (5, 5), (5, 6), (2, 4)])
def test_cross_validate(d, l):
    report = cross_validate(d, l, trials=2)
    assert report["consistent"]
    if (d, l) == (3, 4):
        assert all(report["group_law"].values())


def test_validation_error_is_assertion():
    assert issubclass(ValidationError, AssertionError)
