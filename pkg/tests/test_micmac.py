import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ismtopsis.errors import DomainError, VocabularyError
from ismtopsis.ism import PowerSummary, dense_rank
from ismtopsis.micmac import MicmacCluster as C
from ismtopsis.micmac import classify, cluster_for, divergences


def powers(driving, dependence):
    codes = tuple(f"C{i + 1}" for i in range(len(driving)))
    return PowerSummary(codes, tuple(driving), tuple(dependence), dense_rank(driving), dense_rank(dependence))


def test_quadrants():
    assert cluster_for(1, 1, 4) is C.AUTONOMOUS
    assert cluster_for(1, 5, 4) is C.DEPENDENT
    assert cluster_for(5, 5, 4) is C.LINKAGE
    assert cluster_for(5, 1, 4) is C.INDEPENDENT


def test_threshold_is_strict():
    # a power equal to n/2 is weak on that axis
    assert cluster_for(4, 4, 4) is C.AUTONOMOUS
    assert cluster_for(5, 4, 4) is C.INDEPENDENT


def test_study_powers():
    res = classify(powers((7, 3, 6, 5, 5, 5, 2, 2), (2, 1, 2, 5, 5, 4, 8, 8)))
    assert res.threshold == 4
    got = {k: res.members(k) for k in C}
    assert got[C.AUTONOMOUS] == ("C2",)
    assert got[C.LINKAGE] == ("C4", "C5")
    assert got[C.INDEPENDENT] == ("C1", "C3", "C6")
    assert got[C.DEPENDENT] == ("C7", "C8")
    assert res.points[0] == (2, 7)


def test_out_of_range_power():
    with pytest.raises(DomainError):
        classify(powers((0, 1), (1, 1)))
    with pytest.raises(DomainError):
        classify(powers((3, 1), (1, 1)))


def test_divergences():
    res = classify(powers((2, 1), (1, 2)))
    ref = {"C1": "Independent", "C2": "Autonomous"}
    d = divergences(res, ref)
    assert [x.code for x in d] == ["C2"]
    assert "Dependent" in d[0].describe()
    assert divergences(res, {"C1": "Independent"}) == []
    unassigned = divergences(res, {"C1": None})
    assert unassigned[0].reference is None and "no cluster" in unassigned[0].describe()
    with pytest.raises(VocabularyError):
        divergences(res, {"C1": "Central"})


@settings(max_examples=200)
@given(st.integers(2, 12).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.integers(1, n), min_size=n, max_size=n),
    st.lists(st.integers(1, n), min_size=n, max_size=n))))
def test_classification_agrees_with_axes(case):
    n, drv, dep = case
    res = classify(powers(drv, dep))
    for k, cl in enumerate(res.clusters):
        strong_drive = drv[k] > n / 2
        strong_dep = dep[k] > n / 2
        assert (cl in (C.INDEPENDENT, C.LINKAGE)) == strong_drive
        assert (cl in (C.DEPENDENT, C.LINKAGE)) == strong_dep
