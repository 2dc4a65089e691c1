import numpy as np
import pytest
from hypothesis import given, settings

from ismtopsis.core import RelationSymbol as R
from ismtopsis.errors import IncompleteInputError, PartitionError, VocabularyError
from ismtopsis.io.parsers import parse_ssim
from ismtopsis.ism import (
    ClosureMode,
    ExtractionMode,
    MarkedBinaryMatrix,
    SsimMatrix,
    conical_matrix,
    dense_rank,
    digraph_edges,
    level_partition,
    parse_mode,
    power_summary,
    ssim_to_initial_reachability,
    transitive_fill,
)

from strategies import binary_matrices


def reachable(values: np.ndarray, max_len: int | None = None) -> np.ndarray:
    """Breadth-first path search from every node, optionally bounded in path length."""
    n = len(values)
    out = np.zeros_like(values, dtype=bool)
    for s in range(n):
        seen = {s}
        frontier = [s]
        steps = 0
        while frontier and (max_len is None or steps < max_len):
            steps += 1
            nxt = []
            for u in frontier:
                for v in range(n):
                    if values[u, v] and v not in seen:
                        seen.add(v)
                        nxt.append(v)
            frontier = nxt
        for v in seen:
            out[s, v] = True
    return out


@pytest.fixture(scope="module")
def initial(study):
    return ssim_to_initial_reachability(parse_ssim((study / "ssim.csv").read_text(), "ssim.csv"))


def test_symbol_conversion_small():
    ssim = SsimMatrix(("A", "B", "C"), {(0, 1): R.V, (0, 2): R.A, (1, 2): R.X})
    m = ssim_to_initial_reachability(ssim)
    assert m.values.astype(int).tolist() == [[1, 1, 0], [0, 1, 1], [1, 1, 1]]
    assert not m.derived.any()


def test_o_symbol_gives_no_link():
    m = ssim_to_initial_reachability(SsimMatrix(("A", "B"), {(0, 1): R.O}))
    assert m.values.astype(int).tolist() == [[1, 0], [0, 1]]


def test_missing_pair_rejected():
    ssim = SsimMatrix(("A", "B", "C"), {(0, 1): R.V, (0, 2): R.O})
    assert ssim.missing_pairs() == [(1, 2)]
    with pytest.raises(IncompleteInputError, match=r"\(B,C\)"):
        ssim_to_initial_reachability(ssim)


def test_chain_single_pass_vs_fixed_point():
    # A -> B -> C -> D: one composition reaches two steps, the fixed point reaches three
    ssim = SsimMatrix(("A", "B", "C", "D"), {
        (0, 1): R.V, (1, 2): R.V, (2, 3): R.V, (0, 2): R.O, (0, 3): R.O, (1, 3): R.O})
    m = ssim_to_initial_reachability(ssim)
    single = transitive_fill(m, ClosureMode.SINGLE_PASS)
    fixed = transitive_fill(m, "fixed-point")
    assert single.cell(0, 2) == "1*" and single.cell(0, 3) == "0"
    assert fixed.cell(0, 3) == "1*"
    assert fixed.cell(0, 1) == "1"


def test_marked_matrix_invariants():
    with pytest.raises(ValueError):
        MarkedBinaryMatrix(("A", "B"), np.zeros((2, 2), dtype=bool))
    vals = np.eye(2, dtype=bool)
    with pytest.raises(ValueError):
        MarkedBinaryMatrix(("A", "B"), vals, np.array([[False, True], [False, False]]))


def test_parse_mode():
    assert parse_mode(ClosureMode, "Fixed-Point") is ClosureMode.FIXED_POINT
    assert parse_mode(ExtractionMode, ExtractionMode.STANDARD) is ExtractionMode.STANDARD
    with pytest.raises(VocabularyError):
        parse_mode(ClosureMode, "warshall")


def test_dense_rank():
    # smallest value gets rank 1, equal values share a rank, no gaps
    assert dense_rank([5, 3, 5, 1]) == (3, 2, 3, 1)
    assert dense_rank([2, 2]) == (1, 1)


def test_study_powers_and_ranks(initial):
    p = power_summary(transitive_fill(initial))
    assert p.driving == (7, 3, 6, 5, 5, 5, 2, 2)
    assert p.dependence == (2, 1, 2, 5, 5, 4, 8, 8)
    assert p.driving_rank == (5, 2, 4, 3, 3, 3, 1, 1)
    assert p.dependence_rank == (2, 1, 2, 4, 4, 3, 5, 5)
    assert p.total == 35


def test_fixed_point_adds_one_cell(initial):
    single = transitive_fill(initial, ClosureMode.SINGLE_PASS)
    fixed = transitive_fill(initial, ClosureMode.FIXED_POINT)
    diff = np.argwhere(single.values != fixed.values)
    assert [(initial.codes[i], initial.codes[j]) for i, j in diff] == [("CA3", "CA6")]
    assert fixed.cell(fixed.index("CA3"), fixed.index("CA6")) == "1*"
    assert np.array_equal(fixed.values, reachable(initial.values))


def test_level_partition_modes(initial):
    m = transitive_fill(initial)
    paper = level_partition(m, ExtractionMode.PAPER_COMPAT)
    standard = level_partition(m, ExtractionMode.STANDARD)
    assert paper.as_dict() == {1: ("CA7", "CA8"), 2: ("CA2",), 3: ("CA4", "CA5", "CA6"), 4: ("CA1", "CA3")}
    assert standard.as_dict() == {1: ("CA7", "CA8"), 2: ("CA2", "CA4", "CA5", "CA6"), 3: ("CA1", "CA3")}
    # the trace records qualifiers that paper-compat mode left for later
    second = paper.trace[1]
    qualified = {r.code for r in second.rows if r.qualifies}
    assert qualified == {"CA2", "CA4", "CA5", "CA6"}
    assert second.extracted == ("CA2",)
    assert paper.level_of("CA1") == 4 and paper.depth == 4


def test_partition_failure_is_reported():
    # an unclosed 3-cycle: every reachability set is larger than its intersection set
    vals = np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]], dtype=bool)
    m = MarkedBinaryMatrix(("A", "B", "C"), vals)
    with pytest.raises(PartitionError, match="iteration 1"):
        level_partition(m, ExtractionMode.STANDARD)


def test_conical_matrix_default_and_explicit(initial):
    m = transitive_fill(initial)
    p = level_partition(m)
    c = conical_matrix(m, p)
    assert c.order == ("CA7", "CA8", "CA2", "CA4", "CA5", "CA6", "CA1", "CA3")
    assert c.levels == (1, 1, 2, 3, 3, 3, 4, 4)
    explicit = conical_matrix(m, p, ["CA7", "CA8", "CA2", "CA4", "CA5", "CA6", "CA3", "CA1"])
    assert explicit.order[-2:] == ("CA3", "CA1")
    with pytest.raises(ValueError):
        conical_matrix(m, p, ["CA1", "CA8", "CA2", "CA4", "CA5", "CA6", "CA3", "CA7"])
    with pytest.raises(ValueError):
        conical_matrix(m, p, ["CA7", "CA8"])


def test_digraph_edges_are_elicited_only(initial):
    m = transitive_fill(initial)
    edges = digraph_edges(m, level_partition(m))
    # 10 one-way and 4 two-way judgments in the SSIM
    assert len(edges) == 18
    assert all(not m.derived[m.index(e.source), m.index(e.target)] for e in edges)
    assert ("CA1", "CA3") in {(e.source, e.target) for e in edges}


@settings(max_examples=150)
@given(binary_matrices())
def test_fixed_point_matches_path_search(m):
    fixed = transitive_fill(m, ClosureMode.FIXED_POINT)
    assert np.array_equal(fixed.values, reachable(m.values))
    assert np.array_equal(fixed.derived, fixed.values & ~m.values)


@settings(max_examples=150)
@given(binary_matrices())
def test_single_pass_is_two_step_reachability(m):
    assert np.array_equal(transitive_fill(m).values, reachable(m.values, max_len=2))


@settings(max_examples=150)
@given(binary_matrices())
def test_closure_idempotent_and_extensive(m):
    fixed = transitive_fill(m, ClosureMode.FIXED_POINT)
    again = transitive_fill(fixed, ClosureMode.FIXED_POINT)
    assert np.array_equal(again.values, fixed.values)
    assert np.array_equal(again.derived, fixed.derived)
    assert not (m.values & ~fixed.values).any()


@settings(max_examples=150)
@given(binary_matrices(), binary_matrices())
def test_closure_monotone(a, b):
    if a.n != b.n:
        return
    union = MarkedBinaryMatrix(a.codes, a.values | b.values)
    ca = transitive_fill(a, ClosureMode.FIXED_POINT).values
    cu = transitive_fill(union, ClosureMode.FIXED_POINT).values
    assert not (ca & ~cu).any()


@settings(max_examples=150)
@given(binary_matrices())
def test_closed_matrix_partitions_into_permutation(m):
    closed = transitive_fill(m, ClosureMode.FIXED_POINT)
    for mode in ExtractionMode:
        p = level_partition(closed, mode)
        assert all(lv >= 1 for lv in p.level)
        c = conical_matrix(closed, p)
        assert sorted(c.order) == sorted(closed.codes)
        idx = [closed.index(code) for code in c.order]
        assert np.array_equal(c.values, closed.values[np.ix_(idx, idx)].astype(np.int8))
        assert list(c.levels) == sorted(c.levels)
