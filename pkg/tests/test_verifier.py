from itertools import combinations, product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from batchcodes import (
    IncidenceMatrix, RetrievalAssignment, Violation, build_matrix, find_transversal, grouped_matrix,
    is_cbc, naive_is_cbc, retrieval_assignment, span,
)
from batchcodes.verifier import BudgetExceeded


def assert_assignment(M, items, t, res):
    assert isinstance(res, RetrievalAssignment)
    assert sorted(i for i, _ in res.pairs) == sorted(items)
    for item, server in res.pairs:
        assert server in M.column(item)
    assert max(res.load().values()) <= t


def test_assignment_figure1(example1):
    items = [12, 25, 40, 55]
    res = retrieval_assignment(example1, items, 1)
    assert_assignment(example1, items, 1, res)
    # expected 6x4 submatrix
    printed = ["0100", "1001", "1100", "0111", "1010", "0011"]
    sub = example1.bits[:, [j - 1 for j in items]]
    assert (sub == np.array([[int(c) for c in r] for r in printed])).all()


def test_assignment_identity(identity):
    M = identity(6)
    res = retrieval_assignment(M, [2, 5, 6])
    assert set(res.pairs) == {(2, 2), (5, 5), (6, 6)}


def test_assignment_violation():
    M = build_matrix([{1, 2}] * 4, 4)
    res = retrieval_assignment(M, [1, 2, 3, 4], 1)
    assert isinstance(res, Violation)
    assert res.spanned == {1, 2} and len(res.items) > 2
    assert_assignment(M, [1, 2, 3, 4], 2, retrieval_assignment(M, [1, 2, 3, 4], 2))
    with pytest.raises(IndexError):
        retrieval_assignment(M, [1, 5])


def test_is_cbc_examples(example1, example2):
    assert is_cbc(example1, 4, 1) == (True, None)
    assert is_cbc(example2, 5, 2) == (True, None)
    assert not is_cbc(example2, 5, 1)[0]


def test_is_cbc_weight_reduction_without_deletions():
    # lower column 50 ({1,5,6}) to {5,6} without deleting anything: the
    # {4,5,6} copies and the new column fit in 3 rows
    blocks = [b for g in grouped_matrix(6, 4).groups for b in g]
    blocks[49] = frozenset({5, 6})
    M = build_matrix(blocks, 6)
    ok, w = is_cbc(M, 4, 1)
    assert not ok
    assert len(w.items) > len(w.spanned)
    assert 50 in w.items


def test_naive_examples(identity):
    assert naive_is_cbc(identity(4), 3, 1)
    M = build_matrix([{1, 2}] * 3, 3)
    assert not naive_is_cbc(M, 3, 1)
    assert naive_is_cbc(M, 3, 2)
    with pytest.raises(BudgetExceeded):
        naive_is_cbc(M, 2, 1, budget=2)


def test_find_transversal(example1, identity):
    pos = find_transversal(example1, [12, 25, 40, 55])
    assert len(pos) == 4 and len({r for r, _ in pos}) == 4
    assert all(example1.bits[r - 1, c - 1] == 1 for r, c in pos)
    assert find_transversal(identity(3), [1, 2, 3]) == [(1, 1), (2, 2), (3, 3)]
    assert find_transversal(build_matrix([{1}, {1}], 2), [1, 2]) is None


def all_matrices(m, n):
    cols = range(1, 1 << m)
    for combo in product(cols, repeat=n):
        yield IncidenceMatrix.from_masks(combo, m)


def test_exhaustive_equivalence_tiny():
    for m in (1, 2):
        for n in (1, 2, 3):
            for M in all_matrices(m, n):
                for k in range(1, n + 1):
                    for t in (1, 2):
                        assert is_cbc(M, k, t)[0] == naive_is_cbc(M, k, t)


matrices = st.integers(1, 5).flatmap(lambda m: st.lists(
    st.integers(1, (1 << m) - 1), min_size=1, max_size=8).map(lambda cs: IncidenceMatrix.from_masks(cs, m)))


@settings(max_examples=300, deadline=None)
@given(matrices, st.integers(1, 5), st.integers(1, 2))
def test_equivalence_property(M, k, t):
    k = min(k, M.n)
    ok, w = is_cbc(M, k, t)
    assert ok == naive_is_cbc(M, k, t)
    if not ok:
        assert len(w.items) <= k
        assert len(w.items) > t * len(span(M, w.items))


@settings(max_examples=200, deadline=None)
@given(matrices, st.integers(1, 5), st.integers(1, 2), st.data())
def test_monotonicity(M, k, t, data):
    k = min(k, M.n)
    if not is_cbc(M, k, t)[0]:
        return
    if M.n - 1 >= k:
        j = data.draw(st.integers(1, M.n))
        assert is_cbc(M.delete_columns([j]), k, t)[0]
    zeros = np.argwhere(M.bits == 0)
    if len(zeros):
        i, j = zeros[data.draw(st.integers(0, len(zeros) - 1))]
        bits = M.bits.copy()
        bits[i, j] = 1
        assert is_cbc(IncidenceMatrix(bits), k, t)[0]


@settings(max_examples=200, deadline=None)
@given(matrices, st.integers(1, 5), st.integers(1, 2), st.randoms(use_true_random=False))
def test_permutation_invariance(M, k, t, rnd):
    k = min(k, M.n)
    rows = list(range(M.m))
    cols = list(range(M.n))
    rnd.shuffle(rows)
    rnd.shuffle(cols)
    P = IncidenceMatrix(M.bits[rows][:, cols])
    assert is_cbc(P, k, t)[0] == is_cbc(M, k, t)[0]


@settings(max_examples=200, deadline=None)
@given(matrices, st.data())
def test_transversal_iff_assignment(M, data):
    k = data.draw(st.integers(1, M.n))
    items = data.draw(st.lists(st.integers(1, M.n), min_size=k, max_size=k, unique=True))
    tr = find_transversal(M, items)
    res = retrieval_assignment(M, items, 1)
    assert (tr is not None) == isinstance(res, RetrievalAssignment)
    if isinstance(res, Violation):
        assert len(res.items) > len(res.spanned)
