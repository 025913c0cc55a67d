"""Smoothed TF-IDF weighting and cosine name overlap."""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from querykg.tfidf import TfIdfModel, fit


def corpus():
    # three token bags standing in for documents
    return [
        ("apple", "banana", "apple"),
        ("banana", "cherry"),
        ("cherry", "cherry", "date"),
    ]


def test_document_frequencies():
    m = fit(corpus())
    assert m.n_docs == 3
    assert m.df("apple") == 1
    assert m.df("banana") == 2
    assert m.df("cherry") == 2
    assert m.df("date") == 1


def test_idf_matches_smoothed_formula():
    m = fit(corpus())
    # idf(t) = ln((1 + N) / (1 + df)) + 1
    assert m.idf("banana") == pytest.approx(math.log(4 / 3) + 1, abs=1e-12)
    assert m.idf("apple") == pytest.approx(math.log(4 / 2) + 1, abs=1e-12)
    # unseen tokens take df = 0
    assert m.idf("zzz") == pytest.approx(math.log(4 / 1) + 1, abs=1e-12)


def test_vector_is_tf_times_idf():
    m = fit(corpus())
    v = m.vector(("apple", "apple", "banana"))
    assert v["apple"] == pytest.approx(2 * m.idf("apple"), abs=1e-12)
    assert v["banana"] == pytest.approx(m.idf("banana"), abs=1e-12)


def test_empty_corpus_rejected():
    with pytest.raises(ValueError):
        TfIdfModel([])


def test_overlap_hand_cosine():
    m = fit(corpus())
    a, b = ("apple", "banana"), ("banana", "cherry")
    wa, wb, wc = m.idf("apple"), m.idf("banana"), m.idf("cherry")
    expect = wb * wb / (math.hypot(wa, wb) * math.hypot(wb, wc))
    assert m.overlap(a, b) == pytest.approx(expect, abs=1e-12)


def test_overlap_of_equal_bags_is_exactly_one():
    m = fit(corpus())
    assert m.overlap(("apple", "banana", "apple"), ("banana", "apple", "apple")) == 1.0


def test_overlap_disjoint_and_empty():
    m = fit(corpus())
    assert m.overlap(("apple",), ("cherry",)) == 0.0
    assert m.overlap((), ("apple",)) == 0.0
    assert m.overlap((), ()) == 0.0


names = st.lists(st.sampled_from("apple banana cherry date egg fig".split()),
                 min_size=0, max_size=6).map(tuple)


@given(names, names)
def test_overlap_symmetric_bitwise(a, b):
    m = fit(corpus())
    assert m.overlap(a, b) == m.overlap(b, a)


@given(names, names)
def test_overlap_bounded(a, b):
    s = fit(corpus()).overlap(a, b)
    assert 0.0 <= s <= 1.0


@given(names, names)
def test_overlap_positive_iff_shared_token(a, b):
    s = fit(corpus()).overlap(a, b)
    assert (s > 0.0) == bool(set(a) & set(b) and a and b)


@given(names, st.integers(min_value=2, max_value=5))
def test_overlap_scale_invariant(a, k):
    # cosine ignores bag magnitude; proportional bags take the float path,
    # so exact 1.0 is only promised for equal bags
    if not a:
        return
    m = fit(corpus())
    assert m.overlap(a, a * k) == pytest.approx(1.0, abs=1e-12)


def test_adding_shared_token_can_reduce_overlap():
    # cosine is not monotone in shared count: growing b's norm can outpace
    # the dot product gain, so merge thresholds must not assume otherwise
    m = fit(corpus())
    a = ("apple", "apple", "apple", "banana")
    before = m.overlap(a, ("apple",))
    after = m.overlap(a, ("apple", "banana"))
    assert after < before


@given(names.filter(bool), names.filter(bool))
def test_moving_to_equal_bag_maximizes(a, b):
    m = fit(corpus())
    assert m.overlap(a, b) <= m.overlap(a, a)
