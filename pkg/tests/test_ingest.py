"""Tokenization, document loading, and coreference substitution."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from querykg.ingest import (
    CorefChain,
    Document,
    Query,
    apply_coref,
    load_coref,
    load_corpus,
    segment_sentences,
    tokenize,
    write_corpus,
)


def test_tokenize_lowercases_and_splits_punctuation():
    assert tokenize("Albert Einstein, a physicist.") == [
        "albert", "einstein", ",", "a", "physicist", ".",
    ]


def test_tokenize_keeps_digits_and_symbols_apart():
    assert tokenize("pi=3.14") == ["pi", "=", "3", ".", "14"]
    assert tokenize("") == []
    assert tokenize("   \t\n ") == []


words = st.text(alphabet="abcdefghij", min_size=1, max_size=6)


@given(st.lists(words, min_size=0, max_size=8))
def test_tokenize_fixed_point_on_joined_words(tokens):
    # a space-joined token list tokenizes back to itself
    assert tokenize(" ".join(tokens)) == tokens


def test_segment_sentences_splits_on_terminators():
    sents = segment_sentences("A wins. B lost! C won? D draws")
    assert sents == [
        ["a", "wins"], ["b", "lost"], ["c", "won"], ["d", "draws"],
    ]


def test_segment_sentences_drops_empty_runs():
    assert segment_sentences("One... two.. . ") == [["one"], ["two"]]


def test_document_from_text_and_token_count():
    d = Document.from_text("d1", 1, "Alpha beta. Gamma.")
    assert d.sentences == (("alpha", "beta"), ("gamma",))
    assert d.token_count() == 3


def test_document_validation():
    with pytest.raises(ValueError):
        Document.from_text("d1", 0, "text here.")
    # all-punctuation text is allowed and simply has no sentences
    assert Document.from_text("d1", 1, "...").sentences == ()
    with pytest.raises(ValueError):
        Document("d1", 1, (("ok",), ()))


def test_query_from_text():
    q = Query.from_text("Why did X WIN?")
    assert q.tokens == ("why", "did", "x", "win", "?")


def nobel_doc():
    return Document.from_text(
        "doc1", 1,
        "Albert Einstein won the Nobel Prize. He received the Nobel Prize.",
    )


def test_apply_coref_replaces_mention_with_canonical():
    chain = CorefChain("doc1", ("albert", "einstein"), ((1, 0, 0),))
    out = apply_coref(nobel_doc(), [chain])
    assert out.sentences[1] == ("albert", "einstein", "received", "the", "nobel", "prize")
    # untouched sentence survives as-is
    assert out.sentences[0] == nobel_doc().sentences[0]


def test_apply_coref_ignores_other_documents():
    chain = CorefChain("other", ("x",), ((0, 0, 0),))
    assert apply_coref(nobel_doc(), [chain]).sentences == nobel_doc().sentences


def test_apply_coref_multiple_mentions_right_to_left():
    d = Document.from_text("d", 1, "he met her and he left.")
    chain = CorefChain("d", ("the", "visitor"), ((0, 0, 0), (0, 4, 4)))
    out = apply_coref(d, [chain])
    assert out.sentences[0] == (
        "the", "visitor", "met", "her", "and", "the", "visitor", "left",
    )


def test_apply_coref_span_replacement_multiword():
    d = Document.from_text("d", 1, "the old man spoke.")
    chain = CorefChain("d", ("socrates",), ((0, 0, 2),))
    assert apply_coref(d, [chain]).sentences[0] == ("socrates", "spoke")


def test_apply_coref_rejects_out_of_range_span():
    chain = CorefChain("doc1", ("x",), ((0, 5, 9),))
    with pytest.raises(ValueError):
        apply_coref(nobel_doc(), [chain])


def test_apply_coref_rejects_overlapping_chains():
    a = CorefChain("doc1", ("x",), ((0, 0, 1),))
    b = CorefChain("doc1", ("y",), ((0, 1, 2),))
    with pytest.raises(ValueError):
        apply_coref(nobel_doc(), [a, b])


def test_coref_chain_rejects_internal_overlap():
    with pytest.raises(ValueError):
        CorefChain("d", ("x",), ((0, 0, 2), (0, 2, 3)))


def test_load_corpus_sorts_by_rank_and_round_trips(tmp_path):
    path = tmp_path / "docs.jsonl"
    write_corpus(
        [
            Document.from_text("b", 2, "Beta text here."),
            Document.from_text("a", 1, "Alpha text here."),
        ],
        path,
    )
    docs = load_corpus(path)
    assert [d.doc_id for d in docs] == ["a", "b"]
    assert docs[0].sentences == (("alpha", "text", "here"),)


def test_load_corpus_rejects_duplicate_rank(tmp_path):
    path = tmp_path / "docs.jsonl"
    path.write_text(
        '{"doc_id": "a", "rank": 1, "text": "One."}\n'
        '{"doc_id": "b", "rank": 1, "text": "Two."}\n'
    )
    with pytest.raises(ValueError, match="rank"):
        load_corpus(path)


def test_load_corpus_reports_line_number(tmp_path):
    path = tmp_path / "docs.jsonl"
    path.write_text('{"doc_id": "a", "rank": 1, "text": "One."}\nnot json\n')
    with pytest.raises(ValueError, match="2"):
        load_corpus(path)


def test_load_coref_round_trip(tmp_path):
    path = tmp_path / "chains.jsonl"
    path.write_text(
        '{"doc_id": "doc1", "canonical": "Albert Einstein",'
        ' "mentions": [{"sent": 1, "start": 0, "end": 0}]}\n'
    )
    (chain,) = load_coref(path)
    assert chain.doc_id == "doc1"
    assert chain.canonical == ("albert", "einstein")
    assert chain.mentions == ((1, 0, 0),)
