"""Forward-pass reference kernels checked against independent scalar oracles."""

import math

import numpy as np
import pytest

from querykg.kernels import (
    KBC_TOKEN,
    MASK_TOKEN,
    AttentionConfig,
    EmbeddingTables,
    McaParams,
    gated_embed,
    kb_mask,
    load_kbc,
    mca_encode,
    save_kbc,
    softmax,
    topk_attend,
)
from querykg.kgraph import KnowledgeGraph
from querykg.linearize import linearize


def test_softmax_rows_sum_to_one_and_handle_large_logits():
    z = np.array([[1e4, 1e4 + 1.0], [0.0, -1e4]])
    s = softmax(z, axis=1)
    assert np.allclose(s.sum(axis=1), 1.0, atol=1e-12)
    assert s[0, 1] > s[0, 0]


def scalar_gated_embed(tables, tokens, gw, qr, positions=None):
    """Position-at-a-time re-derivation of the gated embedding."""
    d = tables.d
    half = d // 2
    if positions is None:
        positions = list(range(len(tokens)))
    out = np.zeros((len(tokens), d))
    for i, tok in enumerate(tokens):
        e_word = tables.word[tok]
        p = min(max(int(positions[i]), 0), tables.pos.shape[0] - 1)
        e_pos = tables.pos[p]
        w = min(max(int(gw[i]), 1), tables.w_max) - 1
        r = min(max(int(qr[i]), 1), tables.r_max) - 1
        e_gw, e_qr = tables.gw[w], tables.qr[r]
        h = np.zeros(d)
        for j in range(half):
            zg = sum(tables.gate_gw[j, k] * np.concatenate([e_gw, e_word])[k]
                     for k in range(d + half))
            zq = sum(tables.gate_qr[j, k] * np.concatenate([e_qr, e_word])[k]
                     for k in range(d + half))
            h[j] = (1.0 / (1.0 + math.exp(-zg))) * e_gw[j]
            h[half + j] = (1.0 / (1.0 + math.exp(-zq))) * e_qr[j]
        out[i] = e_word + e_pos + h
    return out


def small_tables(seed=0):
    vocab = ["<sub>", "<obj>", "<pred>", "<s>", "alice", "bob", "knows", "prize"]
    return EmbeddingTables.random(vocab, d=8, max_positions=16, w_max=6, r_max=5, seed=seed)


def test_gated_embed_matches_scalar_loop():
    tables = small_tables()
    tokens = ["<sub>", "alice", "<obj>", "bob", "<pred>", "knows"]
    gw = [1, 3, 1, 2, 1, 2]
    qr = [1, 1, 1, 2, 1, 1]
    got = gated_embed(tables, tokens, gw, qr)
    want = scalar_gated_embed(tables, tokens, gw, qr)
    assert np.abs(got - want).max() < 1e-9


def test_gated_embed_clamps_attributes_and_positions():
    tables = small_tables()
    tokens = ["alice", "bob"]
    # 0 and negative clamp up to 1; huge values clamp to the table edge
    low = gated_embed(tables, tokens, [0, -5], [0, -2])
    one = gated_embed(tables, tokens, [1, 1], [1, 1])
    assert np.allclose(low, one)
    high = gated_embed(tables, tokens, [99, 99], [99, 99])
    top = gated_embed(tables, tokens, [6, 6], [5, 5])
    assert np.allclose(high, top)
    far = gated_embed(tables, tokens, [1, 1], [1, 1], positions=[100, 200])
    edge = gated_embed(tables, tokens, [1, 1], [1, 1], positions=[15, 15])
    assert np.allclose(far, edge)


def test_gated_embed_rejects_unknown_token_and_misalignment():
    tables = small_tables()
    with pytest.raises(KeyError):
        gated_embed(tables, ["zzz"], [1], [1])
    with pytest.raises(ValueError):
        gated_embed(tables, ["alice"], [1, 2], [1])
    with pytest.raises(ValueError):
        gated_embed(tables, ["alice"], [1], [1], positions=[0, 1])


def test_embedding_tables_validation():
    with pytest.raises(ValueError):
        EmbeddingTables.random(["a"], d=7)


def brute_topk(query_enc, input_enc, k):
    """Dense re-derivation: score = column sums of row-softmaxed QK^T/sqrt(d)."""
    d = query_enc.shape[1]
    logits = query_enc @ input_enc.T / math.sqrt(d)
    rows = np.exp(logits - logits.max(axis=1, keepdims=True))
    rows /= rows.sum(axis=1, keepdims=True)
    scores = rows.sum(axis=0)
    order = sorted(range(len(scores)), key=lambda i: (-scores[i], i))
    return sorted(order[: min(k, len(scores))])


def test_topk_attend_matches_brute_force_on_many_instances():
    rng = np.random.default_rng(3)
    for trial in range(100):
        m, n, d = rng.integers(1, 6), rng.integers(1, 12), int(rng.choice([4, 8]))
        k = int(rng.integers(1, n + 3))
        q = rng.standard_normal((m, d))
        x = rng.standard_normal((n, d))
        idx, rows, scores = topk_attend(q, x, k)
        assert list(idx) == brute_topk(q, x, k)
        assert np.array_equal(rows, x[idx])
        assert scores.shape == (n,)
        # scores are attention mass and must distribute m in total
        assert abs(scores.sum() - m) < 1e-9


def test_topk_attend_tie_prefers_lower_index():
    q = np.zeros((1, 4))
    x = np.zeros((5, 4))  # all scores exactly equal
    idx, _, _ = topk_attend(q, x, 2)
    assert list(idx) == [0, 1]


def test_topk_attend_validation():
    with pytest.raises(ValueError):
        topk_attend(np.zeros((2, 3)), np.zeros((4, 5)), 1)
    with pytest.raises(ValueError):
        topk_attend(np.zeros((2, 3)), np.zeros((4, 3)), 0)


def full_attention(x, wq, wk, wv):
    d = x.shape[1]
    logits = (x @ wq) @ (x @ wk).T / math.sqrt(d)
    rows = np.exp(logits - logits.max(axis=1, keepdims=True))
    rows /= rows.sum(axis=1, keepdims=True)
    return rows @ (x @ wv)


def test_mca_degenerate_config_equals_two_full_attention_layers():
    rng = np.random.default_rng(11)
    d, n = 16, 40
    x = rng.standard_normal((n, d))
    params = McaParams.random_identity_conv(d, seed=5)
    cfg = AttentionConfig(k=10, d=d, chunk=n, conv_kernel=1, conv_stride=1)
    got = mca_encode(x, cfg, params)
    y = x + full_attention(x, params.wq_local, params.wk_local, params.wv_local)
    want = y + full_attention(y, params.wq_mem, params.wk_mem, params.wv_mem)
    assert np.abs(got - want).max() < 1e-5


def test_mca_attention_rows_sum_to_one():
    rng = np.random.default_rng(2)
    d, n = 8, 30
    x = rng.standard_normal((n, d))
    params = McaParams.random(d, kernel=3, seed=1)
    cfg = AttentionConfig(k=5, d=d, chunk=7, conv_kernel=3, conv_stride=3)
    _, attn = mca_encode(x, cfg, params, return_attn=True)
    for rows in attn["local"]:
        assert np.allclose(rows.sum(axis=1), 1.0, atol=1e-6)
    assert np.allclose(attn["compressed"].sum(axis=1), 1.0, atol=1e-6)


def test_mca_memory_slot_count_follows_conv_geometry():
    rng = np.random.default_rng(4)
    d, n = 8, 10
    x = rng.standard_normal((n, d))
    params = McaParams.random(d, kernel=3, seed=0)
    cfg = AttentionConfig(k=5, d=d, chunk=4, conv_kernel=3, conv_stride=3)
    _, attn = mca_encode(x, cfg, params, return_attn=True)
    # floor((10 - 3) / 3) + 1 = 3 memory slots
    assert attn["compressed"].shape == (n, 3)


def test_mca_short_input_mean_pools_single_slot():
    rng = np.random.default_rng(9)
    d = 8
    x = rng.standard_normal((2, d))
    params = McaParams.random(d, kernel=5, seed=0)
    cfg = AttentionConfig(k=5, d=d, chunk=4, conv_kernel=5, conv_stride=2)
    out, attn = mca_encode(x, cfg, params, return_attn=True)
    assert attn["compressed"].shape == (2, 1)
    # with one memory slot, every position adds exactly the pooled value
    y = x + full_attention(x[:2], params.wq_local, params.wk_local, params.wv_local)
    pooled = (y @ params.wv_mem).mean(axis=0)
    assert np.allclose(out, y + pooled, atol=1e-9)


def test_mca_shape_validation():
    params = McaParams.random(8, kernel=3)
    cfg = AttentionConfig()
    with pytest.raises(ValueError):
        mca_encode(np.zeros(5), cfg, params)
    with pytest.raises(ValueError):
        mca_encode(np.zeros((5, 4)), cfg, params)
    with pytest.raises(ValueError):
        McaParams.random(8, kernel=3).__class__(
            *[np.zeros((8, 8))] * 6, np.zeros((3, 8, 8)), np.zeros((2, 8, 8))
        )


def masked_seq():
    g = KnowledgeGraph()
    s = g.add_node(("albert", "einstein"), weight=4)
    o = g.add_node(("the", "nobel", "prize"), weight=2)
    g.add_edge(s.node_id, o.node_id, ("won",), weight=2)
    g.add_edge(s.node_id, o.node_id, ("received",), weight=1)
    return linearize(g)


def test_kb_mask_p_one_nodes_masks_every_name_token():
    seq = masked_seq()
    masked, targets = kb_mask(seq, mode="nodes", p_mask=1.0, rng_seed=0)
    assert masked[0] == KBC_TOKEN
    for tok, orig in zip(masked[1:], seq.tokens):
        if orig in ("<sub>", "<obj>", "<pred>", "<s>", "won", "received"):
            assert tok == orig
        else:
            assert tok == MASK_TOKEN
    # every masked token is a target, positions index the returned list
    assert all(masked[p] == MASK_TOKEN for p, _ in targets)


def test_kb_mask_p_zero_masks_nothing():
    seq = masked_seq()
    masked, targets = kb_mask(seq, mode="both", p_mask=0.0, rng_seed=0)
    assert masked == [KBC_TOKEN] + list(seq.tokens)
    assert targets == []


def test_kb_mask_edges_mode_touches_only_predicates():
    seq = masked_seq()
    masked, targets = kb_mask(seq, mode="edges", p_mask=1.0, rng_seed=0)
    originals = {orig for _, orig in targets}
    assert originals == {"won", "received"}
    assert "albert" in masked and "prize" in masked


def test_kb_mask_targets_reconstruct_original():
    seq = masked_seq()
    for seed in range(25):
        masked, targets = kb_mask(seq, mode="both", p_mask=0.5, rng_seed=seed)
        rebuilt = list(masked)
        for pos, tok in targets:
            assert rebuilt[pos] == MASK_TOKEN
            rebuilt[pos] = tok
        assert rebuilt == [KBC_TOKEN] + list(seq.tokens)


def test_kb_mask_deterministic_in_seed():
    seq = masked_seq()
    a = kb_mask(seq, mode="both", p_mask=0.4, rng_seed=123)
    for _ in range(50):
        assert kb_mask(seq, mode="both", p_mask=0.4, rng_seed=123) == a
    b = kb_mask(seq, mode="both", p_mask=0.4, rng_seed=124)
    assert a != b or a[1] == []


def test_kb_mask_never_masks_indicators():
    seq = masked_seq()
    for seed in range(100):
        masked, _ = kb_mask(seq, mode="both", p_mask=1.0, rng_seed=seed)
        kept = [t for t in masked if t in ("<sub>", "<obj>", "<pred>", "<s>")]
        orig = [t for t in seq.tokens if t in ("<sub>", "<obj>", "<pred>", "<s>")]
        assert kept == orig


def test_kb_mask_validation():
    seq = masked_seq()
    with pytest.raises(ValueError):
        kb_mask(seq, mode="words", p_mask=0.5, rng_seed=0)
    with pytest.raises(ValueError):
        kb_mask(seq, mode="nodes", p_mask=1.5, rng_seed=0)


def test_kbc_save_load_round_trip(tmp_path):
    seq = masked_seq()
    masked, targets = kb_mask(seq, mode="both", p_mask=0.6, rng_seed=5)
    path = tmp_path / "kbc.jsonl"
    save_kbc(masked, targets, path)
    assert load_kbc(path) == (masked, targets)
