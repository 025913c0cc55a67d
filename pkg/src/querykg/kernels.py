"""Forward-only numpy reference kernels for the sequence model side.

Four mechanisms, no training loop: weight/rank-gated input embeddings,
hierarchical top-k position selection, chunked + memory-compressed encoder
attention, and masked KB-completion example generation. Parameters arrive
explicitly; everything is a pure function suitable for oracle testing.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .linearize import LinearizedSequence, scan_blocks

MASK_TOKEN = "[mask]"
KBC_TOKEN = "<kbc>"


def softmax(z: np.ndarray, axis: int = -1) -> np.ndarray:
    """Numerically stable softmax; rows along ``axis`` sum to 1."""
    shifted = z - z.max(axis=axis, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=axis, keepdims=True)


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


@dataclass
class EmbeddingTables:
    """Lookup tables plus gate parameters for the input representation.

    word maps token -> (d,); pos is (max_positions, d); gw is (w_max, d/2)
    indexed by clamped weight; qr is (r_max, d/2) indexed by clamped rank.
    gate_gw / gate_qr are (d/2, 3d/2) and act on [e_attr; e_word].
    Integer lookups are total: weights clamp to [1, w_max], ranks to
    [1, r_max], positions to the table length.
    """

    word: dict[str, np.ndarray]
    pos: np.ndarray
    gw: np.ndarray
    qr: np.ndarray
    gate_gw: np.ndarray
    gate_qr: np.ndarray

    def __post_init__(self):
        d = self.pos.shape[1] if self.pos.ndim == 2 else -1
        if d <= 0 or d % 2:
            raise ValueError(f"pos table must be (max_positions, d) with d even, got {self.pos.shape}")
        half = d // 2
        for name, vec in self.word.items():
            if vec.shape != (d,):
                raise ValueError(f"word vector for {name!r} has shape {vec.shape}, want ({d},)")
        if self.gw.ndim != 2 or self.gw.shape[1] != half:
            raise ValueError(f"gw table must be (w_max, {half}), got {self.gw.shape}")
        if self.qr.ndim != 2 or self.qr.shape[1] != half:
            raise ValueError(f"qr table must be (r_max, {half}), got {self.qr.shape}")
        for name, mat in (("gate_gw", self.gate_gw), ("gate_qr", self.gate_qr)):
            if mat.shape != (half, d + half):
                raise ValueError(f"{name} must be ({half}, {d + half}), got {mat.shape}")
            if not np.all(np.isfinite(mat)):
                raise ValueError(f"{name} contains non-finite values")

    @property
    def d(self) -> int:
        return self.pos.shape[1]

    @property
    def w_max(self) -> int:
        return self.gw.shape[0]

    @property
    def r_max(self) -> int:
        return self.qr.shape[0]

    @classmethod
    def random(
        cls,
        vocab,
        d: int = 16,
        max_positions: int = 1024,
        w_max: int = 64,
        r_max: int = 100,
        seed: int = 0,
    ) -> "EmbeddingTables":
        if d % 2:
            raise ValueError(f"d must be even, got {d}")
        rng = np.random.default_rng(seed)
        half = d // 2
        scale = 1.0 / np.sqrt(d)
        return cls(
            word={tok: rng.standard_normal(d) * scale for tok in vocab},
            pos=rng.standard_normal((max_positions, d)) * scale,
            gw=rng.standard_normal((w_max, half)) * scale,
            qr=rng.standard_normal((r_max, half)) * scale,
            gate_gw=rng.standard_normal((half, d + half)) * scale,
            gate_qr=rng.standard_normal((half, d + half)) * scale,
        )


def gated_embed(tables: EmbeddingTables, tokens, gw, qr, positions=None) -> np.ndarray:
    """Embed a token sequence with gated weight/rank attributes.

    Per position: g_a = sigmoid(gate_a @ [e_a; e_word]) and h_a = g_a * e_a
    for a in {gw, qr}; the output row is e_word + e_pos + [h_gw; h_qr].
    Returns an (n, d) matrix.
    """
    n = len(tokens)
    if not (len(gw) == len(qr) == n):
        raise ValueError(f"aligned inputs required: {n} tokens, {len(gw)} gw, {len(qr)} qr")
    if positions is None:
        positions = range(n)
    elif len(positions) != n:
        raise ValueError(f"aligned inputs required: {n} tokens, {len(positions)} positions")

    d = tables.d
    half = d // 2
    e_word = np.empty((n, d))
    for i, tok in enumerate(tokens):
        if tok not in tables.word:
            raise KeyError(f"token {tok!r} not in word table")
        e_word[i] = tables.word[tok]
    pos_idx = np.fromiter(
        (min(max(int(p), 0), tables.pos.shape[0] - 1) for p in positions), dtype=int, count=n
    )
    e_pos = tables.pos[pos_idx]
    gw_idx = np.fromiter((min(max(int(w), 1), tables.w_max) - 1 for w in gw), dtype=int, count=n)
    qr_idx = np.fromiter((min(max(int(r), 1), tables.r_max) - 1 for r in qr), dtype=int, count=n)
    e_gw = tables.gw[gw_idx]
    e_qr = tables.qr[qr_idx]

    g_gw = _sigmoid(np.concatenate([e_gw, e_word], axis=1) @ tables.gate_gw.T)
    g_qr = _sigmoid(np.concatenate([e_qr, e_word], axis=1) @ tables.gate_qr.T)
    h = np.empty((n, d))
    h[:, :half] = g_gw * e_gw
    h[:, half:] = g_qr * e_qr
    return e_word + e_pos + h


def topk_attend(query_enc: np.ndarray, input_enc: np.ndarray, k: int):
    """Select the min(k, n) input positions drawing the most query attention.

    A = row-softmax(query_enc @ input_enc.T / sqrt(d)); column sums of A
    score each input position; the top scores win, ties to the lower index.
    Returns (indices ascending, selected rows in that order, full score
    vector of length n).
    """
    if query_enc.ndim != 2 or input_enc.ndim != 2 or query_enc.shape[1] != input_enc.shape[1]:
        raise ValueError(
            f"expected (m, d) and (n, d) inputs, got {query_enc.shape} and {input_enc.shape}"
        )
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    d = query_enc.shape[1]
    n = input_enc.shape[0]
    attn = softmax(query_enc @ input_enc.T / np.sqrt(d), axis=1)
    scores = attn.sum(axis=0)
    top = np.argsort(-scores, kind="stable")[: min(k, n)]
    indices = np.sort(top)
    return indices, input_enc[indices], scores


@dataclass
class AttentionConfig:
    k: int = 100
    d: int = 64
    chunk: int = 256
    conv_kernel: int = 3
    conv_stride: int = 3

    def __post_init__(self):
        for name in ("k", "d", "chunk", "conv_kernel", "conv_stride"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")


@dataclass
class McaParams:
    """Projections for one local + one memory-compressed attention layer."""

    wq_local: np.ndarray
    wk_local: np.ndarray
    wv_local: np.ndarray
    wq_mem: np.ndarray
    wk_mem: np.ndarray
    wv_mem: np.ndarray
    conv_k: np.ndarray  # (kernel, d, d)
    conv_v: np.ndarray

    def __post_init__(self):
        d = self.wq_local.shape[0]
        for name in ("wq_local", "wk_local", "wv_local", "wq_mem", "wk_mem", "wv_mem"):
            if getattr(self, name).shape != (d, d):
                raise ValueError(f"{name} must be ({d}, {d}), got {getattr(self, name).shape}")
        for name in ("conv_k", "conv_v"):
            mat = getattr(self, name)
            if mat.ndim != 3 or mat.shape[1:] != (d, d):
                raise ValueError(f"{name} must be (kernel, {d}, {d}), got {mat.shape}")
        if self.conv_k.shape[0] != self.conv_v.shape[0]:
            raise ValueError("conv_k and conv_v disagree on kernel size")

    @property
    def kernel(self) -> int:
        return self.conv_k.shape[0]

    @classmethod
    def random(cls, d: int, kernel: int, seed: int = 0) -> "McaParams":
        rng = np.random.default_rng(seed)
        scale = 1.0 / np.sqrt(d)
        mk = lambda *shape: rng.standard_normal(shape) * scale
        return cls(
            mk(d, d), mk(d, d), mk(d, d), mk(d, d), mk(d, d), mk(d, d),
            mk(kernel, d, d), mk(kernel, d, d),
        )

    @classmethod
    def random_identity_conv(cls, d: int, seed: int = 0) -> "McaParams":
        """Random projections with a kernel-1 identity convolution, the
        configuration under which the compressed layer is full attention."""
        p = cls.random(d, 1, seed)
        eye = np.eye(d)[None, :, :]
        return cls(
            p.wq_local, p.wk_local, p.wv_local,
            p.wq_mem, p.wk_mem, p.wv_mem,
            eye.copy(), eye.copy(),
        )


def mca_encode(x: np.ndarray, cfg: AttentionConfig, params: McaParams, return_attn: bool = False):
    """One chunk-local attention layer, then one memory-compressed layer.

    Local: positions split into contiguous chunks of cfg.chunk; scaled-dot
    self-attention runs inside each chunk independently. Compressed: key and
    value projections of the whole sequence pass through a strided 1-D
    convolution (no padding) leaving floor((n - kernel)/stride) + 1 memory
    slots that every position attends over. Both layers carry residual
    connections. If n < kernel the memory degenerates to a single mean-pooled
    slot. With chunk >= n and a kernel-1 stride-1 identity convolution the
    whole thing reduces to two stacked full self-attention layers.

    With return_attn, also returns {"local": [per-chunk rows], "compressed":
    matrix} for inspection.
    """
    if x.ndim != 2:
        raise ValueError(f"x must be (n, d), got {x.shape}")
    n, d = x.shape
    if params.wq_local.shape[0] != d:
        raise ValueError(f"params are for d={params.wq_local.shape[0]}, input has d={d}")

    local_attn = []
    y = np.empty_like(x)
    for start in range(0, n, cfg.chunk):
        xc = x[start : start + cfg.chunk]
        attn = softmax((xc @ params.wq_local) @ (xc @ params.wk_local).T / np.sqrt(d), axis=1)
        y[start : start + cfg.chunk] = xc + attn @ (xc @ params.wv_local)
        local_attn.append(attn)

    keys = y @ params.wk_mem
    values = y @ params.wv_mem
    kernel, stride = params.kernel, cfg.conv_stride
    if n < kernel:
        mem_k = keys.mean(axis=0, keepdims=True)
        mem_v = values.mean(axis=0, keepdims=True)
    else:
        slots = (n - kernel) // stride + 1
        mem_k = np.empty((slots, d))
        mem_v = np.empty((slots, d))
        for s in range(slots):
            base = s * stride
            mem_k[s] = sum(keys[base + j] @ params.conv_k[j] for j in range(kernel))
            mem_v[s] = sum(values[base + j] @ params.conv_v[j] for j in range(kernel))

    attn = softmax((y @ params.wq_mem) @ mem_k.T / np.sqrt(d), axis=1)
    out = y + attn @ mem_v
    if return_attn:
        return out, {"local": local_attn, "compressed": attn}
    return out


def kb_mask(
    seq: LinearizedSequence, mode: str, p_mask: float, rng_seed: int
) -> tuple[list[str], list[tuple[int, str]]]:
    """Generate one KB-completion example from a linearized graph.

    Units are whole name spans: node names (after <sub>/<obj>) for mode
    "nodes", predicate names (after <pred>/<s>) for mode "edges", both for
    "both". Each eligible unit is independently masked with probability
    p_mask under random.Random(rng_seed) — draws happen only for eligible
    units, in token order, so the outcome is a pure function of (seed,
    p_mask, mode). Every token of a masked unit becomes "[mask]"; indicator
    tokens are untouched. Returns the masked sequence with a leading task
    token "<kbc>", and (position, original token) targets where positions
    index the returned list: substituting them back restores the unmasked
    sequence behind the task token.
    """
    if mode not in ("nodes", "edges", "both"):
        raise ValueError(f"mode must be nodes, edges, or both, got {mode!r}")
    if not 0.0 <= p_mask <= 1.0:
        raise ValueError(f"p_mask must be in [0, 1], got {p_mask}")

    spans: list[tuple[int, int]] = []
    for block in scan_blocks(seq.tokens):
        if mode in ("nodes", "both"):
            spans.append(block.subject)
            spans.append(block.object)
        if mode in ("edges", "both"):
            spans.extend(block.predicates)
    spans.sort()

    rng = random.Random(rng_seed)
    masked = list(seq.tokens)
    targets: list[tuple[int, str]] = []
    for start, end in spans:
        if rng.random() < p_mask:
            for i in range(start, end):
                targets.append((i + 1, seq.tokens[i]))
                masked[i] = MASK_TOKEN
    return [KBC_TOKEN] + masked, targets


def save_kbc(masked_tokens: list[str], targets: list[tuple[int, str]], path) -> None:
    """Write one KB-completion example as JSONL."""
    record = {
        "task": "kbc",
        "input": list(masked_tokens),
        "targets": [{"pos": p, "token": t} for p, t in targets],
    }
    Path(path).write_text(json.dumps(record) + "\n", encoding="utf-8")


def load_kbc(path) -> tuple[list[str], list[tuple[int, str]]]:
    path = Path(path)
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        obj = json.loads(line)
        for fieldname in ("task", "input", "targets"):
            if fieldname not in obj:
                raise ValueError(f"{path}:{lineno}: missing field {fieldname!r}")
        return list(obj["input"]), [(t["pos"], t["token"]) for t in obj["targets"]]
    raise ValueError(f"{path}: no kbc record found")
