"""Trainable Bi-GRU-CNN classifier with manual forward/backward passes.

The architecture is sequential: embedding lookup -> 1-D convolution (ReLU,
'same' zero padding) -> bidirectional GRU -> global max pooling over time
-> dense sigmoid head.  Dropout (one configured rate, two sites) applies
after the embedding lookup and after pooling, in training mode only.

Shape table (B = batch, T = max_length, D = embedding dim, F =
conv_filters, K = conv_kernel, H = gru_hidden per direction, V = vocab):

    embedding         (V, D)   frozen by default; the PAD row is pinned to
                               zero and never receives gradient
    conv_w            (K, D, F)
    conv_b            (F,)
    per direction (fwd, bwd):
      w_z, w_r, w_h   (F, H)   input projections of update/reset/candidate
      u_z, u_r, u_h   (H, H)   recurrent projections
      b_z, b_r, b_h   (H,)
    head_w            (2H,)
    head_b            (1,)

One GRU step, with m_t the 0/1 validity mask of the position:

    z_t = sigmoid(x_t w_z + h_{t-1} u_z + b_z)
    r_t = sigmoid(x_t w_r + h_{t-1} u_r + b_r)
    c_t = tanh(x_t w_h + (r_t * h_{t-1}) u_h + b_h)
    h_t = m_t * ((1 - z_t) * h_{t-1} + z_t * c_t) + (1 - m_t) * h_{t-1}

PAD steps therefore carry the hidden state through unchanged, and the max
pooling runs over valid positions only (an all-PAD sequence pools to the
zero vector).  All arithmetic is float64.
"""

from __future__ import annotations

import copy
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .corpus import Label, Tweet
from .embeddings import PAD_INDEX, EmbeddingTable
from .ensemble import PredictionSet
from .errors import DataError, NumericError
from .metrics import ConfusionMatrix
from .preprocess import TokenSequence, encode, normalize, tokenize

CHECKPOINT_FORMAT = "bigrucnn-ckpt-v1"

_GRU_FIELDS = ("w_z", "u_z", "b_z", "w_r", "u_r", "b_r", "w_h", "u_h", "b_h")

# Open-interval clamp for reported probabilities.
_P_LO = np.nextafter(0.0, 1.0)
_P_HI = np.nextafter(1.0, 0.0)


@dataclass
class ModelConfig:
    max_length: int = 512
    conv_filters: int = 128
    conv_kernel: int = 3
    gru_hidden: int = 64
    dropout: float = 0.2
    learning_rate: float = 1e-3
    epochs: int = 15
    batch_size: int = 32
    seed: int = 42
    trainable_embeddings: bool = False

    def __post_init__(self):
        if not 0.0 <= self.dropout < 1.0:
            raise ValueError(f"dropout must be in [0, 1), got {self.dropout}")
        # learning_rate 0 is allowed as a diagnostic no-op configuration.
        if self.learning_rate < 0:
            raise ValueError(f"learning_rate must be >= 0, got {self.learning_rate}")
        for name in ("max_length", "conv_filters", "conv_kernel", "gru_hidden", "epochs", "batch_size"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1, got {getattr(self, name)}")


@dataclass
class GRUParams:
    w_z: np.ndarray
    u_z: np.ndarray
    b_z: np.ndarray
    w_r: np.ndarray
    u_r: np.ndarray
    b_r: np.ndarray
    w_h: np.ndarray
    u_h: np.ndarray
    b_h: np.ndarray


@dataclass
class ModelState:
    config: ModelConfig
    embedding: np.ndarray
    conv_w: np.ndarray
    conv_b: np.ndarray
    fwd: GRUParams
    bwd: GRUParams
    head_w: np.ndarray
    head_b: np.ndarray
    adam_m: dict = field(default_factory=dict)
    adam_v: dict = field(default_factory=dict)
    adam_t: int = 0


def _sigmoid(x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def _glorot(rng: np.random.Generator, shape: tuple, fan_in: int, fan_out: int) -> np.ndarray:
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=shape)


def _orthogonal(rng: np.random.Generator, n: int) -> np.ndarray:
    a = rng.standard_normal((n, n))
    q, r = np.linalg.qr(a)
    return q * np.sign(np.diag(r))


def init_state(config: ModelConfig, table: EmbeddingTable, rng: np.random.Generator) -> ModelState:
    d, f, k, h = table.dim, config.conv_filters, config.conv_kernel, config.gru_hidden

    def gru() -> GRUParams:
        return GRUParams(
            w_z=_glorot(rng, (f, h), f, h),
            u_z=_orthogonal(rng, h),
            b_z=np.zeros(h),
            w_r=_glorot(rng, (f, h), f, h),
            u_r=_orthogonal(rng, h),
            b_r=np.zeros(h),
            w_h=_glorot(rng, (f, h), f, h),
            u_h=_orthogonal(rng, h),
            b_h=np.zeros(h),
        )

    return ModelState(
        config=config,
        embedding=table.vectors.copy(),
        conv_w=_glorot(rng, (k, d, f), k * d, f),
        conv_b=np.zeros(f),
        fwd=gru(),
        bwd=gru(),
        head_w=_glorot(rng, (2 * h,), 2 * h, 1),
        head_b=np.zeros(1),
    )


def parameters(state: ModelState) -> list[tuple[str, np.ndarray]]:
    """Trainable tensors in a fixed order; names match gradient keys."""
    params = [("conv_w", state.conv_w), ("conv_b", state.conv_b)]
    for prefix, gru in (("fwd", state.fwd), ("bwd", state.bwd)):
        for name in _GRU_FIELDS:
            params.append((f"{prefix}.{name}", getattr(gru, name)))
    params.append(("head_w", state.head_w))
    params.append(("head_b", state.head_b))
    if state.config.trainable_embeddings:
        params.append(("embedding", state.embedding))
    return params


def _validate_shapes(state: ModelState) -> None:
    cfg = state.config
    d = state.embedding.shape[1]
    expected = {
        "conv_w": (cfg.conv_kernel, d, cfg.conv_filters),
        "conv_b": (cfg.conv_filters,),
        "head_w": (2 * cfg.gru_hidden,),
        "head_b": (1,),
    }
    for prefix in ("fwd", "bwd"):
        for gate in ("z", "r", "h"):
            expected[f"{prefix}.w_{gate}"] = (cfg.conv_filters, cfg.gru_hidden)
            expected[f"{prefix}.u_{gate}"] = (cfg.gru_hidden, cfg.gru_hidden)
            expected[f"{prefix}.b_{gate}"] = (cfg.gru_hidden,)
    for name, array in parameters(state):
        if name == "embedding":
            continue
        if array.shape != expected[name]:
            raise DataError(
                f"parameter {name} has shape {array.shape}, expected {expected[name]}"
            )


def _batch_arrays(batch: Sequence[TokenSequence], max_length: int) -> tuple[np.ndarray, np.ndarray]:
    ids = np.zeros((len(batch), max_length), dtype=np.int64)
    lengths = np.zeros(len(batch), dtype=np.int64)
    for i, seq in enumerate(batch):
        if seq.max_length != max_length:
            raise DataError(
                f"sequence max_length {seq.max_length} does not match model max_length {max_length}"
            )
        ids[i] = seq.indices
        lengths[i] = min(seq.original_length, max_length)
    mask = (np.arange(max_length)[None, :] < lengths[:, None]).astype(np.float64)
    return ids, mask


def _gru_forward(x: np.ndarray, mask: np.ndarray, p: GRUParams):
    """Run one GRU direction over (B, T, F) inputs; returns (B, T, H)."""
    n, steps, _ = x.shape
    hidden = p.b_z.shape[0]
    xz = x @ p.w_z + p.b_z
    xr = x @ p.w_r + p.b_r
    xh = x @ p.w_h + p.b_h
    h = np.zeros((n, hidden))
    hs = np.empty((n, steps, hidden))
    zs = np.empty_like(hs)
    rs = np.empty_like(hs)
    cs = np.empty_like(hs)
    hprev = np.empty_like(hs)
    for t in range(steps):
        m = mask[:, t : t + 1]
        z = _sigmoid(xz[:, t] + h @ p.u_z)
        r = _sigmoid(xr[:, t] + h @ p.u_r)
        c = np.tanh(xh[:, t] + (r * h) @ p.u_h)
        hprev[:, t] = h
        zs[:, t] = z
        rs[:, t] = r
        cs[:, t] = c
        h = m * ((1.0 - z) * h + z * c) + (1.0 - m) * h
        hs[:, t] = h
    return hs, (zs, rs, cs, hprev)


def _gru_backward(dh_out: np.ndarray, x: np.ndarray, mask: np.ndarray, p: GRUParams, cache):
    """Backprop through one GRU direction.

    ``dh_out`` is the gradient with respect to every emitted hidden state;
    returns the input gradient and a GRUParams of parameter gradients.
    """
    zs, rs, cs, hprev = cache
    n, steps, hidden = dh_out.shape
    daz = np.empty((n, steps, hidden))
    dar = np.empty_like(daz)
    dah = np.empty_like(daz)
    dh = np.zeros((n, hidden))
    for t in range(steps - 1, -1, -1):
        m = mask[:, t : t + 1]
        dht = dh_out[:, t] + dh
        z, r, c, hp = zs[:, t], rs[:, t], cs[:, t], hprev[:, t]
        draw = m * dht
        dhp = (1.0 - m) * dht
        dz = draw * (c - hp)
        dc = draw * z
        dhp = dhp + draw * (1.0 - z)
        dah_t = dc * (1.0 - c * c)
        drh = dah_t @ p.u_h.T
        dr = drh * hp
        dhp = dhp + drh * r
        daz_t = dz * z * (1.0 - z)
        dar_t = dr * r * (1.0 - r)
        dhp = dhp + daz_t @ p.u_z.T + dar_t @ p.u_r.T
        daz[:, t] = daz_t
        dar[:, t] = dar_t
        dah[:, t] = dah_t
        dh = dhp
    dx = daz @ p.w_z.T + dar @ p.w_r.T + dah @ p.w_h.T
    span = ([0, 1], [0, 1])
    grads = GRUParams(
        w_z=np.tensordot(x, daz, axes=span),
        u_z=np.tensordot(hprev, daz, axes=span),
        b_z=daz.sum(axis=(0, 1)),
        w_r=np.tensordot(x, dar, axes=span),
        u_r=np.tensordot(hprev, dar, axes=span),
        b_r=dar.sum(axis=(0, 1)),
        w_h=np.tensordot(x, dah, axes=span),
        u_h=np.tensordot(rs * hprev, dah, axes=span),
        b_h=dah.sum(axis=(0, 1)),
    )
    return dx, grads


def _forward_cache(state: ModelState, batch: Sequence[TokenSequence], train_mode: bool, rng):
    cfg = state.config
    _validate_shapes(state)
    ids, mask = _batch_arrays(batch, cfg.max_length)
    if ids.size and ids.max() >= state.embedding.shape[0]:
        raise DataError("token index outside the model vocabulary")
    x = state.embedding[ids]
    drop_in = None
    drop_pool = None
    use_dropout = train_mode and cfg.dropout > 0.0
    if use_dropout and rng is None:
        raise ValueError("training-mode forward with dropout needs an rng")
    if use_dropout:
        keep = 1.0 - cfg.dropout
        drop_in = (rng.random(x.shape) < keep) / keep
        x = x * drop_in
    k = cfg.conv_kernel
    pad_left = (k - 1) // 2
    pad_right = k - 1 - pad_left
    xp = np.pad(x, ((0, 0), (pad_left, pad_right), (0, 0)))
    win = sliding_window_view(xp, k, axis=1)  # (B, T, D, K)
    pre = np.einsum("btdk,kdf->btf", win, state.conv_w) + state.conv_b
    conv = np.maximum(pre, 0.0)
    hf, cache_f = _gru_forward(conv, mask, state.fwd)
    conv_rev = conv[:, ::-1]
    mask_rev = mask[:, ::-1]
    hb_rev, cache_b = _gru_forward(conv_rev, mask_rev, state.bwd)
    hb = hb_rev[:, ::-1]
    hcat = np.concatenate([hf, hb], axis=2)
    shielded = np.where(mask[:, :, None] > 0, hcat, -np.inf)
    pool_idx = shielded.argmax(axis=1)  # (B, 2H); all-PAD rows pick t=0, which is zero
    pooled = np.take_along_axis(hcat, pool_idx[:, None, :], axis=1)[:, 0, :]
    pooled_out = pooled
    if use_dropout:
        keep = 1.0 - cfg.dropout
        drop_pool = (rng.random(pooled.shape) < keep) / keep
        pooled_out = pooled * drop_pool
    logit = pooled_out @ state.head_w + state.head_b[0]
    prob = np.clip(_sigmoid(logit), _P_LO, _P_HI)
    cache = {
        "ids": ids,
        "mask": mask,
        "drop_in": drop_in,
        "xp_shape": xp.shape,
        "win": win,
        "pre": pre,
        "conv": conv,
        "cache_f": cache_f,
        "cache_b": cache_b,
        "pool_idx": pool_idx,
        "pooled_out": pooled_out,
        "drop_pool": drop_pool,
        "logit": logit,
        "pad_left": pad_left,
    }
    return prob, cache


def forward(
    state: ModelState,
    batch: Sequence[TokenSequence],
    train_mode: bool = False,
    rng: np.random.Generator | None = None,
) -> np.ndarray:
    """Probability of INFORMATIVE for each sequence, each in (0, 1)."""
    prob, _ = _forward_cache(state, batch, train_mode, rng)
    return prob


def loss(probabilities: Iterable[float], targets: Iterable[int]) -> float:
    """Mean binary cross-entropy of probabilities against 0/1 targets."""
    p = np.asarray(probabilities, dtype=np.float64)
    t = np.asarray(targets, dtype=np.float64)
    if p.shape != t.shape:
        raise ValueError(f"length mismatch: {p.shape} probabilities vs {t.shape} targets")
    if p.size == 0:
        raise ValueError("loss of an empty batch is undefined")
    p = np.clip(p, 1e-12, 1.0 - 1e-12)
    return float(-np.mean(t * np.log(p) + (1.0 - t) * np.log1p(-p)))


def _loss_from_logits(logit: np.ndarray, targets: np.ndarray) -> float:
    # Numerically stable equivalent of BCE(sigmoid(logit), targets).
    return float(np.mean(np.logaddexp(0.0, logit) - targets * logit))


def evaluate_loss(state: ModelState, batch: Sequence[TokenSequence], targets) -> float:
    """Deterministic (dropout-off) training loss on one batch."""
    targets = np.asarray(targets, dtype=np.float64)
    _, cache = _forward_cache(state, batch, train_mode=False, rng=None)
    return _loss_from_logits(cache["logit"], targets)


def backward(
    state: ModelState,
    batch: Sequence[TokenSequence],
    targets,
    train_mode: bool = False,
    rng: np.random.Generator | None = None,
) -> tuple[dict[str, np.ndarray], float, np.ndarray]:
    """Loss gradients for every trainable tensor.

    Returns (gradients keyed like ``parameters()``, loss value, forward
    probabilities).  With ``train_mode`` the dropout masks drawn from
    ``rng`` are shared between the forward pass and its gradients.
    """
    targets = np.asarray(targets, dtype=np.float64)
    prob, cache = _forward_cache(state, batch, train_mode, rng)
    if targets.shape != prob.shape:
        raise ValueError(f"length mismatch: {prob.shape} outputs vs {targets.shape} targets")
    n = prob.shape[0]
    cfg = state.config
    loss_val = _loss_from_logits(cache["logit"], targets)

    dlogit = (prob - targets) / n
    grads: dict[str, np.ndarray] = {
        "head_w": cache["pooled_out"].T @ dlogit,
        "head_b": np.array([dlogit.sum()]),
    }
    dpooled = np.outer(dlogit, state.head_w)
    if cache["drop_pool"] is not None:
        dpooled = dpooled * cache["drop_pool"]

    hidden2 = 2 * cfg.gru_hidden
    dhcat = np.zeros((n, cfg.max_length, hidden2))
    rows = np.arange(n)[:, None]
    cols = np.arange(hidden2)[None, :]
    np.add.at(dhcat, (rows, cache["pool_idx"], cols), dpooled)

    mask = cache["mask"]
    conv = cache["conv"]
    h = cfg.gru_hidden
    dconv_f, gf = _gru_backward(dhcat[:, :, :h], conv, mask, state.fwd, cache["cache_f"])
    dconv_b, gb = _gru_backward(
        dhcat[:, :, h:][:, ::-1], conv[:, ::-1], mask[:, ::-1], state.bwd, cache["cache_b"]
    )
    dconv = dconv_f + dconv_b[:, ::-1]
    for prefix, gradset in (("fwd", gf), ("bwd", gb)):
        for name in _GRU_FIELDS:
            grads[f"{prefix}.{name}"] = getattr(gradset, name)

    dpre = dconv * (cache["pre"] > 0)
    grads["conv_b"] = dpre.sum(axis=(0, 1))
    grads["conv_w"] = np.einsum("btdk,btf->kdf", cache["win"], dpre)

    dxp = np.zeros(cache["xp_shape"])
    steps = cfg.max_length
    for k in range(cfg.conv_kernel):
        dxp[:, k : k + steps] += dpre @ state.conv_w[k].T
    dx = dxp[:, cache["pad_left"] : cache["pad_left"] + steps]
    if cache["drop_in"] is not None:
        dx = dx * cache["drop_in"]
    if cfg.trainable_embeddings:
        demb = np.zeros_like(state.embedding)
        np.add.at(demb, cache["ids"], dx)
        demb[PAD_INDEX] = 0.0  # PAD row is pinned, never updated
        grads["embedding"] = demb
    return grads, loss_val, prob


def _adam_step(state: ModelState, grads: dict[str, np.ndarray], learning_rate: float,
               beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8) -> None:
    state.adam_t += 1
    t = state.adam_t
    for name, param in parameters(state):
        g = grads[name]
        m = state.adam_m.setdefault(name, np.zeros_like(param))
        v = state.adam_v.setdefault(name, np.zeros_like(param))
        m *= beta1
        m += (1.0 - beta1) * g
        v *= beta2
        v += (1.0 - beta2) * (g * g)
        m_hat = m / (1.0 - beta1**t)
        v_hat = v / (1.0 - beta2**t)
        param -= learning_rate * m_hat / (np.sqrt(v_hat) + eps)


def _dev_f1(state: ModelState, dev_pairs, batch_size: int) -> float:
    golds = [y for _, y in dev_pairs]
    preds: list[int] = []
    for start in range(0, len(dev_pairs), batch_size):
        chunk = [s for s, _ in dev_pairs[start : start + batch_size]]
        prob = forward(state, chunk, train_mode=False)
        preds.extend(int(p >= 0.5) for p in prob)
    return ConfusionMatrix.from_pairs(preds, golds).f1


def train(
    config: ModelConfig,
    table: EmbeddingTable,
    train_pairs: Sequence[tuple[TokenSequence, int]],
    dev_pairs: Sequence[tuple[TokenSequence, int]] | None = None,
    initial_state: ModelState | None = None,
) -> tuple[ModelState, list[dict]]:
    """Mini-batch Adam training with per-epoch loss and dev-F1 history.

    Returns the state with the best dev F1 across epochs (the final state
    when no dev set is given) and one history entry per epoch.  All
    randomness (init, shuffling, dropout) derives from ``config.seed``.
    """
    if not train_pairs:
        raise DataError("empty training set")
    rng = np.random.default_rng(config.seed)
    state = initial_state if initial_state is not None else init_state(config, table, rng)
    seqs = [s for s, _ in train_pairs]
    ys = np.array([y for _, y in train_pairs], dtype=np.float64)
    n = len(seqs)
    history: list[dict] = []
    best_state: ModelState | None = None
    best_f1 = -1.0
    for epoch in range(1, config.epochs + 1):
        order = rng.permutation(n)
        batch_losses = []
        for batch_no, start in enumerate(range(0, n, config.batch_size), start=1):
            take = order[start : start + config.batch_size]
            batch = [seqs[i] for i in take]
            grads, loss_val, _ = backward(state, batch, ys[take], train_mode=True, rng=rng)
            if not np.isfinite(loss_val):
                raise NumericError(f"non-finite loss in epoch {epoch}, batch {batch_no}")
            for name, g in grads.items():
                if not np.all(np.isfinite(g)):
                    raise NumericError(
                        f"non-finite gradient for {name} in epoch {epoch}, batch {batch_no}"
                    )
            _adam_step(state, grads, config.learning_rate)
            batch_losses.append(loss_val)
        entry: dict = {"epoch": epoch, "train_loss": float(np.mean(batch_losses))}
        if dev_pairs:
            entry["dev_f1"] = _dev_f1(state, dev_pairs, config.batch_size)
            if entry["dev_f1"] > best_f1:
                best_f1 = entry["dev_f1"]
                best_state = copy.deepcopy(state)
        history.append(entry)
    return (best_state if best_state is not None else state), history


@dataclass(frozen=True)
class Prediction:
    probability: float

    @property
    def label(self) -> Label:
        return Label.INFORMATIVE if self.probability >= 0.5 else Label.UNINFORMATIVE


class Classifier:
    """Config + vocabulary + weights, with the full text pipeline attached."""

    def __init__(self, config: ModelConfig, table: EmbeddingTable, state: ModelState | None = None):
        self.config = config
        self.table = table
        if state is None:
            state = init_state(config, table, np.random.default_rng(config.seed))
        self.state = state
        _validate_shapes(self.state)

    def encode_text(self, text: str) -> TokenSequence:
        return encode(tokenize(normalize(text)), self.table, self.config.max_length)

    def _pairs(self, tweets: Sequence[Tweet]) -> list[tuple[TokenSequence, int]]:
        pairs = []
        for tweet in tweets:
            if tweet.label is None:
                raise DataError(f"unlabeled tweet {tweet.id!r} in training data")
            pairs.append((self.encode_text(tweet.text), tweet.label.to_int()))
        return pairs

    def fit(self, train_tweets: Sequence[Tweet], dev_tweets: Sequence[Tweet] | None = None) -> list[dict]:
        train_pairs = self._pairs(train_tweets)
        dev_pairs = self._pairs(dev_tweets) if dev_tweets else None
        self.state, history = train(
            self.config, self.table, train_pairs, dev_pairs, initial_state=self.state
        )
        return history

    def predict_proba(self, tweets: Sequence[Tweet]) -> np.ndarray:
        probs = np.empty(len(tweets))
        for start in range(0, len(tweets), self.config.batch_size):
            chunk = tweets[start : start + self.config.batch_size]
            batch = [self.encode_text(t.text) for t in chunk]
            probs[start : start + len(chunk)] = forward(self.state, batch, train_mode=False)
        return probs

    def predict(self, tweets: Sequence[Tweet], model_name: str = "bigrucnn") -> PredictionSet:
        ids = [t.id for t in tweets]
        if len(set(ids)) != len(ids):
            raise DataError("duplicate tweet ids in prediction input")
        probs = self.predict_proba(tweets)
        pset = PredictionSet(model_name=model_name)
        for tweet, prob in zip(tweets, probs):
            pset.predictions[tweet.id] = Prediction(float(prob)).label
        return pset

    def save(self, path: str | Path) -> None:
        """Write a single self-describing checkpoint file (.npz)."""
        arrays: dict[str, np.ndarray] = {
            "format": np.array(CHECKPOINT_FORMAT),
            "config": np.array(json.dumps(asdict(self.config))),
            "vocab": np.array(self.table.tokens),
            "vocab_sha256": np.array(self.table.vocab_hash),
            "embedding": self.state.embedding,
            "adam_t": np.array(self.state.adam_t),
        }
        for name, param in parameters(self.state):
            if name == "embedding":
                continue
            arrays[f"param.{name}"] = param
        for name, m in self.state.adam_m.items():
            arrays[f"adam_m.{name}"] = m
            arrays[f"adam_v.{name}"] = self.state.adam_v[name]
        with Path(path).open("wb") as handle:
            np.savez_compressed(handle, **arrays)

    @classmethod
    def load(cls, path: str | Path) -> "Classifier":
        path = Path(path)
        if not path.exists():
            raise DataError(f"no such file: {path}")
        try:
            bundle = np.load(path, allow_pickle=False)
        except (OSError, ValueError) as exc:
            raise DataError(f"{path.name}: not a model checkpoint ({exc})") from None
        with bundle:
            if "format" not in bundle or str(bundle["format"]) != CHECKPOINT_FORMAT:
                raise DataError(f"{path.name}: missing or unsupported checkpoint format tag")
            config = ModelConfig(**json.loads(str(bundle["config"])))
            tokens = [str(t) for t in bundle["vocab"]]
            embedding = np.array(bundle["embedding"], dtype=np.float64)
            table = EmbeddingTable(tokens, embedding.copy())
            if table.vocab_hash != str(bundle["vocab_sha256"]):
                raise DataError(f"{path.name}: vocabulary hash mismatch (corrupt checkpoint)")

            def gru(prefix: str) -> GRUParams:
                return GRUParams(
                    **{name: np.array(bundle[f"param.{prefix}.{name}"]) for name in _GRU_FIELDS}
                )

            state = ModelState(
                config=config,
                embedding=embedding,
                conv_w=np.array(bundle["param.conv_w"]),
                conv_b=np.array(bundle["param.conv_b"]),
                fwd=gru("fwd"),
                bwd=gru("bwd"),
                head_w=np.array(bundle["param.head_w"]),
                head_b=np.array(bundle["param.head_b"]),
                adam_t=int(bundle["adam_t"]),
            )
            for key in bundle.files:
                if key.startswith("adam_m."):
                    name = key[len("adam_m.") :]
                    state.adam_m[name] = np.array(bundle[key])
                    state.adam_v[name] = np.array(bundle[f"adam_v.{name}"])
        return cls(config, table, state)
