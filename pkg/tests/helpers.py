"""Independent oracles and toy-model builders shared across test modules.

The oracles here deliberately avoid the package's own computation paths:
voting is re-derived with collections.Counter, metrics from direct label
comparisons, and gradients from central finite differences.
"""

from collections import Counter

import numpy as np

from infotweet.bigrucnn import ModelConfig, evaluate_loss, init_state
from infotweet.embeddings import PAD_TOKEN, UNK_TOKEN, EmbeddingTable
from infotweet.preprocess import TokenSequence


def toy_setup(seed: int = 123, trainable: bool = True):
    """Small random model plus a 3-sequence batch for derivative checks.

    Dimensions: embedding 6, length 8, conv filters 5, hidden 4.  The batch
    mixes a full-length sequence, a short one, and an all-PAD one.
    """
    rng = np.random.default_rng(seed)
    tokens = [PAD_TOKEN, UNK_TOKEN] + [f"w{i}" for i in range(7)]
    vecs = rng.normal(size=(9, 6)) * 0.5
    vecs[0] = 0.0
    table = EmbeddingTable(tokens, vecs)
    config = ModelConfig(
        max_length=8,
        conv_filters=5,
        conv_kernel=3,
        gru_hidden=4,
        dropout=0.0,
        learning_rate=1e-3,
        epochs=1,
        batch_size=3,
        seed=3,
        trainable_embeddings=trainable,
    )
    state = init_state(config, table, np.random.default_rng(config.seed))

    def seq(idx):
        ids = tuple(idx) + (0,) * (8 - len(idx))
        return TokenSequence(indices=ids, original_length=len(idx), max_length=8)

    batch = [seq([2, 3, 4, 5, 6, 7]), seq([8, 2, 3]), seq([])]
    targets = np.array([1.0, 0.0, 1.0])
    return table, config, state, batch, targets


def numeric_gradient(state, batch, targets, array, h: float = 1e-5) -> np.ndarray:
    """Central finite differences of the batch loss wrt one tensor.

    Perturbs ``array`` in place element by element and restores it.
    """
    num = np.zeros_like(array)
    it = np.nditer(array, flags=["multi_index"])
    while not it.finished:
        i = it.multi_index
        orig = array[i]
        array[i] = orig + h
        up = evaluate_loss(state, batch, targets)
        array[i] = orig - h
        down = evaluate_loss(state, batch, targets)
        array[i] = orig
        num[i] = (up - down) / (2.0 * h)
        it.iternext()
    return num


def rel_err(a: np.ndarray, b: np.ndarray) -> float:
    denom = max(np.abs(a).max(), np.abs(b).max(), 1e-8)
    return float(np.abs(a - b).max() / denom)


def vote_oracle(pattern: list[str], tie_break: str) -> tuple[str, bool]:
    """Counting-based reference vote for one id.

    ``pattern`` holds INFORMATIVE/UNINFORMATIVE strings in member-priority
    order.  Returns (winner, was_tie).
    """
    counts = Counter(pattern)
    inf = counts["INFORMATIVE"]
    uninf = counts["UNINFORMATIVE"]
    if inf != uninf:
        return ("INFORMATIVE" if inf > uninf else "UNINFORMATIVE"), False
    if tie_break == "informative":
        return "INFORMATIVE", True
    return pattern[0], True


def metrics_oracle(pred_labels: list[str], gold_labels: list[str]):
    """Accuracy/precision/recall/F1 straight from parallel label lists."""
    assert len(pred_labels) == len(gold_labels) and pred_labels
    n = len(gold_labels)
    correct = sum(1 for p, g in zip(pred_labels, gold_labels) if p == g)
    tp = sum(
        1
        for p, g in zip(pred_labels, gold_labels)
        if p == "INFORMATIVE" and g == "INFORMATIVE"
    )
    pred_pos = sum(1 for p in pred_labels if p == "INFORMATIVE")
    gold_pos = sum(1 for g in gold_labels if g == "INFORMATIVE")
    accuracy = correct / n
    precision = tp / pred_pos if pred_pos else 0.0
    recall = tp / gold_pos if gold_pos else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return accuracy, precision, recall, f1
