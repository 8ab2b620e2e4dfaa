"""Inference: saved checkpoint + input TSV -> prediction file."""

import json
from pathlib import Path

import torch

from .data import LABELS, normalize_texts, read_tsv, write_predictions
from .errors import BridgeError
from .finetune import MANIFEST_NAME

_DEFAULT_MAX_LENGTH = 512


def _checkpoint_max_length(checkpoint: Path, config) -> int:
    manifest = checkpoint / MANIFEST_NAME
    if manifest.is_file():
        recorded = json.loads(manifest.read_text(encoding="utf-8")).get("max_length")
        if isinstance(recorded, int) and recorded > 0:
            return recorded
    limit = getattr(config, "max_position_embeddings", None)
    if limit is not None and 0 < limit < _DEFAULT_MAX_LENGTH:
        return limit
    return _DEFAULT_MAX_LENGTH


def _class_labels(config) -> list[str]:
    # prefer the trained label mapping; raw hub checkpoints fall back to
    # the positional convention (index 1 = INFORMATIVE)
    id2label = getattr(config, "id2label", None) or {}
    mapped = [id2label.get(i) for i in range(2)]
    if sorted(filter(None, mapped)) == sorted(LABELS):
        return mapped
    return list(LABELS)


def export_predictions(
    checkpoint: str | Path,
    in_tsv: str | Path,
    out_path: str | Path,
    *,
    batch_size: int = 32,
) -> Path:
    """Predict every row of in_tsv and write 'id<TAB>LABEL' in input order.

    Deterministic: the model runs in eval mode, so exporting twice from one
    checkpoint yields byte-identical files.
    """
    from transformers import AutoConfig, AutoModelForSequenceClassification, AutoTokenizer

    checkpoint = Path(checkpoint)
    if not checkpoint.is_dir():
        raise BridgeError(f"no such checkpoint directory: {checkpoint}")
    if batch_size < 1:
        raise BridgeError("batch_size must be >= 1")
    examples = read_tsv(in_tsv)
    if not examples:
        return write_predictions(out_path, [], [])

    try:
        config = AutoConfig.from_pretrained(checkpoint)
        tokenizer = AutoTokenizer.from_pretrained(checkpoint)
        model = AutoModelForSequenceClassification.from_pretrained(checkpoint)
    except (OSError, ValueError) as exc:
        raise BridgeError(f"cannot load checkpoint from {checkpoint} ({exc})") from exc
    if getattr(config, "num_labels", 2) != 2:
        raise BridgeError("checkpoint is not a binary classifier")

    names = _class_labels(config)
    max_length = _checkpoint_max_length(checkpoint, config)
    texts = normalize_texts([e.text for e in examples])

    model.eval()
    labels = []
    with torch.no_grad():
        for start in range(0, len(texts), batch_size):
            batch = tokenizer(
                texts[start : start + batch_size],
                padding=True,
                truncation=True,
                max_length=max_length,
                return_tensors="pt",
            )
            logits = model(**batch).logits
            for cls in logits.argmax(dim=-1).tolist():
                labels.append(names[cls])
    return write_predictions(out_path, [e.id for e in examples], labels)
