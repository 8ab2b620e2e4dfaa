"""Fine-tuning loop: pretrained checkpoint + labeled TSVs -> saved checkpoint."""

import hashlib
import json
from pathlib import Path

import torch

from .data import LABELS, Example, f1_score, normalize_texts, read_tsv
from .errors import BridgeError
from .specs import TransformerSpec, resolve_pretrained

MANIFEST_NAME = "manifest.json"

# main dropout knob per architecture family; attention dropout keeps its
# pretrained default
_DROPOUT_ATTRS = ("hidden_dropout_prob", "dropout")


def _load_pretrained(source: str, spec: TransformerSpec):
    from transformers import AutoConfig, AutoModelForSequenceClassification, AutoTokenizer

    try:
        config = AutoConfig.from_pretrained(source, num_labels=2)
        for attr in _DROPOUT_ATTRS:
            if hasattr(config, attr):
                setattr(config, attr, spec.dropout)
        config.id2label = {0: LABELS[0], 1: LABELS[1]}
        config.label2id = {LABELS[0]: 0, LABELS[1]: 1}
        tokenizer = AutoTokenizer.from_pretrained(source)
        model = AutoModelForSequenceClassification.from_pretrained(source, config=config)
    except (OSError, ValueError) as exc:
        raise BridgeError(
            f"cannot load pretrained model from {source!r} ({exc}); "
            "check the name, or pass a local checkout via pretrained_path "
            "when the hub is unreachable"
        ) from exc
    return config, tokenizer, model


def _effective_max_length(spec: TransformerSpec, config) -> int:
    limit = getattr(config, "max_position_embeddings", None)
    if limit is not None and 0 < limit < spec.max_length:
        return limit
    return spec.max_length


def _encode(tokenizer, examples: list[Example], max_length: int):
    texts = normalize_texts([e.text for e in examples])
    # normalization can empty a text (pure mention/URL lines); the subword
    # tokenizer still yields the special tokens, so nothing breaks
    return tokenizer(
        texts,
        padding=True,
        truncation=True,
        max_length=max_length,
        return_tensors="pt",
    )


def _targets(examples: list[Example], path_name: str) -> torch.Tensor:
    idx = []
    for e in examples:
        if e.label is None:
            raise BridgeError(f"unlabeled example {e.id!r} in {path_name}")
        idx.append(LABELS.index(e.label))
    return torch.tensor(idx, dtype=torch.long)


def _predict_labels(model, encodings, batch_size: int = 32) -> list[str]:
    model.eval()
    labels = []
    n = encodings["input_ids"].shape[0]
    with torch.no_grad():
        for start in range(0, n, batch_size):
            batch = {k: v[start : start + batch_size] for k, v in encodings.items()}
            logits = model(**batch).logits
            for cls in logits.argmax(dim=-1).tolist():
                labels.append(LABELS[cls])
    return labels


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def finetune(
    spec: TransformerSpec,
    train_tsv: str | Path,
    dev_tsv: str | Path,
    output_dir: str | Path,
    *,
    pretrained_path: str | None = None,
    batch_size: int = 8,
    grad_accum: int = 1,
    seed: int = 42,
    log=print,
) -> Path:
    """Fine-tune per the given TransformerSpec and save a checkpoint directory.

    The directory holds the model, the tokenizer, and a manifest recording
    the TransformerSpec fields plus sha256 hashes of the input files.  With
    spec.epochs == 0 the saved weights equal the pretrained initialization.
    """
    if batch_size < 1 or grad_accum < 1:
        raise BridgeError("batch_size and grad_accum must be >= 1")
    train_tsv, dev_tsv = Path(train_tsv), Path(dev_tsv)
    train_examples = read_tsv(train_tsv)
    dev_examples = read_tsv(dev_tsv)
    if not train_examples:
        raise BridgeError(f"empty training file: {train_tsv}")

    torch.manual_seed(seed)
    source = resolve_pretrained(spec, pretrained_path)
    config, tokenizer, model = _load_pretrained(source, spec)
    max_length = _effective_max_length(spec, config)

    train_enc = _encode(tokenizer, train_examples, max_length)
    train_y = _targets(train_examples, train_tsv.name)
    dev_enc = _encode(tokenizer, dev_examples, max_length)
    dev_gold = [e.label for e in dev_examples]
    if None in dev_gold:
        raise BridgeError(f"unlabeled example in {dev_tsv.name}")

    optimizer = torch.optim.AdamW(model.parameters(), lr=spec.learning_rate)
    shuffler = torch.Generator().manual_seed(seed)
    n = len(train_examples)

    try:
        for epoch in range(1, spec.epochs + 1):
            model.train()
            order = torch.randperm(n, generator=shuffler)
            optimizer.zero_grad()
            total_loss = 0.0
            starts = list(range(0, n, batch_size))
            for step, start in enumerate(starts):
                rows = order[start : start + batch_size]
                batch = {k: v[rows] for k, v in train_enc.items()}
                out = model(**batch, labels=train_y[rows])
                (out.loss / grad_accum).backward()
                total_loss += out.loss.item() * len(rows)
                if (step + 1) % grad_accum == 0 or step == len(starts) - 1:
                    optimizer.step()
                    optimizer.zero_grad()
            dev_pred = _predict_labels(model, dev_enc, batch_size=batch_size)
            log(
                f"epoch={epoch} train_loss={total_loss / n:.6f} "
                f"dev_f1={f1_score(dev_pred, dev_gold):.6f}"
            )
    except RuntimeError as exc:
        # covers torch's OutOfMemoryError subclass on every supported version
        if "out of memory" in str(exc).lower():
            raise BridgeError(
                f"out of memory during fine-tuning ({exc}); lower batch_size "
                "and raise grad_accum to keep the effective batch"
            ) from exc
        raise

    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    model.save_pretrained(output_dir)
    tokenizer.save_pretrained(output_dir)
    manifest = {
        "spec": spec.as_dict(),
        "pretrained_source": source,
        "batch_size": batch_size,
        "grad_accum": grad_accum,
        "seed": seed,
        "max_length": max_length,
        "train_file": train_tsv.name,
        "train_sha256": _sha256(train_tsv),
        "dev_file": dev_tsv.name,
        "dev_sha256": _sha256(dev_tsv),
    }
    (output_dir / MANIFEST_NAME).write_text(
        json.dumps(manifest, indent=2) + "\n", encoding="utf-8"
    )
    return output_dir
