"""TSV interchange I/O and text normalization.

The TSV formats and the normalization rules belong to the infotweet
package; this module talks to it only through files and its CLI so the
two packages stay decoupled at the code level.
"""

import subprocess
import sys
from dataclasses import dataclass
from pathlib import Path

from .errors import BridgeError

LABELS = ("UNINFORMATIVE", "INFORMATIVE")  # index == class id
POSITIVE = "INFORMATIVE"


@dataclass(frozen=True)
class Example:
    id: str
    text: str
    label: str | None = None


def read_tsv(path: str | Path) -> list[Example]:
    """Read 'id<TAB>text[<TAB>LABEL]' lines; blank lines are skipped."""
    path = Path(path)
    if not path.is_file():
        raise BridgeError(f"no such file: {path}")
    examples = []
    seen = set()
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if not raw.strip():
            continue
        parts = raw.split("\t")
        if len(parts) not in (2, 3):
            raise BridgeError(
                f"{path.name}:{lineno}: expected 2 or 3 tab-separated fields, got {len(parts)}"
            )
        tid, text = parts[0], parts[1]
        label = parts[2] if len(parts) == 3 else None
        if not tid:
            raise BridgeError(f"{path.name}:{lineno}: empty id")
        if tid in seen:
            raise BridgeError(f"{path.name}:{lineno}: duplicate id {tid!r}")
        seen.add(tid)
        if not text:
            raise BridgeError(f"{path.name}:{lineno}: empty text")
        if label is not None and label not in LABELS:
            raise BridgeError(f"{path.name}:{lineno}: unknown label {label!r}")
        examples.append(Example(tid, text, label))
    return examples


def normalize_texts(texts: list[str]) -> list[str]:
    """Normalize through the infotweet CLI (one subprocess per call).

    Lowercasing and mention/URL removal are the primary package's rules;
    shelling out keeps them in one place.
    """
    if not texts:
        return []
    for t in texts:
        if "\n" in t or "\r" in t:
            raise BridgeError("texts must be single-line")
    proc = subprocess.run(
        [sys.executable, "-m", "infotweet", "normalize", "--input", "-", "--output", "-"],
        input="\n".join(texts) + "\n",
        capture_output=True,
        text=True,
    )
    if proc.returncode != 0:
        raise BridgeError(
            "infotweet normalize failed "
            f"(exit {proc.returncode}: {proc.stderr.strip() or 'no output'}); "
            "install the infotweet package so its CLI is importable"
        )
    lines = proc.stdout.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) != len(texts):
        raise BridgeError(
            f"normalization changed the line count ({len(texts)} in, {len(lines)} out)"
        )
    return lines


def write_predictions(path: str | Path, ids: list[str], labels: list[str]) -> Path:
    """Write 'id<TAB>LABEL' lines in the given order."""
    if len(ids) != len(labels):
        raise BridgeError("ids and labels differ in length")
    for label in labels:
        if label not in LABELS:
            raise BridgeError(f"unknown label {label!r}")
    path = Path(path)
    body = "".join(f"{i}\t{l}\n" for i, l in zip(ids, labels))
    path.write_text(body, encoding="utf-8")
    return path


def f1_score(pred_labels: list[str], gold_labels: list[str]) -> float:
    """F1 for the positive (INFORMATIVE) class; 0 when undefined."""
    if len(pred_labels) != len(gold_labels):
        raise BridgeError("prediction/gold length mismatch")
    tp = sum(1 for p, g in zip(pred_labels, gold_labels) if p == POSITIVE and g == POSITIVE)
    fp = sum(1 for p, g in zip(pred_labels, gold_labels) if p == POSITIVE and g != POSITIVE)
    fn = sum(1 for p, g in zip(pred_labels, gold_labels) if p != POSITIVE and g == POSITIVE)
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)
