"""Fine-tune pretrained transformers for the informative-tweet task and
export predictions in the infotweet interchange format."""

__version__ = "0.1.0"

from .data import LABELS, Example, f1_score, normalize_texts, read_tsv, write_predictions
from .errors import BridgeError
from .export import export_predictions
from .finetune import MANIFEST_NAME, finetune
from .specs import (
    DEFAULT_EPOCHS,
    HUB_RESOLUTION,
    PRETRAINED_IDS,
    TransformerSpec,
    resolve_pretrained,
    spec_for,
)

__all__ = [
    "BridgeError",
    "DEFAULT_EPOCHS",
    "Example",
    "HUB_RESOLUTION",
    "LABELS",
    "MANIFEST_NAME",
    "PRETRAINED_IDS",
    "TransformerSpec",
    "export_predictions",
    "f1_score",
    "finetune",
    "normalize_texts",
    "read_tsv",
    "resolve_pretrained",
    "spec_for",
    "write_predictions",
]
