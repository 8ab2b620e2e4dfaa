"""Model catalog and per-model training settings."""

from dataclasses import dataclass, field, fields

from .errors import BridgeError

# pretrained_id is the catalog name; the resolution table maps it to a hub
# repository. "bert_en_uncased" names no size, base is assumed.
PRETRAINED_IDS = {
    "bert": "bert_en_uncased",
    "roberta": "roberta-base",
    "xlnet": "xlnet-large-cased",
}

HUB_RESOLUTION = {
    "bert_en_uncased": "bert-base-uncased",
    "roberta-base": "roberta-base",
    "xlnet-large-cased": "xlnet-large-cased",
}

DEFAULT_EPOCHS = {"bert": 3, "roberta": 3, "xlnet": 15}


@dataclass(frozen=True)
class TransformerSpec:
    model_name: str
    pretrained_id: str = ""
    learning_rate: float = 1e-5
    dropout: float = 0.1
    epochs: int = field(default=-1)  # -1 means "catalog default for model_name"
    max_length: int = 512

    def __post_init__(self):
        if self.model_name not in PRETRAINED_IDS:
            raise BridgeError(
                f"unknown model {self.model_name!r}; choose one of "
                + ", ".join(sorted(PRETRAINED_IDS))
            )
        if not self.pretrained_id:
            object.__setattr__(self, "pretrained_id", PRETRAINED_IDS[self.model_name])
        if self.epochs == -1:
            object.__setattr__(self, "epochs", DEFAULT_EPOCHS[self.model_name])
        if self.learning_rate <= 0:
            raise BridgeError("learning_rate must be positive")
        if not 0.0 <= self.dropout < 1.0:
            raise BridgeError("dropout must be in [0, 1)")
        if self.epochs < 0:
            raise BridgeError("epochs must be >= 0")
        if self.max_length < 8:
            raise BridgeError("max_length must be >= 8")

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def spec_for(model_name: str, **overrides) -> TransformerSpec:
    """Catalog spec for one of bert/roberta/xlnet, with explicit overrides."""
    return TransformerSpec(model_name=model_name, **overrides)


def resolve_pretrained(spec: TransformerSpec, local_path: str | None = None) -> str:
    """Where to load the pretrained weights from: a local directory wins."""
    if local_path:
        return local_path
    return HUB_RESOLUTION[spec.pretrained_id]
