"""Majority-vote ensembling over per-model prediction files.

Prediction files are UTF-8 TSV, one ``id<TAB>LABEL`` line per tweet; the
file name stem is the model name.  Voting is on hard labels.  Even splits
are resolved by the configured tie-break rule; by default the first member
in the configured order wins ties.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .corpus import Label
from .errors import DataError

TIE_BREAK_PRIORITY = "priority"
TIE_BREAK_INFORMATIVE = "informative"

# Descending published dev F1 of the four member models.
DEFAULT_MEMBER_ORDER = ["xlnet", "roberta", "bert", "bigrucnn"]


@dataclass
class PredictionSet:
    """All predictions of one named model, keyed by tweet id.

    ``predictions`` preserves insertion order; that order is used when the
    set is written back to disk.
    """

    model_name: str
    predictions: dict[str, Label] = field(default_factory=dict)

    def ids(self) -> set[str]:
        return set(self.predictions)


@dataclass
class VoteConfig:
    members: list[str]
    tie_break: str = TIE_BREAK_PRIORITY

    def __post_init__(self):
        if len(self.members) < 2:
            raise DataError("vote needs at least 2 members")
        if len(set(self.members)) != len(self.members):
            raise DataError(f"duplicate member names in vote order: {self.members}")
        if self.tie_break not in (TIE_BREAK_PRIORITY, TIE_BREAK_INFORMATIVE):
            raise DataError(f"unknown tie_break rule {self.tie_break!r}")


@dataclass
class VoteStats:
    tie_ids: list[str] = field(default_factory=list)

    @property
    def n_ties(self) -> int:
        return len(self.tie_ids)


def _check_universe(sets: Sequence[PredictionSet]) -> None:
    if len(sets) < 2:
        raise DataError(f"vote needs at least 2 prediction sets, got {len(sets)}")
    universe = sets[0].ids()
    for pset in sets[1:]:
        diff = universe ^ pset.ids()
        if diff:
            raise DataError(
                f"id universe mismatch between {sets[0].model_name!r} and "
                f"{pset.model_name!r} ({len(diff)} ids): {sorted(diff)}"
            )


def _resolve_config(sets: Sequence[PredictionSet], config: VoteConfig | None) -> VoteConfig:
    names = [pset.model_name for pset in sets]
    if len(set(names)) != len(names):
        raise DataError(f"duplicate model names among prediction sets: {names}")
    if config is None:
        return VoteConfig(members=names)
    if sorted(config.members) != sorted(names):
        raise DataError(
            f"vote order {config.members} does not cover the given sets {sorted(names)}"
        )
    return config


def vote_detailed(
    sets: Sequence[PredictionSet], config: VoteConfig | None = None
) -> tuple[PredictionSet, VoteStats]:
    """Majority vote; also reports which ids required the tie-break."""
    _check_universe(sets)
    config = _resolve_config(sets, config)
    by_name = {pset.model_name: pset for pset in sets}
    ordered = [by_name[name] for name in config.members]
    stats = VoteStats()
    result = PredictionSet(model_name="ensemble")
    for tweet_id in sets[0].predictions:
        votes = [pset.predictions[tweet_id] for pset in ordered]
        informative = sum(1 for v in votes if v is Label.INFORMATIVE)
        uninformative = len(votes) - informative
        if informative > uninformative:
            chosen = Label.INFORMATIVE
        elif informative < uninformative:
            chosen = Label.UNINFORMATIVE
        else:
            stats.tie_ids.append(tweet_id)
            if config.tie_break == TIE_BREAK_INFORMATIVE:
                chosen = Label.INFORMATIVE
            else:
                chosen = votes[0]
        result.predictions[tweet_id] = chosen
    return result, stats


def vote(sets: Sequence[PredictionSet], config: VoteConfig | None = None) -> PredictionSet:
    """Combine prediction sets by majority vote into one set."""
    result, _ = vote_detailed(sets, config)
    return result


@dataclass
class AgreementReport:
    """Pairwise agreement rates plus the all-members unanimity rate."""

    pairwise: dict[tuple[str, str], float]
    unanimity: float

    def machine_lines(self) -> list[str]:
        lines = [
            f"agreement.{a}.{b}={rate!r}" for (a, b), rate in self.pairwise.items()
        ]
        lines.append(f"unanimity={self.unanimity!r}")
        return lines


def agreement_report(sets: Sequence[PredictionSet]) -> AgreementReport:
    """Fraction of ids on which each model pair, and all models, agree."""
    _check_universe(sets)
    ids = list(sets[0].predictions)
    pairwise: dict[tuple[str, str], float] = {}
    for i, left in enumerate(sets):
        for right in sets[i + 1 :]:
            same = sum(
                1
                for tweet_id in ids
                if left.predictions[tweet_id] is right.predictions[tweet_id]
            )
            pairwise[(left.model_name, right.model_name)] = same / len(ids) if ids else 1.0
    unanimous = sum(
        1
        for tweet_id in ids
        if len({pset.predictions[tweet_id] for pset in sets}) == 1
    )
    unanimity = unanimous / len(ids) if ids else 1.0
    return AgreementReport(pairwise=pairwise, unanimity=unanimity)


def read_predictions(path: str | Path, model_name: str | None = None) -> PredictionSet:
    """Load one ``id<TAB>LABEL`` prediction file; stem names the model."""
    path = Path(path)
    if not path.exists():
        raise DataError(f"no such file: {path}")
    pset = PredictionSet(model_name=model_name or path.stem)
    with path.open(encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) != 2:
                raise DataError(
                    f"{path.name}:{lineno}: expected 2 tab-separated fields, got {len(fields)}"
                )
            tweet_id, raw_label = fields
            if tweet_id in pset.predictions:
                raise DataError(f"{path.name}:{lineno}: duplicate id {tweet_id!r}")
            try:
                label = Label.parse(raw_label)
            except DataError as exc:
                raise DataError(f"{path.name}:{lineno}: {exc}") from None
            pset.predictions[tweet_id] = label
    return pset


def write_predictions(path: str | Path, pset: PredictionSet) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as handle:
        for tweet_id, label in pset.predictions.items():
            handle.write(f"{tweet_id}\t{label.value}\n")
