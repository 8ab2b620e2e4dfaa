"""Tweet dataset loading, validation, and split statistics.

The on-disk format is UTF-8 TSV with no header, one record per line:

    id<TAB>text              (unlabeled)
    id<TAB>text<TAB>LABEL    (labeled)

LABEL is the literal string INFORMATIVE or UNINFORMATIVE.  Tabs inside the
tweet text are not supported; lines with more than three fields are
rejected rather than re-joined by guesswork.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DataError


class Label(enum.Enum):
    INFORMATIVE = "INFORMATIVE"
    UNINFORMATIVE = "UNINFORMATIVE"

    @classmethod
    def parse(cls, raw: str) -> "Label":
        try:
            return cls(raw)
        except ValueError:
            raise DataError(f"unknown label string {raw!r}") from None

    @classmethod
    def from_int(cls, value: int) -> "Label":
        return cls.INFORMATIVE if value == 1 else cls.UNINFORMATIVE

    def to_int(self) -> int:
        # INFORMATIVE is the positive class everywhere in this package.
        return 1 if self is Label.INFORMATIVE else 0


@dataclass(frozen=True)
class Tweet:
    """One tweet record. ``label`` is None for unlabeled inputs."""

    id: str
    text: str
    label: Label | None = None


# Inter-annotator agreement of the official dataset; annotator-level data is
# not distributed, so this is a stored constant, never recomputed.
FLEISS_KAPPA = 0.8180


@dataclass
class DatasetStats:
    """Per-split label counts for a collection of labeled splits."""

    counts: dict[str, dict[Label, int]]
    fleiss_kappa: float = FLEISS_KAPPA

    def split_total(self, split: str) -> int:
        return sum(self.counts[split].values())

    @property
    def total(self) -> int:
        return sum(self.split_total(s) for s in self.counts)

    def machine_lines(self) -> list[str]:
        """Key/value lines of the form ``split.LABEL=count``."""
        lines = []
        for split, by_label in self.counts.items():
            for label in Label:
                lines.append(f"{split}.{label.value}={by_label[label]}")
            lines.append(f"{split}.total={self.split_total(split)}")
        lines.append(f"total={self.total}")
        lines.append(f"fleiss_kappa={self.fleiss_kappa}")
        return lines

    def render(self) -> str:
        """Human-readable table of the per-split counts."""
        name_w = max(len("Split"), *(len(s) for s in self.counts)) if self.counts else 5
        header = f"{'Split':<{name_w}}  {'INFORMATIVE':>12}  {'UNINFORMATIVE':>13}  {'Total':>6}"
        rows = [header, "-" * len(header)]
        for split, by_label in self.counts.items():
            rows.append(
                f"{split:<{name_w}}  {by_label[Label.INFORMATIVE]:>12}  "
                f"{by_label[Label.UNINFORMATIVE]:>13}  {self.split_total(split):>6}"
            )
        rows.append("-" * len(header))
        inf = sum(c[Label.INFORMATIVE] for c in self.counts.values())
        uninf = sum(c[Label.UNINFORMATIVE] for c in self.counts.values())
        rows.append(f"{'total':<{name_w}}  {inf:>12}  {uninf:>13}  {self.total:>6}")
        return "\n".join(rows)


def load_split(path: str | Path, expect_labels: bool) -> list[Tweet]:
    """Load one TSV split, in file order.

    With ``expect_labels`` every line must carry a third LABEL field; without
    it a label is parsed when present and left None otherwise.  Malformed
    lines, duplicate ids, unknown labels, and empty texts all raise
    DataError naming the offending line.
    """
    path = Path(path)
    if not path.exists():
        raise DataError(f"no such file: {path}")
    tweets: list[Tweet] = []
    seen: set[str] = set()
    with path.open(encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) > 3:
                raise DataError(
                    f"{path.name}:{lineno}: expected 2 or 3 tab-separated fields, "
                    f"got {len(fields)} (tabs inside tweet text are not supported)"
                )
            if len(fields) < 2 or (expect_labels and len(fields) != 3):
                want = "3" if expect_labels else "2 or 3"
                raise DataError(
                    f"{path.name}:{lineno}: expected {want} tab-separated fields, got {len(fields)}"
                )
            tweet_id, text = fields[0], fields[1]
            if not tweet_id:
                raise DataError(f"{path.name}:{lineno}: empty id")
            if tweet_id in seen:
                raise DataError(f"{path.name}:{lineno}: duplicate id {tweet_id!r}")
            if not text:
                raise DataError(f"{path.name}:{lineno}: empty text for id {tweet_id!r}")
            label = None
            if len(fields) == 3:
                try:
                    label = Label.parse(fields[2])
                except DataError as exc:
                    raise DataError(f"{path.name}:{lineno}: {exc}") from None
            seen.add(tweet_id)
            tweets.append(Tweet(id=tweet_id, text=text, label=label))
    return tweets


def save_split(path: str | Path, tweets: list[Tweet]) -> None:
    """Write tweets back out in the TSV format `load_split` reads."""
    with Path(path).open("w", encoding="utf-8", newline="") as handle:
        for tweet in tweets:
            if tweet.label is None:
                handle.write(f"{tweet.id}\t{tweet.text}\n")
            else:
                handle.write(f"{tweet.id}\t{tweet.text}\t{tweet.label.value}\n")


def summarize(splits: dict[str, list[Tweet]]) -> DatasetStats:
    """Count labels per split. Every record must be labeled."""
    counts: dict[str, dict[Label, int]] = {}
    for split, tweets in splits.items():
        by_label = {Label.INFORMATIVE: 0, Label.UNINFORMATIVE: 0}
        for tweet in tweets:
            if tweet.label is None:
                raise DataError(f"unlabeled record {tweet.id!r} in split {split!r}")
            by_label[tweet.label] += 1
        counts[split] = by_label
    return DatasetStats(counts=counts)
