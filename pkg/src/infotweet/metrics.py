"""Classification metrics, comparison tables, and error listings.

INFORMATIVE is the positive class for every precision/recall/F1 value.
Zero-denominator conventions: precision is 0 when tp+fp = 0, recall is 0
when tp+fn = 0, and F1 is 0 when precision + recall = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Sequence

from .constants import PUBLISHED_TEST_ROWS
from .corpus import Label, Tweet
from .ensemble import PredictionSet
from .errors import DataError


@dataclass(frozen=True)
class ConfusionMatrix:
    """Binary confusion counts with INFORMATIVE as the positive class."""

    tp: int
    fp: int
    fn: int
    tn: int

    @classmethod
    def from_pairs(cls, predicted: Iterable[int], gold: Iterable[int]) -> "ConfusionMatrix":
        """Tally 0/1 prediction/gold pairs into counts."""
        tp = fp = fn = tn = 0
        for p, g in zip(predicted, gold, strict=True):
            if p == 1 and g == 1:
                tp += 1
            elif p == 1 and g == 0:
                fp += 1
            elif p == 0 and g == 1:
                fn += 1
            else:
                tn += 1
        return cls(tp=tp, fp=fp, fn=fn, tn=tn)

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn

    @property
    def accuracy(self) -> float:
        return (self.tp + self.tn) / self.total if self.total else 0.0

    @property
    def precision(self) -> float:
        denom = self.tp + self.fp
        return self.tp / denom if denom else 0.0

    @property
    def recall(self) -> float:
        denom = self.tp + self.fn
        return self.tp / denom if denom else 0.0

    @property
    def f1(self) -> float:
        p, r = self.precision, self.recall
        return 2 * p * r / (p + r) if p + r else 0.0

    def as_csv(self) -> str:
        """Ready-to-plot CSV: one row per gold/predicted cell."""
        return (
            "gold,predicted,count\n"
            f"INFORMATIVE,INFORMATIVE,{self.tp}\n"
            f"INFORMATIVE,UNINFORMATIVE,{self.fn}\n"
            f"UNINFORMATIVE,INFORMATIVE,{self.fp}\n"
            f"UNINFORMATIVE,UNINFORMATIVE,{self.tn}\n"
        )


@dataclass(frozen=True)
class MetricsReport:
    model_name: str
    matrix: ConfusionMatrix
    accuracy: float
    precision: float
    recall: float
    f1: float

    @classmethod
    def from_matrix(cls, model_name: str, matrix: ConfusionMatrix) -> "MetricsReport":
        return cls(
            model_name=model_name,
            matrix=matrix,
            accuracy=matrix.accuracy,
            precision=matrix.precision,
            recall=matrix.recall,
            f1=matrix.f1,
        )

    def machine_lines(self) -> list[str]:
        m = self.matrix
        return [
            f"model={self.model_name}",
            f"accuracy={self.accuracy!r}",
            f"precision={self.precision!r}",
            f"recall={self.recall!r}",
            f"f1={self.f1!r}",
            f"confusion.tp={m.tp}",
            f"confusion.fp={m.fp}",
            f"confusion.fn={m.fn}",
            f"confusion.tn={m.tn}",
        ]


def evaluate(pred: PredictionSet, gold: Sequence[Tweet]) -> MetricsReport:
    """Score one prediction set against labeled gold tweets.

    The id universes must match exactly; a mismatch raises DataError
    listing the differing ids.
    """
    gold_ids = [t.id for t in gold]
    if len(set(gold_ids)) != len(gold_ids):
        raise DataError("duplicate ids in gold data")
    diff = set(gold_ids) ^ set(pred.predictions)
    if diff:
        raise DataError(
            f"prediction/gold id mismatch ({len(diff)} ids): {sorted(diff)}"
        )
    pairs_pred = []
    pairs_gold = []
    for tweet in gold:
        if tweet.label is None:
            raise DataError(f"unlabeled gold record {tweet.id!r}")
        pairs_pred.append(pred.predictions[tweet.id].to_int())
        pairs_gold.append(tweet.label.to_int())
    matrix = ConfusionMatrix.from_pairs(pairs_pred, pairs_gold)
    return MetricsReport.from_matrix(pred.model_name, matrix)


def format_pct(value: float) -> str:
    """Percentage with 2 decimals, rounding halves away from zero."""
    pct = Decimal(repr(value)) * Decimal(100)
    return str(pct.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def _format_pct_points(value: float) -> str:
    # Already on the percent scale (published rows are stored that way).
    return str(Decimal(repr(value)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class TableRow:
    name: str
    accuracy: str
    precision: str
    recall: str
    f1: str


def comparison_table(
    reports: Sequence[MetricsReport], include_published: bool = False
) -> str:
    """Render a model-comparison table, rows sorted by F1 descending.

    Ties order by model name.  With ``include_published`` the bundled
    shared-task reference rows are merged in.
    """
    if not reports and not include_published:
        raise ValueError("comparison_table needs at least one report")
    rows = [
        TableRow(
            name=r.model_name,
            accuracy=format_pct(r.accuracy),
            precision=format_pct(r.precision),
            recall=format_pct(r.recall),
            f1=format_pct(r.f1),
        )
        for r in reports
    ]
    if include_published:
        rows.extend(
            TableRow(
                name=name,
                accuracy=_format_pct_points(acc),
                precision=_format_pct_points(prec),
                recall=_format_pct_points(rec),
                f1=_format_pct_points(f1),
            )
            for name, acc, prec, rec, f1 in PUBLISHED_TEST_ROWS
        )
    rows.sort(key=lambda row: (-float(row.f1), row.name))
    name_w = max(len("Model"), *(len(r.name) for r in rows))
    header = (
        f"{'Model':<{name_w}}  {'Accuracy':>9}  {'Precision':>9}  "
        f"{'Recall':>9}  {'F1':>9}"
    )
    lines = [header, "-" * len(header)]
    for row in rows:
        lines.append(
            f"{row.name:<{name_w}}  {row.accuracy:>9}  {row.precision:>9}  "
            f"{row.recall:>9}  {row.f1:>9}"
        )
    return "\n".join(lines)


@dataclass(frozen=True)
class MisclassifiedExample:
    tweet: Tweet
    predicted: Label
    true: Label


def misclassification_report(
    pred: PredictionSet, gold: Sequence[Tweet], limit: int
) -> list[MisclassifiedExample]:
    """Up to ``limit`` wrongly predicted tweets per error direction.

    Directions are INFORMATIVE->UNINFORMATIVE and the reverse; order within
    a direction follows the gold sequence.
    """
    fn_rows: list[MisclassifiedExample] = []
    fp_rows: list[MisclassifiedExample] = []
    for tweet in gold:
        if tweet.label is None:
            raise DataError(f"unlabeled gold record {tweet.id!r}")
        if tweet.id not in pred.predictions:
            raise DataError(f"no prediction for id {tweet.id!r}")
        predicted = pred.predictions[tweet.id]
        if predicted is tweet.label:
            continue
        row = MisclassifiedExample(tweet=tweet, predicted=predicted, true=tweet.label)
        if tweet.label is Label.INFORMATIVE:
            fn_rows.append(row)
        else:
            fp_rows.append(row)
    return fn_rows[:limit] + fp_rows[:limit]


def render_misclassifications(rows: Sequence[MisclassifiedExample]) -> str:
    """PL/TL listing of misclassified tweets."""
    if not rows:
        return "no misclassified examples"
    short = {Label.INFORMATIVE: "IN", Label.UNINFORMATIVE: "UN"}
    lines = []
    for row in rows:
        lines.append(f"PL={short[row.predicted]} TL={short[row.true]} id={row.tweet.id}")
        lines.append(f"  {row.tweet.text}")
    return "\n".join(lines)
