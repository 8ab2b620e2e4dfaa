"""Command-line interface.

Subcommands: stats, normalize, train, predict, vote, eval, report.

Exit codes: 0 success, 2 usage error (argparse), 3 data error, 4 numeric
error.  Errors print a single ``error: data: ...`` or ``error: numeric:
...`` line on stderr; ``--verbose`` adds the traceback.  Relative file
paths resolve against the INFOTWEET_DATA_ROOT environment variable when it
is set, else against the working directory.
"""

from __future__ import annotations

import argparse
import configparser
import os
import sys
import traceback
from pathlib import Path

from .bigrucnn import Classifier, ModelConfig
from .corpus import load_split, summarize
from .embeddings import load_vectors, oov_rate, restrict_to_corpus
from .ensemble import (
    TIE_BREAK_INFORMATIVE,
    TIE_BREAK_PRIORITY,
    VoteConfig,
    agreement_report,
    read_predictions,
    vote_detailed,
    write_predictions,
)
from .errors import DataError, NumericError
from .metrics import (
    comparison_table,
    evaluate,
    format_pct,
    misclassification_report,
    render_misclassifications,
)
from .preprocess import normalize, tokenize

DATA_ROOT_ENV = "INFOTWEET_DATA_ROOT"

_CONFIG_INT_KEYS = (
    "max_length",
    "conv_filters",
    "conv_kernel",
    "gru_hidden",
    "epochs",
    "batch_size",
    "seed",
)
_CONFIG_FLOAT_KEYS = ("dropout", "learning_rate")
_CONFIG_BOOL_KEYS = ("trainable_embeddings",)


def resolve_path(raw: str | Path) -> Path:
    """Resolve a user-supplied path against INFOTWEET_DATA_ROOT if relative."""
    path = Path(raw)
    if path.is_absolute():
        return path
    root = os.environ.get(DATA_ROOT_ENV)
    return Path(root) / path if root else path


def load_config(path: str | Path) -> ModelConfig:
    """Read a ModelConfig from the [model] section of an INI file."""
    path = Path(path)
    if not path.exists():
        raise DataError(f"no such config file: {path}")
    parser = configparser.ConfigParser()
    try:
        parser.read(path, encoding="utf-8")
    except configparser.Error as exc:
        raise DataError(f"{path.name}: {exc}") from None
    if "model" not in parser:
        raise DataError(f"{path.name}: missing [model] section")
    section = parser["model"]
    values: dict = {}
    for key in section:
        try:
            if key in _CONFIG_INT_KEYS:
                values[key] = section.getint(key)
            elif key in _CONFIG_FLOAT_KEYS:
                values[key] = section.getfloat(key)
            elif key in _CONFIG_BOOL_KEYS:
                values[key] = section.getboolean(key)
            else:
                raise DataError(f"{path.name}: unknown config key {key!r}")
        except ValueError as exc:
            raise DataError(f"{path.name}: bad value for {key}: {exc}") from None
    try:
        return ModelConfig(**values)
    except ValueError as exc:
        raise DataError(f"{path.name}: {exc}") from None


def _infer_dim(path: Path) -> int:
    if not path.exists():
        raise DataError(f"no such file: {path}")
    with path.open(encoding="utf-8") as handle:
        for line in handle:
            parts = line.split()
            if parts:
                return max(len(parts) - 1, 1)
    raise DataError(f"{path.name}: empty embedding file")


def _read_lines(source: str) -> list[str]:
    if source == "-":
        return sys.stdin.read().splitlines()
    path = resolve_path(source)
    if not path.exists():
        raise DataError(f"no such file: {path}")
    return path.read_text(encoding="utf-8").splitlines()


def _write_lines(dest: str, lines: list[str]) -> None:
    body = "".join(line + "\n" for line in lines)
    if dest == "-":
        sys.stdout.write(body)
    else:
        resolve_path(dest).write_text(body, encoding="utf-8", newline="")


def _cmd_stats(args: argparse.Namespace) -> int:
    splits: dict[str, list] = {}
    for name in ("train", "dev", "test"):
        value = getattr(args, name)
        if value:
            splits[name] = load_split(resolve_path(value), expect_labels=True)
    if not splits:
        raise DataError("no input splits given (use --train/--dev/--test)")
    stats = summarize(splits)
    if args.machine:
        print("\n".join(stats.machine_lines()))
    else:
        print(stats.render())
        print(f"fleiss_kappa={stats.fleiss_kappa}")
    return 0


def _cmd_normalize(args: argparse.Namespace) -> int:
    lines = _read_lines(args.input)
    _write_lines(args.output, [normalize(line) for line in lines])
    return 0


def _cmd_train(args: argparse.Namespace) -> int:
    config = load_config(resolve_path(args.config))
    train_tweets = load_split(resolve_path(args.train), expect_labels=True)
    dev_tweets = load_split(resolve_path(args.dev), expect_labels=True) if args.dev else None
    emb_path = resolve_path(args.embeddings)
    dim = args.embedding_dim if args.embedding_dim else _infer_dim(emb_path)
    table = load_vectors(emb_path, dim)
    corpus_tokens: set[str] = set()
    token_lists = []
    for tweet in train_tweets + (dev_tweets or []):
        tokens = tokenize(normalize(tweet.text))
        token_lists.append(tokens)
        corpus_tokens.update(tokens)
    table = restrict_to_corpus(table, corpus_tokens)
    print(f"vocab={len(table)} oov_rate={oov_rate(token_lists, table):.4f}")
    classifier = Classifier(config, table)
    history = classifier.fit(train_tweets, dev_tweets)
    for entry in history:
        line = f"epoch={entry['epoch']} train_loss={entry['train_loss']:.6f}"
        if "dev_f1" in entry:
            line += f" dev_f1={entry['dev_f1']:.6f}"
        print(line)
    out = resolve_path(args.checkpoint)
    classifier.save(out)
    print(f"checkpoint={out}")
    return 0


def _cmd_predict(args: argparse.Namespace) -> int:
    classifier = Classifier.load(resolve_path(args.checkpoint))
    tweets = load_split(resolve_path(args.input), expect_labels=False)
    pset = classifier.predict(tweets, model_name=args.model_name)
    out = resolve_path(args.output)
    write_predictions(out, pset)
    print(f"predictions={out} n={len(pset.predictions)}")
    return 0


def _cmd_vote(args: argparse.Namespace) -> int:
    sets = [read_predictions(resolve_path(p)) for p in args.members]
    if args.order:
        members = [m.strip() for m in args.order.split(",") if m.strip()]
    else:
        members = [s.model_name for s in sets]
    config = VoteConfig(members=members, tie_break=args.tie_break)
    result, stats = vote_detailed(sets, config)
    out = resolve_path(args.output)
    write_predictions(out, result)
    print(f"predictions={out} members={len(sets)} ties={stats.n_ties}")
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    pred = read_predictions(resolve_path(args.pred), model_name=args.model_name)
    gold = load_split(resolve_path(args.gold), expect_labels=True)
    report = evaluate(pred, gold)
    if args.machine:
        print("\n".join(report.machine_lines()))
    else:
        m = report.matrix
        print(f"model: {report.model_name}")
        print(f"accuracy:  {format_pct(report.accuracy)}")
        print(f"precision: {format_pct(report.precision)}")
        print(f"recall:    {format_pct(report.recall)}")
        print(f"f1:        {format_pct(report.f1)}")
        print(f"confusion: tp={m.tp} fp={m.fp} fn={m.fn} tn={m.tn}")
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    gold = load_split(resolve_path(args.gold), expect_labels=True)
    sets = [read_predictions(resolve_path(p)) for p in args.pred]
    reports = [evaluate(pset, gold) for pset in sets]
    print(comparison_table(reports, include_published=args.published))
    if args.agreement:
        if len(sets) < 2:
            raise DataError("agreement needs at least 2 prediction files")
        print()
        print("\n".join(agreement_report(sets).machine_lines()))
    if args.misclassified:
        by_name = {pset.model_name: pset for pset in sets}
        if args.misclassified not in by_name:
            known = ", ".join(sorted(by_name))
            raise DataError(f"no prediction set named {args.misclassified!r} (have: {known})")
        rows = misclassification_report(by_name[args.misclassified], gold, limit=args.limit)
        print()
        print(render_misclassifications(rows))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="infotweet",
        description="Tweet informativeness classification toolkit.",
    )
    parser.add_argument("--verbose", action="store_true", help="print tracebacks on errors")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="label counts per split")
    p.add_argument("--train")
    p.add_argument("--dev")
    p.add_argument("--test")
    p.add_argument("--machine", action="store_true", help="key=value output")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("normalize", help="normalize raw text lines")
    p.add_argument("--input", default="-", help="input file, or - for stdin")
    p.add_argument("--output", default="-", help="output file, or - for stdout")
    p.set_defaults(func=_cmd_normalize)

    p = sub.add_parser("train", help="train the classifier")
    p.add_argument("--config", required=True, help="INI file with a [model] section")
    p.add_argument("--train", required=True, help="labeled training TSV")
    p.add_argument("--dev", help="labeled development TSV for model selection")
    p.add_argument("--embeddings", required=True, help="word vector text file")
    p.add_argument("--embedding-dim", type=int, help="vector size (default: inferred)")
    p.add_argument("--checkpoint", required=True, help="output checkpoint path")
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("predict", help="label a TSV with a trained checkpoint")
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--input", required=True, help="TSV of tweets (labels optional)")
    p.add_argument("--output", required=True, help="output prediction TSV")
    p.add_argument("--model-name", default="bigrucnn")
    p.set_defaults(func=_cmd_predict)

    p = sub.add_parser("vote", help="majority-vote over prediction files")
    p.add_argument("members", nargs="+", help="prediction TSVs (2 or more)")
    p.add_argument("--output", required=True)
    p.add_argument(
        "--tie-break",
        choices=[TIE_BREAK_PRIORITY, TIE_BREAK_INFORMATIVE],
        default=TIE_BREAK_PRIORITY,
    )
    p.add_argument("--order", help="comma-separated member priority order")
    p.set_defaults(func=_cmd_vote)

    p = sub.add_parser("eval", help="score a prediction file against gold labels")
    p.add_argument("--pred", required=True)
    p.add_argument("--gold", required=True)
    p.add_argument("--model-name", help="override the model name (default: file stem)")
    p.add_argument("--machine", action="store_true", help="key=value output")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("report", help="comparison table and error analysis")
    p.add_argument("--gold", required=True)
    p.add_argument("--pred", required=True, nargs="+", help="prediction TSVs")
    p.add_argument("--published", action="store_true", help="include published test rows")
    p.add_argument("--agreement", action="store_true", help="pairwise agreement rates")
    p.add_argument("--misclassified", metavar="MODEL", help="list errors of this model")
    p.add_argument("--limit", type=int, default=10, help="errors per direction")
    p.set_defaults(func=_cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DataError as exc:
        if args.verbose:
            traceback.print_exc()
        print(f"error: data: {exc}", file=sys.stderr)
        return 3
    except NumericError as exc:
        if args.verbose:
            traceback.print_exc()
        print(f"error: numeric: {exc}", file=sys.stderr)
        return 4


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
