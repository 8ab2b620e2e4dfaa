"""Command line entry points: finetune and export."""

import argparse
import sys

from .errors import BridgeError
from .export import export_predictions
from .specs import spec_for


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="transformer-bridge",
        description="Fine-tune transformers on the informative-tweet task "
        "and export predictions in the infotweet TSV format.",
    )
    parser.add_argument("--verbose", action="store_true", help="print tracebacks on errors")
    sub = parser.add_subparsers(dest="command", required=True)

    ft = sub.add_parser("finetune", help="fine-tune a pretrained model")
    ft.add_argument("--model", required=True, choices=["bert", "roberta", "xlnet"])
    ft.add_argument("--train", required=True, help="labeled training TSV")
    ft.add_argument("--dev", required=True, help="labeled development TSV")
    ft.add_argument("--output-dir", required=True, help="checkpoint directory to create")
    ft.add_argument("--pretrained-path", help="local pretrained checkout (skips the hub)")
    ft.add_argument("--epochs", type=int, help="override the per-model default")
    ft.add_argument("--learning-rate", type=float, help="override the default 1e-5")
    ft.add_argument("--dropout", type=float, help="override the default 0.1")
    ft.add_argument("--max-length", type=int, help="override the default 512")
    ft.add_argument("--batch-size", type=int, default=8)
    ft.add_argument("--grad-accum", type=int, default=1,
                    help="optimizer steps every N batches (effective batch = batch-size * N)")
    ft.add_argument("--seed", type=int, default=42)

    ex = sub.add_parser("export", help="write a prediction TSV from a checkpoint")
    ex.add_argument("--checkpoint", required=True, help="checkpoint directory")
    ex.add_argument("--input", required=True, help="TSV of tweets (labels optional)")
    ex.add_argument("--output", required=True, help="prediction TSV to write")
    ex.add_argument("--batch-size", type=int, default=32)
    return parser


def _cmd_finetune(args: argparse.Namespace) -> int:
    from .finetune import finetune

    overrides = {}
    if args.epochs is not None:
        overrides["epochs"] = args.epochs
    if args.learning_rate is not None:
        overrides["learning_rate"] = args.learning_rate
    if args.dropout is not None:
        overrides["dropout"] = args.dropout
    if args.max_length is not None:
        overrides["max_length"] = args.max_length
    spec = spec_for(args.model, **overrides)
    out = finetune(
        spec,
        args.train,
        args.dev,
        args.output_dir,
        pretrained_path=args.pretrained_path,
        batch_size=args.batch_size,
        grad_accum=args.grad_accum,
        seed=args.seed,
    )
    print(f"checkpoint={out}")
    return 0


def _cmd_export(args: argparse.Namespace) -> int:
    out = export_predictions(
        args.checkpoint, args.input, args.output, batch_size=args.batch_size
    )
    print(f"predictions={out}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {"finetune": _cmd_finetune, "export": _cmd_export}[args.command]
    try:
        return handler(args)
    except BridgeError as exc:
        if args.verbose:
            raise
        print(f"error: {exc}", file=sys.stderr)
        return 1


def console_main() -> None:
    sys.exit(main())
