"""End-to-end CLI tests driving ``python -m infotweet`` as a subprocess."""

import subprocess
import sys

import pytest

from infotweet.cli import load_config, resolve_path
from infotweet.errors import DataError


def run_cli(*args, env_extra=None, stdin_text=None):
    import os

    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "infotweet", *args],
        capture_output=True,
        text=True,
        env=env,
        input=stdin_text,
        timeout=120,
    )


def test_no_arguments_is_usage_error():
    result = run_cli()
    assert result.returncode == 2


def test_unknown_subcommand_is_usage_error():
    result = run_cli("frobnicate")
    assert result.returncode == 2


def test_missing_file_is_data_error(tmp_path):
    result = run_cli("stats", "--train", str(tmp_path / "absent.tsv"))
    assert result.returncode == 3
    assert result.stderr.strip().startswith("error: data: no such file")


def test_verbose_adds_traceback(tmp_path):
    result = run_cli("--verbose", "stats", "--train", str(tmp_path / "absent.tsv"))
    assert result.returncode == 3
    assert "Traceback" in result.stderr


def test_stats_machine_output(fixtures_dir):
    result = run_cli(
        "stats",
        "--train", str(fixtures_dir / "corpus" / "train.tsv"),
        "--dev", str(fixtures_dir / "corpus" / "dev.tsv"),
        "--machine",
    )
    assert result.returncode == 0
    lines = result.stdout.splitlines()
    assert "train.INFORMATIVE=16" in lines
    assert "train.UNINFORMATIVE=16" in lines
    assert "dev.total=8" in lines
    assert "total=40" in lines
    assert "fleiss_kappa=0.818" in lines


def test_stats_human_output(fixtures_dir):
    result = run_cli("stats", "--train", str(fixtures_dir / "corpus" / "train.tsv"))
    assert result.returncode == 0
    assert "Split" in result.stdout
    assert "fleiss_kappa=0.818" in result.stdout


def test_normalize_stdin_stdout():
    result = run_cli("normalize", stdin_text="Hello @USER world HTTPURL\n")
    assert result.returncode == 0
    assert result.stdout == "hello world\n"


def test_normalize_files_match_expected(fixtures_dir, tmp_path):
    out = tmp_path / "out.txt"
    result = run_cli(
        "normalize",
        "--input", str(fixtures_dir / "normalize" / "input.txt"),
        "--output", str(out),
    )
    assert result.returncode == 0
    expected = (fixtures_dir / "normalize" / "expected.txt").read_bytes()
    assert out.read_bytes() == expected


def test_data_root_env_resolves_relative_paths(fixtures_dir, tmp_path):
    result = run_cli(
        "stats",
        "--train", "corpus/train.tsv",
        "--machine",
        env_extra={"INFOTWEET_DATA_ROOT": str(fixtures_dir)},
    )
    assert result.returncode == 0
    assert "train.total=32" in result.stdout


def test_resolve_path_behavior(monkeypatch, tmp_path):
    import pathlib

    monkeypatch.delenv("INFOTWEET_DATA_ROOT", raising=False)
    assert resolve_path("x/y.tsv") == pathlib.Path("x/y.tsv")
    monkeypatch.setenv("INFOTWEET_DATA_ROOT", str(tmp_path))
    assert resolve_path("x/y.tsv") == tmp_path / "x" / "y.tsv"
    absolute = tmp_path / "abs.tsv"
    assert resolve_path(str(absolute)) == absolute


def test_load_config_errors(tmp_path):
    missing = tmp_path / "nope.ini"
    with pytest.raises(DataError, match="no such config file"):
        load_config(missing)
    bad_section = tmp_path / "bad1.ini"
    bad_section.write_text("[other]\nx = 1\n", encoding="utf-8")
    with pytest.raises(DataError, match=r"missing \[model\] section"):
        load_config(bad_section)
    bad_key = tmp_path / "bad2.ini"
    bad_key.write_text("[model]\nwat = 1\n", encoding="utf-8")
    with pytest.raises(DataError, match="unknown config key 'wat'"):
        load_config(bad_key)
    bad_value = tmp_path / "bad3.ini"
    bad_value.write_text("[model]\nepochs = soon\n", encoding="utf-8")
    with pytest.raises(DataError, match="bad value for epochs"):
        load_config(bad_value)
    bad_range = tmp_path / "bad4.ini"
    bad_range.write_text("[model]\ndropout = 1.5\n", encoding="utf-8")
    with pytest.raises(DataError, match="dropout"):
        load_config(bad_range)


def test_load_config_fixture_values(model_config):
    assert model_config.max_length == 16
    assert model_config.conv_filters == 8
    assert model_config.gru_hidden == 8
    assert model_config.dropout == 0.2
    assert model_config.learning_rate == 0.001
    assert model_config.epochs == 15
    assert model_config.batch_size == 8
    assert model_config.seed == 42
    assert model_config.trainable_embeddings is False


def test_full_pipeline(fixtures_dir, tmp_path):
    """train -> predict -> vote -> eval -> report, all through the CLI."""
    env = {"INFOTWEET_DATA_ROOT": str(fixtures_dir)}
    ckpt = tmp_path / "model.npz"
    result = run_cli(
        "train",
        "--config", "config.ini",
        "--train", "corpus/train.tsv",
        "--dev", "corpus/dev.tsv",
        "--embeddings", "mini_glove.txt",
        "--checkpoint", str(ckpt),
        env_extra=env,
    )
    assert result.returncode == 0, result.stderr
    assert "epoch=15" in result.stdout
    assert "dev_f1=" in result.stdout
    assert ckpt.exists()

    preds = tmp_path / "bigrucnn.tsv"
    result = run_cli(
        "predict",
        "--checkpoint", str(ckpt),
        "--input", "corpus/test_unlabeled.tsv",
        "--output", str(preds),
        env_extra=env,
    )
    assert result.returncode == 0, result.stderr
    assert len(preds.read_text().splitlines()) == 8

    result = run_cli(
        "eval",
        "--pred", str(preds),
        "--gold", "corpus/test.tsv",
        "--machine",
        env_extra=env,
    )
    assert result.returncode == 0, result.stderr
    values = dict(line.split("=", 1) for line in result.stdout.splitlines())
    assert values["model"] == "bigrucnn"
    assert float(values["accuracy"]) >= 7 / 8

    ensemble_out = tmp_path / "ensemble.tsv"
    result = run_cli(
        "vote",
        "predictions/bert.tsv",
        "predictions/roberta.tsv",
        "predictions/xlnet.tsv",
        "--output", str(ensemble_out),
        env_extra=env,
    )
    assert result.returncode == 0, result.stderr
    assert "ties=0" in result.stdout

    result = run_cli(
        "eval",
        "--pred", str(ensemble_out),
        "--gold", "corpus/dev.tsv",
        "--machine",
        env_extra=env,
    )
    assert result.returncode == 0, result.stderr
    values = dict(line.split("=", 1) for line in result.stdout.splitlines())
    # hand-derived from the fixture prediction files: tp=4 fp=1 fn=0 tn=3
    assert values["confusion.tp"] == "4"
    assert values["confusion.fp"] == "1"
    assert values["confusion.fn"] == "0"
    assert values["confusion.tn"] == "3"
    assert float(values["accuracy"]) == pytest.approx(7 / 8)

    result = run_cli(
        "report",
        "--gold", "corpus/dev.tsv",
        "--pred",
        "predictions/bert.tsv",
        "predictions/roberta.tsv",
        "predictions/xlnet.tsv",
        "--published",
        "--agreement",
        "--misclassified", "roberta",
        "--limit", "3",
        env_extra=env,
    )
    assert result.returncode == 0, result.stderr
    assert "BANANA" in result.stdout
    assert "unanimity=" in result.stdout
    assert "PL=" in result.stdout
    assert "Model" in result.stdout


def test_eval_human_output(fixtures_dir):
    result = run_cli(
        "eval",
        "--pred", str(fixtures_dir / "predictions" / "bert.tsv"),
        "--gold", str(fixtures_dir / "corpus" / "dev.tsv"),
    )
    assert result.returncode == 0
    assert "model: bert" in result.stdout
    assert "accuracy:  87.50" in result.stdout
    assert "confusion: tp=4 fp=1 fn=0 tn=3" in result.stdout


def test_vote_order_flag(fixtures_dir, tmp_path):
    out = tmp_path / "e.tsv"
    result = run_cli(
        "vote",
        str(fixtures_dir / "predictions" / "bert.tsv"),
        str(fixtures_dir / "predictions" / "roberta.tsv"),
        str(fixtures_dir / "predictions" / "xlnet.tsv"),
        "--output", str(out),
        "--order", "xlnet,roberta,bert",
    )
    assert result.returncode == 0
    result = run_cli(
        "vote",
        str(fixtures_dir / "predictions" / "bert.tsv"),
        str(fixtures_dir / "predictions" / "roberta.tsv"),
        "--output", str(out),
        "--order", "bert,missing",
    )
    assert result.returncode == 3
    assert "does not cover" in result.stderr


def test_numeric_error_exit_code(fixtures_dir, tmp_path):
    config = tmp_path / "explode.ini"
    config.write_text(
        (fixtures_dir / "config.ini")
        .read_text()
        .replace("learning_rate = 0.001", "learning_rate = 1e300")
        .replace("epochs = 15", "epochs = 2"),
        encoding="utf-8",
    )
    result = run_cli(
        "train",
        "--config", str(config),
        "--train", "corpus/train.tsv",
        "--embeddings", "mini_glove.txt",
        "--checkpoint", str(tmp_path / "m.npz"),
        env_extra={"INFOTWEET_DATA_ROOT": str(fixtures_dir)},
    )
    assert result.returncode == 4
    assert "error: numeric: non-finite" in result.stderr
