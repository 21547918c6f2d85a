import json
from pathlib import Path

import pytest

from moltext.cli import build_parser, main

FIXTURES = Path(__file__).parent / "fixtures"


def run(argv):
    return main([str(a) for a in argv])


@pytest.fixture()
def pipeline_dir(tmp_path):
    """A tiny end-to-end workspace: curated parent from the golden inputs."""
    parent = tmp_path / "parent.tsv"
    rc = run(
        [
            "curate",
            "--smiles", FIXTURES / "golden_smiles.tsv",
            "--iupac", FIXTURES / "golden_iupac.tsv",
            "--out", parent,
            "--stats", tmp_path / "stats.txt",
        ]
    )
    assert rc == 0
    return tmp_path


def test_help_documents_every_flag(capsys):
    parser = build_parser()
    subparsers = next(
        a for a in parser._actions if hasattr(a, "choices") and a.choices
    )
    for name, sub in subparsers.choices.items():
        help_text = sub.format_help()
        for action in sub._actions:
            for option in action.option_strings:
                assert option in help_text, (name, option)


def test_usage_error_exit_code_2():
    with pytest.raises(SystemExit) as exc:
        run(["curate"])  # missing required flags
    assert exc.value.code == 2


def test_data_error_exit_code_1(tmp_path, capsys):
    rc = run(
        [
            "curate",
            "--smiles", tmp_path / "absent.tsv",
            "--iupac", tmp_path / "absent2.tsv",
            "--out", tmp_path / "out.tsv",
        ]
    )
    assert rc == 1
    err = capsys.readouterr().err.strip()
    assert len(err.splitlines()) == 1
    kind, name, _ = err.split("\t", 2)
    assert kind == "error"
    assert name == "MissingFile"


def test_curate_writes_artifacts(pipeline_dir):
    assert (pipeline_dir / "parent.tsv").exists()
    assert (pipeline_dir / "stats.txt").exists()
    assert (pipeline_dir / "parent.tsv.manifest.json").exists()
    manifest = json.loads((pipeline_dir / "parent.tsv.manifest.json").read_text())
    assert manifest["tool"] == "moltext"
    assert set(manifest["inputs"]) == {"smiles", "iupac"}


def test_split_sample_build_invert_eval_report(pipeline_dir, capsys):
    parent = pipeline_dir / "parent.tsv"
    train = pipeline_dir / "train.tsv"
    test = pipeline_dir / "test.tsv"
    assert run(["split", "--parent", parent, "--ratio", "0.8", "--seed", "42",
                "--out-train", train, "--out-test", test]) == 0
    n_parent = len(parent.read_text().splitlines())
    n_train = len(train.read_text().splitlines())
    n_test = len(test.read_text().splitlines())
    assert n_train + n_test == n_parent

    cohort = pipeline_dir / "cohort.tsv"
    assert run(["sample", "--pool", train, "--n", "3", "--seed", "7",
                "--out", cohort]) == 0
    assert len(cohort.read_text().splitlines()) == 3

    data = pipeline_dir / "data.json"
    prompts = pipeline_dir / "prompts.txt"
    assert run(["build", "--parent", train, "--n", "3", "--seed", "42",
                "--direction", "forward", "--out", data, "--prompts", prompts]) == 0
    payload = json.loads(data.read_text())
    assert len(payload) == 3
    assert all(
        row["instruction"].startswith("Translate the following SMILES string")
        for row in payload
    )
    assert len(prompts.read_text().splitlines()) == 3

    inverted = pipeline_dir / "inverted.json"
    assert run(["invert", "--dataset", data, "--fraction", "1.0", "--seed", "3",
                "--out", inverted]) == 0
    flipped = json.loads(inverted.read_text())
    assert all(
        row["instruction"].startswith("Translate the following IUPAC name")
        for row in flipped
    )

    # Self-consistent predictions from the built dataset references.
    preds = pipeline_dir / "preds.tsv"
    preds.write_text(
        "".join(
            f"{i}\t{row['output']}\t{row['output']}\n"
            for i, row in enumerate(payload, 1)
        )
    )
    assert run(["eval", "--predictions", preds, "--out", pipeline_dir / "report"]) == 0
    summary = (pipeline_dir / "report.summary.txt").read_text()
    assert "pct_exact\t100.0" in summary

    sweep = pipeline_dir / "sweep.json"
    sweep.write_text(json.dumps([
        {"model": "toy", "size": 3, "epochs": 3,
         "summary": str(pipeline_dir / "report.summary.txt")},
    ]))
    assert run(["report", "--sweep", sweep, "--out", pipeline_dir / "table.tsv"]) == 0
    table = (pipeline_dir / "table.tsv").read_text().splitlines()
    assert table[0].split("\t") == [
        "model", "dataset_size", "epochs", "pct_exact",
        "mean_edit_similarity", "mean_bleu",
    ]
    assert table[1].split("\t")[0] == "toy"


def test_eval_workers_do_not_change_results(pipeline_dir):
    preds = pipeline_dir / "p.tsv"
    preds.write_text("1\tfoo\tfoo\n2\tbar-1\tbar-2\n3\tx\ty\n")
    assert run(["eval", "--predictions", preds, "--out", pipeline_dir / "r1"]) == 0
    assert run(["eval", "--predictions", preds, "--out", pipeline_dir / "r8",
                "--workers", "8"]) == 0
    assert (
        (pipeline_dir / "r1.rows.tsv").read_text()
        == (pipeline_dir / "r8.rows.tsv").read_text()
    )


def test_artifact_regenerable_from_same_inputs(pipeline_dir):
    parent = pipeline_dir / "parent.tsv"
    for name in ("x.json", "y.json"):
        assert run(["build", "--parent", parent, "--n", "2", "--seed", "5",
                    "--direction", "forward", "--out", pipeline_dir / name]) == 0
    assert (
        (pipeline_dir / "x.json").read_bytes()
        == (pipeline_dir / "y.json").read_bytes()
    )
    xm = json.loads((pipeline_dir / "x.json.manifest.json").read_text())
    ym = json.loads((pipeline_dir / "y.json.manifest.json").read_text())
    assert xm == ym


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["--version"])
    assert exc.value.code == 0
