"""Command-line entry point: the pipeline as reproducible subcommands.

Every subcommand that writes an artifact also writes a manifest with
input checksums and the effective parameters, so any artifact can be
regenerated byte-identically. Usage errors exit 2 (argparse), data
errors exit 1 with one machine-parseable line on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from multiprocessing import Pool
from pathlib import Path

from . import __version__
from .curation import MoleculeRecord, curate_files
from .errors import MoltextError
from .filters import a2_default_config, config_digest, load_config
from .instructions import (
    emit_dataset,
    emit_prompt_list,
    format_example,
    invert_cohort,
    read_dataset,
)
from .manifest import sha256_file, write_manifest
from .metrics import (
    EvalReport,
    PerExample,
    PredictionRecord,
    evaluate_records,
    load_predictions,
    read_summary,
    write_report,
)
from .sampling import sample_cohort, split_parent

_DIRECTIONS = {"forward": "smiles_to_iupac", "reverse": "iupac_to_smiles"}


def _read_parent(path) -> list[MoleculeRecord]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            rid, smiles, iupac = line.split("\t")
            records.append(MoleculeRecord(id=int(rid), smiles=smiles, iupac=iupac))
    return records


def _write_parent(records, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(f"{rec.id}\t{rec.smiles}\t{rec.iupac}\n")


def cmd_curate(args) -> int:
    cfg = load_config(args.config) if args.config else a2_default_config()
    stats = curate_files(
        args.smiles,
        args.iupac,
        cfg,
        args.out,
        stats_path=args.stats,
        workers=args.workers,
    )
    print(f"retained {stats.retained} of {stats.rows_joined} joined rows")
    return 0


def cmd_split(args) -> int:
    parent = _read_parent(args.parent)
    finetune, test = split_parent(parent, args.ratio, args.seed)
    _write_parent(finetune, args.out_train)
    _write_parent(test, args.out_test)
    params = {"ratio": args.ratio, "seed": args.seed}
    write_manifest(args.out_train, "split:train", params, {"parent": args.parent})
    write_manifest(args.out_test, "split:test", params, {"parent": args.parent})
    print(f"split {len(parent)} rows into {len(finetune)} + {len(test)}")
    return 0


def cmd_sample(args) -> int:
    pool = _read_parent(args.pool)
    cohort = sample_cohort(pool, args.n, args.seed)
    _write_parent(cohort, args.out)
    write_manifest(
        args.out,
        "sample",
        {"n": args.n, "seed": args.seed},
        {"pool": args.pool},
    )
    print(f"sampled {len(cohort)} of {len(pool)} rows")
    return 0


def cmd_build(args) -> int:
    pool = _read_parent(args.parent)
    cohort = sample_cohort(pool, args.n, args.seed)
    direction = _DIRECTIONS[args.direction]
    examples = [format_example(rec, direction) for rec in cohort]
    if args.invert_fraction:
        examples = invert_cohort(examples, args.invert_fraction, args.invert_seed)
    params = {
        "parent_sha256": sha256_file(args.parent),
        "split_seed": args.split_seed,
        "split_ratio": args.split_ratio,
        "cohort_seed": args.seed,
        "cohort_size": args.n,
        "inversion_fraction": args.invert_fraction,
        "inversion_seed": args.invert_seed,
        "direction": direction,
    }
    emit_dataset(examples, args.out, manifest_params=params, manifest_inputs={"parent": args.parent})
    if args.prompts:
        emit_prompt_list(examples, args.prompts)
    print(f"built {len(examples)} instruction examples -> {args.out}")
    return 0


def cmd_invert(args) -> int:
    examples = read_dataset(args.dataset)
    flipped = invert_cohort(examples, args.fraction, args.seed)
    params = {"fraction": args.fraction, "seed": args.seed}
    emit_dataset(flipped, args.out, manifest_params=params, manifest_inputs={"dataset": args.dataset})
    changed = sum(1 for a, b in zip(examples, flipped) if a != b)
    print(f"inverted {changed} of {len(examples)} examples -> {args.out}")
    return 0


def _score_one(rec: PredictionRecord) -> PerExample:
    from .metrics import bleu, chunk_iupac, exact_match, normalized_edit_similarity

    return PerExample(
        id=rec.id,
        exact=exact_match(rec.prediction, rec.reference),
        edit_similarity=normalized_edit_similarity(rec.prediction, rec.reference),
        bleu=bleu(chunk_iupac(rec.prediction.strip()), chunk_iupac(rec.reference.strip())),
    )


def cmd_eval(args) -> int:
    records = load_predictions(args.predictions)
    if args.workers > 1 and len(records) > 1:
        with Pool(args.workers) as pool:
            rows = list(pool.imap(_score_one, records, chunksize=64))
        n = len(rows)
        report = EvalReport(
            n=n,
            pct_exact=100.0 * sum(r.exact for r in rows) / n,
            mean_edit_similarity=sum(r.edit_similarity for r in rows) / n,
            mean_bleu=sum(r.bleu for r in rows) / n,
            per_example=rows,
        )
    else:
        report = evaluate_records(records)
    summary, rows_path = write_report(report, args.out)
    write_manifest(
        rows_path, "eval", {"workers_independent": True}, {"predictions": args.predictions}
    )
    print(
        f"n={report.n} exact={report.pct_exact:.2f}% "
        f"edit={report.mean_edit_similarity:.4f} bleu={report.mean_bleu:.4f}"
    )
    return 0


def cmd_report(args) -> int:
    with open(args.sweep, encoding="utf-8") as fh:
        sweep = json.load(fh)
    header = ["model", "dataset_size", "epochs", "pct_exact", "mean_edit_similarity", "mean_bleu"]
    lines = ["\t".join(header)]
    for entry in sweep:
        summary = read_summary(entry["summary"])
        lines.append(
            "\t".join(
                str(x)
                for x in (
                    entry.get("model", "?"),
                    entry.get("size", "?"),
                    entry.get("epochs", "?"),
                    summary["pct_exact"],
                    summary["mean_edit_similarity"],
                    summary["mean_bleu"],
                )
            )
        )
    table = "\n".join(lines) + "\n"
    Path(args.out).write_text(table, encoding="utf-8")
    write_manifest(args.out, "report", {}, {"sweep": args.sweep})
    print(table, end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="moltext",
        description="Curate molecule dumps, build instruction datasets, score predictions.",
    )
    parser.add_argument("--version", action="version", version=f"moltext {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curate", help="join, deduplicate, and filter raw dumps")
    p.add_argument("--smiles", required=True, help="id<TAB>smiles input file")
    p.add_argument("--iupac", required=True, help="id<TAB>iupac-name input file")
    p.add_argument("--out", required=True, help="parent dataset TSV to write")
    p.add_argument("--stats", help="statistics file to write")
    p.add_argument("--config", help="filter criteria file (defaults to shipped values)")
    p.add_argument("--workers", type=int, default=1, help="descriptor worker processes")
    p.set_defaults(func=cmd_curate)

    p = sub.add_parser("split", help="split a parent set into fine-tune and test pools")
    p.add_argument("--parent", required=True, help="parent dataset TSV")
    p.add_argument("--ratio", type=float, default=0.8, help="fine-tune pool fraction")
    p.add_argument("--seed", type=int, required=True, help="shuffle seed")
    p.add_argument("--out-train", required=True, help="fine-tune pool TSV to write")
    p.add_argument("--out-test", required=True, help="test pool TSV to write")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("sample", help="draw a seeded cohort from a pool")
    p.add_argument("--pool", required=True, help="pool TSV to sample from")
    p.add_argument("--n", type=int, required=True, help="cohort size")
    p.add_argument("--seed", type=int, required=True, help="sampling seed")
    p.add_argument("--out", required=True, help="cohort TSV to write")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("build", help="sample a cohort and emit instruction JSON")
    p.add_argument("--parent", required=True, help="pool TSV to sample from")
    p.add_argument("--n", type=int, required=True, help="cohort size")
    p.add_argument("--seed", type=int, required=True, help="cohort seed")
    p.add_argument(
        "--direction", choices=sorted(_DIRECTIONS), default="forward",
        help="translation direction for the instructions",
    )
    p.add_argument("--out", required=True, help="instruction JSON to write")
    p.add_argument("--prompts", help="also write a prompt-per-line file")
    p.add_argument("--invert-fraction", type=float, default=0.0,
                   help="fraction of examples to re-render in the opposite direction")
    p.add_argument("--invert-seed", type=int, default=0, help="inversion selection seed")
    p.add_argument("--split-seed", type=int, default=None,
                   help="recorded in the manifest when the pool came from a split")
    p.add_argument("--split-ratio", type=float, default=None,
                   help="recorded in the manifest when the pool came from a split")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("invert", help="re-render a fraction of a dataset in reverse")
    p.add_argument("--dataset", required=True, help="instruction JSON to read")
    p.add_argument("--fraction", type=float, required=True, help="fraction to flip")
    p.add_argument("--seed", type=int, required=True, help="selection seed")
    p.add_argument("--out", required=True, help="instruction JSON to write")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("eval", help="score a predictions file against references")
    p.add_argument("--predictions", required=True, help="id<TAB>prediction<TAB>reference file")
    p.add_argument("--out", required=True, help="report prefix (.summary.txt, .rows.tsv)")
    p.add_argument("--workers", type=int, default=1, help="scoring worker processes")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("report", help="merge evaluation summaries into one table")
    p.add_argument("--sweep", required=True,
                   help="JSON list of {model, size, epochs, summary} entries")
    p.add_argument("--out", required=True, help="comparison table TSV to write")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MoltextError as exc:
        print(f"error\t{type(exc).__name__}\t{exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error\tMissingFile\t{exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
