"""Score model predictions with the three metrics and build a report.

Run from the repository root:

    python3 demos/04_score_predictions.py
"""

import tempfile
from pathlib import Path

from moltext.metrics import (
    bleu,
    chunk_iupac,
    display_round,
    evaluate_file,
    normalized_edit_similarity,
)

reference = "N-[(5-methyl-1,3-thiazol-2-yl)methyl]piperidine-4-sulfonamide"
near_miss = "N-[(4-methyl-1,3-thiazol-2-yl)methyl]piperidine-4-sulfonamide"

print("single-pair scoring:")
print(f"  reference : {reference}")
print(f"  prediction: {near_miss}")
sim = normalized_edit_similarity(near_miss, reference)
print(f"  edit similarity = {sim:.4f} (displays as {display_round(sim)})")
print(f"  chunked tokens  = {chunk_iupac(near_miss)[:9]} ...")
print(f"  chunked BLEU    = {bleu(chunk_iupac(near_miss), chunk_iupac(reference)):.4f}")

workdir = Path(tempfile.mkdtemp(prefix="moltext-demo-"))
predictions = workdir / "predictions.tsv"
predictions.write_text(
    "\n".join(
        [
            f"1\t{reference}\t{reference}",        # exact
            f"2\t{near_miss}\t{reference}",        # near miss
            f"3\tnot even close\t{reference}",     # junk
        ]
    )
    + "\n"
)

report = evaluate_file(predictions, workdir / "report")
print(f"\nfile-level report over {report.n} rows:")
print(f"  % exact             = {display_round(report.pct_exact)}")
print(f"  mean edit similarity = {display_round(report.mean_edit_similarity)}")
print(f"  mean chunked BLEU    = {display_round(report.mean_bleu)}")
print(f"\nwrote {workdir}/report.summary.txt and report.rows.tsv")
