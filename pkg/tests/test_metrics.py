import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moltext.errors import DuplicateId, MalformedRow
from moltext.metrics import (
    PredictionRecord,
    bleu,
    chunk_iupac,
    display_round,
    evaluate_file,
    evaluate_records,
    exact_match,
    levenshtein,
    normalized_edit_similarity,
)

FIXTURES = Path(__file__).parent / "fixtures"

REF = "N-[(5-methyl-1,3-thiazol-2-yl)methyl]piperidine-4-sulfonamide"
ONE_SUB = "N-[(4-methyl-1,3-thiazol-2-yl)methyl]piperidine-4-sulfonamide"
THREE_SUB = "N-[(4-methyl-1,3-thiazol-5-yl)methyl]piperidine-1-sulfonamide"
IDENTICAL = "1-[2-(azetidin-3-yl)ethyl]piperidin-4-ol"


def dp_levenshtein(a: str, b: str) -> int:
    """Plain quadratic dynamic program, the independence oracle."""
    m, n = len(a), len(b)
    prev = list(range(n + 1))
    for i in range(1, m + 1):
        cur = [i] + [0] * n
        ca = a[i - 1]
        for j in range(1, n + 1):
            cur[j] = min(
                prev[j] + 1,
                cur[j - 1] + 1,
                prev[j - 1] + (ca != b[j - 1]),
            )
        prev = cur
    return prev[n]


class TestExactMatch:
    def test_identical_name(self):
        assert exact_match(IDENTICAL, IDENTICAL)

    def test_trim_rule(self):
        assert exact_match("a ", "a")
        assert exact_match(" a", "a\t")

    def test_case_sensitive(self):
        assert not exact_match("A", "a")


class TestEditSimilarity:
    def test_identical(self):
        assert normalized_edit_similarity(IDENTICAL, IDENTICAL) == 1.0

    def test_one_substitution_rounds_to_098(self):
        assert display_round(normalized_edit_similarity(ONE_SUB, REF)) == 0.98

    def test_three_substitutions_round_to_095(self):
        assert display_round(normalized_edit_similarity(THREE_SUB, REF)) == 0.95

    def test_both_empty(self):
        assert normalized_edit_similarity("", "") == 1.0

    def test_one_empty(self):
        assert normalized_edit_similarity("", "abc") == 0.0
        assert normalized_edit_similarity("abc", "") == 0.0

    def test_oracle_equivalence_10k_pairs(self):
        rng = random.Random(20240131)
        alphabet = "abcdefghijklmnopqrstuvwxyz0123456789-[](),' "
        for _ in range(10_000):
            a = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 120)))
            b = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 120)))
            assert levenshtein(a, b) == dp_levenshtein(a, b)

    @settings(max_examples=300, deadline=None)
    @given(st.text(max_size=60), st.text(max_size=60))
    def test_symmetry_and_identity(self, a, b):
        assert normalized_edit_similarity(a, b) == normalized_edit_similarity(b, a)
        sim = normalized_edit_similarity(a, b)
        assert 0.0 <= sim <= 1.0
        assert (sim == 1.0) == (a.strip() == b.strip())


class TestChunking:
    def test_single_word(self):
        assert chunk_iupac("ethane") == ["ethane"]

    def test_locants_and_hyphens(self):
        assert chunk_iupac("piperidin-4-ol") == ["piperidin", "-", "4", "-", "ol"]

    def test_empty(self):
        assert chunk_iupac("") == []

    def test_brackets_commas_apostrophes(self):
        assert chunk_iupac("N-[(1,3)']x") == [
            "N", "-", "[", "(", "1", ",", "3", ")", "'", "]", "x",
        ]

    def test_digit_letter_boundary(self):
        assert chunk_iupac("2H") == ["2", "H"]
        assert chunk_iupac("4a5b") == ["4", "a", "5", "b"]

    def test_whitespace_dropped(self):
        assert chunk_iupac("propanoic acid") == ["propanoic", "acid"]


class TestBleu:
    def test_identical_names(self):
        tokens = chunk_iupac(IDENTICAL)
        assert bleu(tokens, tokens) == 1.0

    def test_identical_single_token(self):
        assert bleu(["ethane"], ["ethane"]) == 1.0

    def test_one_substitution_within_tolerance(self):
        score = bleu(chunk_iupac(ONE_SUB), chunk_iupac(REF))
        assert score == pytest.approx(0.84, abs=0.10)

    def test_disjoint_tokens_near_zero(self):
        garbage = "Write a response that appropriately completes the request."
        reference = "N-[[1-propan-2-yl-3-(trifluoromethyl)pyrazol-4-yl]methyl]ethanamine"
        assert bleu(chunk_iupac(garbage), chunk_iupac(reference)) < 0.01

    def test_empty_prediction(self):
        assert bleu([], chunk_iupac(REF)) == 0.0

    def test_smoothing_can_be_disabled(self):
        assert bleu(["a", "b"], ["c", "d"], smoothing=False) == 0.0
        assert bleu(["a", "b"], ["c", "d"], smoothing=True) > 0.0

    def test_relabel_invariance(self):
        pred = chunk_iupac(ONE_SUB)
        ref = chunk_iupac(REF)
        vocabulary = sorted(set(pred) | set(ref))
        mapping = {tok: f"T{i}" for i, tok in enumerate(vocabulary)}
        relabeled = bleu([mapping[t] for t in pred], [mapping[t] for t in ref])
        assert relabeled == pytest.approx(bleu(pred, ref), abs=1e-12)

    @settings(max_examples=150, deadline=None)
    @given(st.lists(st.sampled_from(["a", "b", "-", "4", "ol"]), min_size=1, max_size=30))
    def test_self_bleu_is_one(self, tokens):
        assert bleu(tokens, tokens) == pytest.approx(1.0, abs=1e-12)


class TestConsistencyAcrossMetrics:
    @settings(max_examples=150, deadline=None)
    @given(st.text(alphabet="abc-[]12 ", min_size=1, max_size=40))
    def test_exact_implies_perfect_scores(self, name):
        if not name.strip():
            return
        assert exact_match(name, name)
        assert normalized_edit_similarity(name, name) == 1.0
        tokens = chunk_iupac(name.strip())
        if tokens:
            assert bleu(tokens, tokens) == pytest.approx(1.0, abs=1e-12)


class TestDisplayRounding:
    def test_half_up(self):
        assert display_round(0.845) == 0.85
        assert display_round(0.975) == 0.98
        assert display_round(0.9836) == 0.98

    def test_raw_values_untouched(self):
        records = [PredictionRecord(1, ONE_SUB, REF)]
        report = evaluate_records(records)
        assert report.mean_edit_similarity == pytest.approx(1 - 1 / 61)


class TestEvaluateFile:
    def test_all_correct(self, tmp_path):
        path = tmp_path / "p.tsv"
        path.write_text("1\tfoo\tfoo\n2\tbar\tbar\n")
        report = evaluate_file(path)
        assert report.pct_exact == 100.0
        assert report.mean_edit_similarity == 1.0
        assert report.mean_bleu == 1.0

    def test_all_empty_predictions(self, tmp_path):
        path = tmp_path / "p.tsv"
        path.write_text("1\t\tfoo\n2\t\tbar\n")
        report = evaluate_file(path)
        assert report.pct_exact == 0.0
        assert report.mean_edit_similarity == 0.0
        assert report.mean_bleu == 0.0

    def test_table_fixture_rows(self):
        report = evaluate_file(FIXTURES / "table_a7_predictions.tsv")
        assert report.n == 13
        by_id = {row.id: row for row in report.per_example}
        assert display_round(by_id[13].edit_similarity) == 1.00
        assert display_round(by_id[12].edit_similarity) == 0.98
        assert display_round(by_id[11].edit_similarity) == 0.95
        assert by_id[13].bleu == 1.0
        assert by_id[12].bleu == pytest.approx(0.84, abs=0.10)
        assert by_id[13].exact

    def test_malformed_row_aborts(self, tmp_path):
        path = tmp_path / "p.tsv"
        path.write_text("1\tonly-two-fields\n")
        with pytest.raises(MalformedRow):
            evaluate_file(path)

    def test_empty_reference_aborts(self, tmp_path):
        path = tmp_path / "p.tsv"
        path.write_text("1\tpred\t\n")
        with pytest.raises(MalformedRow):
            evaluate_file(path)

    def test_duplicate_id_aborts(self, tmp_path):
        path = tmp_path / "p.tsv"
        path.write_text("1\ta\ta\n1\tb\tb\n")
        with pytest.raises(DuplicateId):
            evaluate_file(path)

    def test_aggregates_permutation_invariant(self, tmp_path):
        rows = ["1\tfoo\tfoo", "2\tbar\tbaz", "3\tx-1\tx-2"]
        a = tmp_path / "a.tsv"
        b = tmp_path / "b.tsv"
        a.write_text("\n".join(rows) + "\n")
        b.write_text("\n".join(reversed(rows)) + "\n")
        ra = evaluate_file(a)
        rb = evaluate_file(b)
        assert ra.pct_exact == rb.pct_exact
        assert ra.mean_edit_similarity == pytest.approx(rb.mean_edit_similarity)
        assert ra.mean_bleu == pytest.approx(rb.mean_bleu)

    def test_report_files_written(self, tmp_path):
        path = tmp_path / "p.tsv"
        path.write_text("1\tfoo\tfoo\n")
        evaluate_file(path, tmp_path / "report")
        summary = (tmp_path / "report.summary.txt").read_text()
        assert "pct_exact\t100.0" in summary
        rows = (tmp_path / "report.rows.tsv").read_text().splitlines()
        assert rows[0] == "id\texact\tedit_similarity\tbleu"
        assert rows[1].startswith("1\t1\t")
