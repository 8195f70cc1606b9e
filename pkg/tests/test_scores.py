"""External score files: parsing, ranking, and round-trip fidelity."""

import numpy as np
import pytest

from linkdiscrim import (
    DegenerateClassesError,
    ScoreFileError,
    dump_scores,
    eval_scores,
    load_score_file,
    metric_report,
    rank_candidates,
    rank_scores,
    score_candidates,
    threshold_from_multiplier,
)
from linkdiscrim.metrics import report_values
from linkdiscrim.scores import eval_scores_csv


def write(tmp_path, text, name="scores.csv"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


L1_FILE = (
    "id,score,label\n"
    "a,0.9,positive\n"
    "b,0.7,negative\n"
    "c,0.6,positive\n"
    "d,0.4,negative\n"
    "e,0.1,negative\n"
)


class TestLoadScoreFile:
    def test_parses_valid_file(self, tmp_path):
        scoreset = load_score_file(write(tmp_path, L1_FILE))
        assert scoreset.n_rows == 5
        assert scoreset.n_positives == 2
        assert scoreset.ids == ("a", "b", "c", "d", "e")

    def test_rejects_bad_header(self, tmp_path):
        path = write(tmp_path, "identifier,score,label\na,1,positive\n")
        with pytest.raises(ScoreFileError, match=":1"):
            load_score_file(path)

    def test_rejects_bad_score_with_line_number(self, tmp_path):
        path = write(tmp_path, "id,score,label\na,1,positive\nb,oops,negative\n")
        with pytest.raises(ScoreFileError, match=":3"):
            load_score_file(path)

    def test_rejects_non_finite_score(self, tmp_path):
        path = write(tmp_path, "id,score,label\na,nan,positive\nb,1,negative\n")
        with pytest.raises(ScoreFileError, match=":2"):
            load_score_file(path)

    def test_rejects_bad_label(self, tmp_path):
        path = write(tmp_path, "id,score,label\na,1,pos\nb,1,negative\n")
        with pytest.raises(ScoreFileError, match="label"):
            load_score_file(path)

    def test_rejects_duplicate_id(self, tmp_path):
        path = write(tmp_path, "id,score,label\na,1,positive\na,2,negative\n")
        with pytest.raises(ScoreFileError, match="duplicate"):
            load_score_file(path)

    def test_rejects_wrong_field_count(self, tmp_path):
        path = write(tmp_path, "id,score,label\na,1\n")
        with pytest.raises(ScoreFileError, match="3 fields"):
            load_score_file(path)

    def test_rejects_single_class(self, tmp_path):
        path = write(tmp_path, "id,score,label\na,1,positive\nb,2,positive\n")
        with pytest.raises(DegenerateClassesError):
            load_score_file(path)

    def test_rejects_empty_file(self, tmp_path):
        path = write(tmp_path, "id,score,label\n")
        with pytest.raises(ScoreFileError, match="no score rows"):
            load_score_file(path)


class TestRankScores:
    def test_l1_equivalent_pins(self, tmp_path):
        report = eval_scores(write(tmp_path, L1_FILE))
        assert report.auc_exact == pytest.approx(0.8333, abs=1e-4)
        assert report.aupr == pytest.approx(0.6417, abs=1e-4)
        assert report.ndcg == pytest.approx(0.9197, abs=1e-4)
        assert report.auc_mroc == pytest.approx(0.8155, abs=1e-4)
        assert report.bp == 0.5

    def test_top_scores_positive_gives_ndcg_one(self, tmp_path):
        text = (
            "id,score,label\n"
            "a,5,positive\nb,4,positive\nc,3,negative\nd,2,negative\ne,1,negative\n"
        )
        report = eval_scores(write(tmp_path, text))
        assert report.ndcg == pytest.approx(1.0)
        assert report.auc_exact == 1.0

    def test_tied_scores_evaluate_identically_across_calls(self, tmp_path):
        text = "id,score,label\n" + "".join(
            f"r{i},0.5,{'positive' if i % 3 == 0 else 'negative'}\n" for i in range(30)
        )
        path = write(tmp_path, text)
        o1 = rank_scores(load_score_file(path))
        o2 = rank_scores(load_score_file(path))
        np.testing.assert_array_equal(o1.positions, o2.positions)

    def test_csv_output_shape(self, tmp_path):
        header, row = eval_scores_csv(write(tmp_path, L1_FILE), (0.5, 1.0, 2.0))
        assert header.split(",")[:2] == ["precision@0.5m", "recall@0.5m"]
        assert header.split(",")[-1] == "auc_mroc"
        assert len(header.split(",")) == len(row.split(",")) == 18


class TestDumpRoundTrip:
    def test_dump_then_eval_matches_in_memory(self, small_model, small_split, tmp_path):
        rng = np.random.default_rng(99)
        scored = score_candidates(small_model, small_split, 0.25, rng)
        outcome = rank_candidates(scored, small_split, rng)
        multipliers = (0.5, 1.0, 2.0)
        m, n_c = outcome.positive_count, outcome.candidate_count
        ks = [threshold_from_multiplier(mult, m, n_c) for mult in multipliers]
        in_memory = report_values(metric_report(outcome, ks), ks)

        path = tmp_path / "dump.csv"
        dump_scores(scored, small_split, path)
        report = eval_scores(path, multipliers)
        external = report_values(report, ks)
        np.testing.assert_allclose(external, in_memory, atol=1e-9)

    def test_dump_labels_match_split(self, small_model, small_split, tmp_path):
        scored = score_candidates(small_model, small_split, 0.0, np.random.default_rng(7))
        path = tmp_path / "dump.csv"
        dump_scores(scored, small_split, path)
        scoreset = load_score_file(path)
        assert scoreset.n_positives == len(small_split.test_edges)
        assert scoreset.n_rows == small_split.candidate_count
