import pytest

from tmfuzzy.corpus import TranslationUnit
from tmfuzzy.csvio import (
    RESULT_COLUMNS,
    read_results,
    write_agreement,
    write_found_best,
    write_results,
    write_scatter,
    write_zsweep,
)
from tmfuzzy.errors import FormatError
from tmfuzzy.evaluation import ScatterRow
from tmfuzzy.normalize import generic_normalizer
from tmfuzzy.retrieval import MatchResult

NORM = generic_normalizer()


def fixture_rows():
    mtbt = [NORM.segment("query one here"), NORM.segment("query, with \"commas\"")]
    units = [
        TranslationUnit(0, NORM.segment("bank zero src"), NORM.segment("bank zero tgt")),
        TranslationUnit(1, NORM.segment("bank one src"), NORM.segment("bank one tgt")),
    ]
    results = [
        MatchResult(0, 1, "pm", 1 / 3),
        MatchResult(1, 0, "pm", 0.25),
    ]
    return results, mtbt, units


class TestResults:
    def test_round_trip(self, tmp_path):
        results, mtbt, units = fixture_rows()
        path = tmp_path / "results.csv"
        write_results(path, results, mtbt, units)
        metric, loaded = read_results(path)
        assert metric == "pm"
        assert [(r.mtbt_index, r.tmb_index) for r in loaded] == [(0, 1), (1, 0)]
        # scores come back at the written 6-decimal precision
        assert loaded[0].score == pytest.approx(1 / 3, abs=5e-7)

    def test_header_and_formatting(self, tmp_path):
        results, mtbt, units = fixture_rows()
        path = tmp_path / "results.csv"
        write_results(path, results, mtbt, units)
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == ",".join(RESULT_COLUMNS)
        assert lines[1].startswith("0,1,pm,0.333333,")

    def test_texts_are_originals(self, tmp_path):
        results, mtbt, units = fixture_rows()
        path = tmp_path / "results.csv"
        write_results(path, results, mtbt, units)
        text = path.read_text(encoding="utf-8")
        assert 'query, with ""commas""' in text  # csv-quoted original
        assert "bank one tgt" in text

    def test_unix_line_endings(self, tmp_path):
        results, mtbt, units = fixture_rows()
        path = tmp_path / "results.csv"
        write_results(path, results, mtbt, units)
        raw = path.read_bytes()
        assert b"\r" not in raw

    def test_mixed_metric_file_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text(
            ",".join(RESULT_COLUMNS)
            + "\n0,0,pm,0.5,a,b,c\n1,0,ed,0.5,a,b,c\n",
            encoding="utf-8",
        )
        with pytest.raises(FormatError):
            read_results(path)

    def test_bad_header_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("x,y\n1,2\n", encoding="utf-8")
        with pytest.raises(FormatError):
            read_results(path)

    def test_bad_row_reports_row_number(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text(
            ",".join(RESULT_COLUMNS) + "\n0,zero,pm,0.5,a,b,c\n",
            encoding="utf-8",
        )
        with pytest.raises(FormatError, match="2"):
            read_results(path)

    def test_empty_results_file_round_trips(self, tmp_path):
        path = tmp_path / "empty.csv"
        write_results(path, [], [], [])
        metric, loaded = read_results(path)
        assert metric == ""
        assert loaded == []


class TestAggregates:
    def test_agreement_layout(self, tmp_path):
        path = tmp_path / "agreement.csv"
        write_agreement(path, ["pm", "ed"], [[100.0, 66.7], [66.7, 100.0]])
        assert path.read_text(encoding="utf-8") == (
            "metric,pm,ed\npm,100.0,66.7\ned,66.7,100.0\n"
        )

    def test_found_best_layout(self, tmp_path):
        path = tmp_path / "fb.csv"
        write_found_best(path, {"pm": 3, "ed": 5}, 7)
        assert path.read_text(encoding="utf-8") == (
            "metric,count,total\npm,3,7\ned,5,7\n"
        )

    def test_scatter_layout(self, tmp_path):
        path = tmp_path / "scatter.csv"
        write_scatter(
            path,
            [ScatterRow(0, 0.5, 3.5, True), ScatterRow(1, 1 / 3, 2.0, False)],
        )
        assert path.read_text(encoding="utf-8") == (
            "mtbt_index,metric_score,mos,is_best\n"
            "0,0.500000,3.5000,true\n"
            "1,0.333333,2.0000,false\n"
        )

    def test_zsweep_layout(self, tmp_path):
        path = tmp_path / "zsweep.csv"
        write_zsweep(path, [(0.0, 9.25), (0.25, 10.5), (1.0, 27.882948)])
        assert path.read_text(encoding="utf-8") == (
            "z,avg_source_length\n0,9.2500\n0.25,10.5000\n1,27.8829\n"
        )
