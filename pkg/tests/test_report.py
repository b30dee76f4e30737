import json
import math

import pytest

from truth_belief import make_distribution
from truth_belief.exceptions import ParseError
from truth_belief.report import (
    RunReport,
    dump_distribution,
    file_digest,
    format_number,
    load_distribution,
)


@pytest.mark.parametrize(
    "value, text",
    [
        (1.0, "1"),
        (0.0, "0"),
        (0.42, "0.42"),
        (0.6931471805599453, "0.6931471805599453"),
        (math.inf, "+inf"),
        (1e300, "1e+300"),
        (-2.0, "-2"),
    ],
)
def test_format_number(value, text):
    assert format_number(value) == text


def test_format_number_for_csv():
    assert format_number(math.inf, "inf") == "inf"
    assert format_number(-math.inf, "inf") == "-inf"


class TestLoadDistribution:
    def test_json(self, tmp_path):
        path = tmp_path / "x.json"
        path.write_text('{"labels": ["a", "b"], "probs": [0.3, 0.7]}')
        d = load_distribution(path)
        assert d.labels == ("a", "b")
        assert d.probs.tolist() == pytest.approx([0.3, 0.7])

    def test_json_default_labels(self, tmp_path):
        path = tmp_path / "x.json"
        path.write_text('{"probs": [0.5, 0.5, 0]}')
        assert load_distribution(path).labels == ("s0", "s1", "s2")

    def test_csv(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("label,prob\nrain,0.25\nsun,0.75\n")
        d = load_distribution(path)
        assert d.labels == ("rain", "sun")
        assert d.probs.tolist() == [0.25, 0.75]

    def test_dump_and_load(self, tmp_path, skewed_coin):
        path = tmp_path / "coin.json"
        dump_distribution(path, skewed_coin)
        assert load_distribution(path) == skewed_coin

    def test_normalize(self, tmp_path):
        path = tmp_path / "x.json"
        path.write_text('{"probs": [1, 3]}')
        with pytest.raises(ParseError, match="^probs: "):
            load_distribution(path)
        assert load_distribution(path, normalize=True).probs.tolist() == [0.25, 0.75]

    @pytest.mark.parametrize(
        "text, field",
        [
            ("{not json", "json"),
            ("[0.5, 0.5]", "json"),
            ('{"labels": ["a"]}', "probs"),
            ('{"probs": []}', "probs"),
            ('{"probs": [0.5, "half"]}', "probs[1]"),
            ('{"probs": [0.5, true]}', "probs[1]"),
            ('{"labels": ["a", "a"], "probs": [0.5, 0.5]}', "labels"),
            ('{"labels": ["a"], "probs": [0.5, 0.5]}', "labels"),
            ('{"labels": "ab", "probs": [0.5, 0.5]}', "labels"),
            ('{"probs": [1.5, -0.5]}', "probs"),
        ],
    )
    def test_malformed_json(self, tmp_path, text, field):
        path = tmp_path / "x.json"
        path.write_text(text)
        with pytest.raises(ParseError) as info:
            load_distribution(path)
        assert info.value.field == field

    def test_malformed_csv(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("name,p\na,1\n")
        with pytest.raises(ParseError) as info:
            load_distribution(path)
        assert info.value.field == "header"

        path.write_text("label,prob\na,0.5\nb,lots\n")
        with pytest.raises(ParseError) as info:
            load_distribution(path)
        assert info.value.field == "row 2 prob"

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError) as info:
            load_distribution(tmp_path / "absent.json")
        assert info.value.field == "path"


class TestRunReport:
    def test_round_trip_with_infinity(self):
        report = RunReport(
            command="compute",
            q_values=[0.5],
            results=[{"quantity": "complexity", "value": math.inf}],
            tool_version="0.1.0",
            seed=7,
        )
        text = report.to_json()
        assert '"value": "+inf"' in text
        assert text.endswith("\n")
        assert RunReport.from_json(text) == report

    def test_inputs_are_hashed(self, tmp_path, fair_coin):
        path = tmp_path / "x.json"
        dump_distribution(path, fair_coin)
        report = RunReport(command="compute")
        report.add_input("x", path)
        report.add_input("y", None)
        assert report.inputs == {"x": {"path": str(path), "sha256": file_digest(path)}}
        assert len(report.inputs["x"]["sha256"]) == 64

    def test_deterministic_text(self):
        a = RunReport(command="verify", suite_outcomes=[{"name": "b", "passed": True}])
        b = RunReport(command="verify", suite_outcomes=[{"passed": True, "name": "b"}])
        assert a.to_json() == b.to_json()

    def test_failures(self):
        report = RunReport(
            command="verify",
            suite_outcomes=[{"name": "a", "passed": True}, {"name": "b", "passed": False}],
        )
        assert [o["name"] for o in report.failures] == ["b"]

    def test_write(self, tmp_path):
        path = tmp_path / "report.json"
        RunReport(command="sweep").write(path)
        assert json.loads(path.read_text())["command"] == "sweep"

    @pytest.mark.parametrize("text", ["{oops", "[]", '{"command": "x", "colour": "red"}'])
    def test_malformed(self, text):
        with pytest.raises(ParseError) as info:
            RunReport.from_json(text)
        assert info.value.field == "report"
