import csv
import json

from chen3.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestChen:
    def test_count_and_csv(self, capsys, tmp_path):
        csv_path = tmp_path / "chen.csv"
        code, out, _ = run(capsys, "chen", "--bound", "50", "--csv", str(csv_path))
        assert code == 0
        report = json.loads(out)
        assert report["payload"]["result"]["count"] == 14
        with open(csv_path) as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 14
        assert rows[0]["p"] == "2"

    def test_timestamp_isolated(self, capsys):
        code, out, _ = run(capsys, "chen", "--bound", "30")
        report = json.loads(out)
        assert "timestamp" in report and "timestamp" not in report["payload"]

    def test_payload_deterministic(self, capsys):
        _, out1, _ = run(capsys, "chen", "--bound", "100")
        _, out2, _ = run(capsys, "chen", "--bound", "100")
        p1 = json.loads(out1)["payload"]
        p2 = json.loads(out2)["payload"]
        assert p1 == p2


class TestExitCodes:
    def test_unknown_flag(self, capsys):
        code, _, _ = run(capsys, "chen", "--bogus", "1")
        assert code == 2

    def test_domain_error(self, capsys):
        code, _, err = run(capsys, "goldbach", "--n", "10")
        assert code == 2 and "error" in err

    def test_rosser_sandwich_clean(self, capsys):
        code, out, _ = run(capsys, "rosser", "--D", "100", "--sign", "+",
                           "--sandwich-limit", "500")
        assert code == 0
        res = json.loads(out)["payload"]["result"]
        assert res["sandwich_failures"] == []


class TestSubcommands:
    def test_goldbach_single(self, capsys):
        code, out, _ = run(capsys, "goldbach", "--n", "33")
        assert code == 0
        assert json.loads(out)["payload"]["result"]["count"] == 21

    def test_goldbach_survey(self, capsys):
        code, out, _ = run(capsys, "goldbach", "--n", "9", "--hi", "99")
        assert code == 0
        assert json.loads(out)["payload"]["result"]["all_ok"]

    def test_ssum(self, capsys):
        code, out, _ = run(capsys, "ssum", "--n", "3000", "--alpha", "1/7")
        assert code == 0
        res = json.loads(out)["payload"]["result"]
        assert res["abs"] > 0

    def test_selberg(self, capsys):
        code, out, _ = run(capsys, "selberg", "--stage", "1", "--M", "5",
                           "--W", "2", "--n", "100000")
        assert code == 0
        res = json.loads(out)["payload"]["result"]
        assert res["qf_equals_inv_G1"]

    def test_arcs_seeded(self, capsys):
        _, out1, _ = run(capsys, "arcs", "--n", "10000", "--samples", "5",
                         "--seed", "3")
        _, out2, _ = run(capsys, "arcs", "--n", "10000", "--samples", "5",
                         "--seed", "3")
        assert json.loads(out1)["payload"] == json.loads(out2)["payload"]

    def test_pollard(self, capsys):
        code, out, _ = run(capsys, "pollard", "--N", "101", "--densities",
                           "0.6", "0.6", "0.6", "--seed", "1")
        assert code == 0
        assert json.loads(out)["payload"]["result"]["ok"]

    def test_transfer(self, capsys):
        code, out, _ = run(capsys, "transfer", "--n", "9999")
        assert code == 0
        rep = json.loads(out)["payload"]["result"]
        assert rep["raw_triple_sum_positive"]
