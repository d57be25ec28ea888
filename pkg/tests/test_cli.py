import json
import math

import pytest

from sumsieve.cli import main, parse_int_set, parse_selector
from sumsieve.primes import And, Interval, MinValue, ResidueClass


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run_cli(capsys, *argv)
    return code, json.loads(out)


class TestParsing:
    def test_int_set_forms(self, tmp_path):
        assert parse_int_set("3,1,2").elements == (1, 2, 3)
        assert parse_int_set("5..8").elements == (5, 6, 7, 8)
        path = tmp_path / "vals.txt"
        path.write_text("4\n9\n2\n")
        assert parse_int_set(f"@{path}").elements == (2, 4, 9)

    def test_selector_grammar(self):
        assert parse_selector("ap:1,4") == ResidueClass(1, 4)
        assert parse_selector("interval:10,40") == Interval(10.0, 40.0)
        assert parse_selector("min:97") == MinValue(97.0)
        sel = parse_selector("and(interval:5,100;ap:3,4)")
        assert isinstance(sel, And) and len(sel.parts) == 2


class TestCommands:
    def test_decompose_example(self, capsys):
        code, doc = run_json(capsys, "decompose", "--set", "0,1,2,3")
        assert code == 0
        assert doc["schema"] == 1
        assert doc["result"]["decomposable"] is True
        a, b = doc["result"]["witness"]
        sums = sorted({x + y for x in a for y in b})
        assert sums == [0, 1, 2, 3]

    def test_decompose_indecomposable(self, capsys):
        code, doc = run_json(capsys, "decompose", "--set", "0,1,3")
        assert code == 0
        assert doc["result"]["decomposable"] is False

    def test_smooth_count_example(self, capsys):
        code, doc = run_json(capsys, "smooth-count", "--x", "100", "--y", "3")
        assert code == 0
        assert doc["result"]["psi"] == 20

    def test_ruzsa_example(self, capsys):
        code, doc = run_json(capsys, "ruzsa", "--a", "0,1", "--b", "0,1", "--c", "0,1")
        assert code == 0
        assert doc["result"] == {"lhs": 16, "rhs": 27, "holds": True}

    def test_dickman(self, capsys):
        code, doc = run_json(capsys, "dickman", "--u", "2")
        assert code == 0
        assert doc["result"]["rho"] == pytest.approx(1 - math.log(2), abs=1e-12)

    def test_sieve_bound_invalid_gives_exit_two(self, capsys):
        code, doc = run_json(
            capsys,
            "sieve-bound", "--kind", "larger", "--set", "1..100",
            "--selector", "interval:2,50", "--n-limit", "100", "--limit", "10000",
        )
        assert code == 2
        assert doc["result"]["valid"] is False

    def test_sieve_bound_valid(self, capsys):
        code, doc = run_json(
            capsys,
            "sieve-bound", "--kind", "larger", "--set", "2,4,8,16,32",
            "--selector", "interval:2,2000", "--n-limit", "32", "--limit", "10000",
        )
        assert code == 0
        assert doc["result"]["valid"] is True
        assert doc["result"]["bound"] >= 5

    def test_error_exit_one(self, capsys):
        code, doc = run_json(capsys, "dickman", "--u", "-3")
        assert code == 1
        assert doc["error"]["type"] == "DomainError"

    def test_check_genthm_strict_honest(self, capsys):
        code, doc = run_json(
            capsys,
            "check-genthm", "--s", "1,2,3,4,6,8,9,12,16,18,24,27,32,36,48,54,64,72,81,96",
            "--x", "100", "--selector", "interval:3,50", "--profile", "strict",
            "--limit", "10000",
        )
        assert code == 2  # hypotheses fail honestly at this scale
        assert doc["result"]["context"]["ps_star_empty"] is True
        assert doc["profile"] == "strict"

    def test_verify_all_zero_budget(self, capsys):
        code, doc = run_json(capsys, "verify-all", "--budget", "0")
        assert code == 0
        assert all(r["status"] == "skipped" for r in doc["result"]["rows"])

    def test_verify_all_small(self, capsys):
        code, doc = run_json(capsys, "verify-all", "--budget", "60", "--cases", "2")
        assert code == 0
        statuses = {r["name"]: r["status"] for r in doc["result"]["rows"]}
        assert all(s in ("pass", "skipped") for s in statuses.values())
        assert sorted(statuses) == list(statuses)


class TestReportDiscipline:
    def test_byte_identical_modulo_elapsed(self, capsys):
        _, out1 = run_cli(capsys, "--seed", "7", "smooth-count", "--x", "1000", "--y", "7")
        _, out2 = run_cli(capsys, "--seed", "7", "smooth-count", "--x", "1000", "--y", "7")
        doc1, doc2 = json.loads(out1), json.loads(out2)
        doc1.pop("elapsed_ms")
        doc2.pop("elapsed_ms")
        assert json.dumps(doc1, sort_keys=True) == json.dumps(doc2, sort_keys=True)

    def test_params_echoed(self, capsys):
        _, doc = run_json(capsys, "tuple-count", "--x", "1000", "--y", "10",
                          "--shifts", "0,2")
        assert doc["params"] == {"x": 1000, "y": 10, "shifts": [0, 2]}

    def test_csv_output(self, capsys):
        code, out = run_cli(
            capsys, "--output", "csv", "dickman", "--table", "0,2,0.5"
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "log_rho,rho,u"
        assert len(lines) == 6

    def test_plain_output(self, capsys):
        code, out = run_cli(capsys, "--output", "plain", "smooth-count",
                            "--x", "100", "--y", "3")
        assert code == 0
        assert "psi: 20" in out

    def test_config_file(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("command=smooth-count\nx=100\ny=3\n")
        code, doc = run_json(capsys, "--config", str(cfg))
        assert code == 0
        assert doc["result"]["psi"] == 20

    def test_config_overridden_by_argv(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("command=smooth-count\nx=100\ny=3\n")
        code, doc = run_json(capsys, "--config", str(cfg), "smooth-count",
                             "--x", "10", "--y", "2")
        assert code == 0
        assert doc["result"]["psi"] == 4
