"""CLI behavior: parsing, output formats, exit codes."""

import csv
import io
import json
import subprocess
import sys

import pytest
from click.testing import CliRunner

from qzeta.cli import cli, parse_complex


@pytest.fixture()
def runner():
    return CliRunner()


class TestComplexParser:
    @pytest.mark.parametrize("text,expected", [
        ("0.5", complex(0.5)),
        ("-2", complex(-2.0)),
        ("0.5+14.1347i", complex(0.5, 14.1347)),
        ("0.5-14.1347i", complex(0.5, -14.1347)),
        ("3i", complex(0.0, 3.0)),
        ("-1.5e-3+2.5e2i", complex(-0.0015, 250.0)),
    ])
    def test_accepts(self, text, expected):
        assert parse_complex(text) == expected

    @pytest.mark.parametrize("text", ["", "i", "1+i", "1++2i", "garbage",
                                      "1 + 2i", "2i+1"])
    def test_rejects(self, text):
        import click

        with pytest.raises(click.UsageError):
            parse_complex(text)


class TestEval:
    def test_json_deterministic(self, runner):
        args = ["eval", "--s", "0.5+1i", "--q", "0.97", "--json"]
        outs = []
        for _ in range(2):
            res = runner.invoke(cli, args)
            assert res.exit_code == 0, res.output
            outs.append(json.loads(res.output.strip()))
        for rec in outs:
            rec.pop("wall_time_ms")
        assert outs[0] == outs[1]

    def test_csv_columns(self, runner):
        res = runner.invoke(cli, ["eval", "--s", "2", "--q", "0.5", "--csv"])
        assert res.exit_code == 0
        rows = list(csv.reader(io.StringIO(res.output)))
        assert rows[0] == ["s_re", "s_im", "q", "method", "terms",
                           "value_re", "value_im", "err", "time_ms"]
        assert float(rows[1][5]) == pytest.approx(0.68600847218987209,
                                                  abs=1e-10)

    def test_pole_exit_code_and_stderr_json(self, runner):
        res = runner.invoke(cli, ["eval", "--s", "1", "--q", "0.5"])
        assert res.exit_code == 2

    def test_closed_method(self, runner):
        res = runner.invoke(cli, ["eval", "--s", "-3", "--q", "0.9",
                                  "--method", "closed", "--json"])
        body = json.loads(res.output.strip())
        assert body["value_re"] == pytest.approx(0.0095803479360114855)


class TestOtherCommands:
    def test_bern(self, runner):
        res = runner.invoke(cli, ["bern", "--k", "6"])
        assert res.exit_code == 0
        assert "1/42" in res.output

    def test_qbern(self, runner):
        res = runner.invoke(cli, ["qbern", "--m", "1", "--q", "0.5"])
        assert res.exit_code == 0
        assert "0.557304959111" in res.output

    def test_sweep_with_extrapolation(self, runner):
        res = runner.invoke(cli, ["sweep", "--s", "2", "--q-grid",
                                  "0.9,0.95,0.975,0.9875", "--extrapolate",
                                  "--order", "3"])
        assert res.exit_code == 0
        assert "extrapolated" in res.output
        assert "1.6449340" in res.output

    def test_reproduce_single(self, runner):
        res = runner.invoke(cli, ["reproduce", "--id", "zhalf-1e5",
                                  "--accumulator", "double-double"])
        assert res.exit_code == 0
        assert "ok " in res.output

    def test_verify_em(self, runner):
        res = runner.invoke(cli, ["verify", "--suite", "em"])
        assert res.exit_code == 0
        assert "PASS" in res.output and "FAIL" not in res.output

    def test_verify_failure_exit_code(self, runner):
        res = runner.invoke(cli, ["verify", "--suite", "em",
                                  "--tol-override", "zeta-em(1/2)=1e-30"])
        assert res.exit_code == 1


class TestEntryPointExitCodes:
    def test_usage_error_is_64(self):
        proc = subprocess.run(
            [sys.executable, "-m", "qzeta.cli", "eval", "--s", "oops",
             "--q", "0.5"], capture_output=True, text=True)
        assert proc.returncode == 64

    def test_pole_is_2_with_machine_readable_stderr(self):
        proc = subprocess.run(
            [sys.executable, "-m", "qzeta.cli", "eval", "--s", "1",
             "--q", "0.5"], capture_output=True, text=True)
        assert proc.returncode == 2
        payload = json.loads(proc.stderr.strip())
        assert payload["error"] == "pole_proximity"
        assert payload["pole"]["a"] == 1
