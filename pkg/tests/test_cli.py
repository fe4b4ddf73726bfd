from __future__ import annotations

import json
import subprocess
import sys

import pytest

from epwcert import cli
from epwcert.registry import REGISTRY
from epwcert.report import FAIL, CheckReport


def test_list(capsys):
    assert cli.main(["list"]) == cli.EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert len(out) == len(REGISTRY) == 41
    assert out[0].startswith("exact.smith")


def test_run_json_schema(tmp_path):
    out = tmp_path / "r.json"
    code = cli.main(["run", "--only", "exact.smith,exterior.pluecker", "--format", "json", "--out", str(out)])
    assert code == cli.EXIT_OK
    data = json.loads(out.read_text())
    assert set(data) == {"version", "started", "checks", "summary"}
    assert [c["id"] for c in data["checks"]] == ["exact.smith", "exterior.pluecker"]
    assert all(set(c) == {"id", "status", "millis", "details"} for c in data["checks"])
    assert data["summary"] == {"pass": 2, "fail": 0, "error": 0}


def test_unknown_id_is_usage_error(capsys):
    assert cli.main(["run", "--only", "no.such-check"]) == cli.EXIT_USAGE
    assert "no.such-check" in capsys.readouterr().err


def test_bad_thread_count():
    assert cli.main(["run", "--only", "exact.smith", "--threads", "0"]) == cli.EXIT_USAGE


def test_failing_check_exits_one(monkeypatch, capsys):
    class Failing:
        def run(self):
            return CheckReport("exact.smith", FAIL, 0, {"failures": ["forced"]})

    monkeypatch.setattr(cli, "lookup", lambda cid: Failing())
    assert cli.main(["run", "--only", "exact.smith"]) == cli.EXIT_FAIL
    assert "forced" in capsys.readouterr().out


def test_exception_becomes_error_report(monkeypatch):
    class Broken:
        def run(self):
            raise RuntimeError("boom")

    monkeypatch.setattr(cli, "lookup", lambda cid: Broken())
    (rep,) = cli.run_suite(["exact.smith"])
    assert rep.status == "error" and "boom" in rep.details["error"]


def test_threads_keep_registry_order(tmp_path):
    out = tmp_path / "r.json"
    ids = "exterior.pluecker,exact.smith,exact.linear-algebra"
    assert cli.main(["run", "--only", ids, "--threads", "2", "--format", "json", "--out", str(out)]) == 0
    assert [c["id"] for c in json.loads(out.read_text())["checks"]] == \
        ["exact.smith", "exact.linear-algebra", "exterior.pluecker"]


def test_uh_orders_dump_bytes(tmp_path):
    out = tmp_path / "uh.json"
    assert cli.main(["dump", "uh-orders", "--out", str(out)]) == 0
    assert out.read_bytes() == b'{"G":32,"Gi":64,"NG":7680,"UH":46080}\n'


@pytest.mark.parametrize("name", ["f6", "igusa-relation", "configurations", "petersen", "incidence-table"])
def test_dumps_are_deterministic(tmp_path, name):
    a, b = tmp_path / "a", tmp_path / "b"
    assert cli.main(["dump", name, "--out", str(a)]) == 0
    assert cli.main(["dump", name, "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes() and a.stat().st_size > 0


def test_f6_dump_round_trips(tmp_path):
    from epwcert.epw import canonical_sextic
    from epwcert.multipoly import loads
    out = tmp_path / "f6.txt"
    cli.main(["dump", "f6", "--out", str(out)])
    assert loads(out.read_text(), 6) == canonical_sextic().f6


def test_figures_are_byte_identical(tmp_path):
    first, second = tmp_path / "one", tmp_path / "two"
    assert cli.main(["dump", "uh-orders", "--out", str(tmp_path / "u"), "--figures", str(first)]) == 0
    assert cli.main(["dump", "uh-orders", "--out", str(tmp_path / "u"), "--figures", str(second)]) == 0
    for name in ("incidence-table.png", "petersen-labeling.png"):
        assert (first / name).read_bytes() == (second / name).read_bytes()


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "epwcert", "run", "--only", "exact.linear-algebra"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("PASS  exact.linear-algebra")
