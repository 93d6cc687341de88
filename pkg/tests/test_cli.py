import json
import os
import subprocess
import sys

import pytest

from wreathbrauer.cli import SCHEMA_VERSION, ReportDocument, main
from wreathbrauer.errors import ParseError
from wreathbrauer.modrep import MAX_DIM_ENV


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def strip_timings(text):
    doc = json.loads(text)
    doc.pop("timings")
    for v in doc["result"].get("verdicts", []):
        v.get("details", {}).pop("timings", None)
    return doc


def test_report_round_trip():
    doc = ReportDocument(["wreath-brauer", "catalog", "list"], {"entries": [1, {"a": None}]}, {"x": 0.5})
    again = ReportDocument.from_json(doc.to_json())
    assert again == doc and again.to_json() == doc.to_json()
    with pytest.raises(ParseError):
        ReportDocument.from_json(json.dumps({"schema_version": SCHEMA_VERSION + 1}))


def test_catalog_list_and_describe(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    ids = {e["id"] for e in json.loads(out)["result"]["entries"]}
    assert code == 0 and {"wreathP-n2", "wreathP-n3", "c4c4-s3", "c8c8-s3"} <= ids
    code, out, _ = run(capsys, "catalog", "describe", "c4c4-s3")
    r = json.loads(out)["result"]
    assert code == 0 and (r["order"], r["sylow2_order"], r["wreathed"]) == (96, 32, True)


def test_catalog_add_from_file(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("WREATH_BRAUER_CATALOG_DIR", str(tmp_path / "user"))
    good = tmp_path / "s4.cat"
    good.write_text("id s4\nexpected_order 24\n(0 1)\n(0 1 2 3)\n")
    code, out, _ = run(capsys, "catalog", "add-from-file", str(good))
    assert code == 0 and json.loads(out)["result"]["added"] == "s4"
    code, out, _ = run(capsys, "catalog", "list")
    assert "s4" in {e["id"] for e in json.loads(out)["result"]["entries"]}
    bad = tmp_path / "bad.cat"
    bad.write_text("id wrong\nexpected_order 25\n(0 1)\n(0 1 2 3)\n")
    code, _, err = run(capsys, "catalog", "add-from-file", str(bad))
    assert code == 2 and "expected 25" in err
    broken = tmp_path / "broken.cat"
    broken.write_text("id x\nexpected_order 2\n(0 1\n")
    code, _, err = run(capsys, "catalog", "add-from-file", str(broken))
    assert code == 4 and "line 3" in err
    code, _, _ = run(capsys, "catalog", "add-from-file", str(tmp_path / "missing.cat"))
    assert code == 4


def test_usage_errors(capsys):
    assert run(capsys, "lemmas", "--n", "1")[0] == 4
    assert run(capsys, "lemmas", "--n", "2", "--filter", "9.9")[0] == 4
    assert run(capsys, "frobnicate")[0] == 4
    assert run(capsys, "verify", "--group", "nope", "--group-prime", "c4c4-s3")[0] == 4
    assert run(capsys, "catalog", "describe")[0] == 4
    assert run(capsys, "ik-check", "--group", "gl2-5", "--threads", "0")[0] == 4


def test_lemma_filter(capsys):
    code, out, _ = run(capsys, "lemmas", "--n", "3", "--filter", "3.4")
    r = json.loads(out)["result"]
    assert code == 0 and r["passed"]
    assert [c["lemma"] for c in r["checks"]] == ["3.4"]
    assert r["checks"][0]["details"]["count"] == 2


def test_lemmas_n2(capsys):
    code, out, _ = run(capsys, "lemmas", "--n", "2")
    r = json.loads(out)["result"]
    assert code == 0 and r["passed"] and r["P_order"] == 32
    lemmas = {c["lemma"] for c in r["checks"]}
    assert {"3.1", "3.2", "3.4", "3.6", "3.8", "classification", "saturation", "2.7", "3.3", "3.7"} <= lemmas


def test_verify_exit_codes(capsys, tmp_path):
    code, _, err = run(capsys, "verify", "--group", "c4c4-s3", "--group-prime", "wreathP-n2")
    assert code == 2 and "fusion" in err
    before = os.environ.get(MAX_DIM_ENV)
    code, _, err = run(capsys, "verify", "--group", "c4c4-s3", "--group-prime", "c4c4-s3", "--max-dim", "100")
    assert code == 3 and "288" in err
    assert os.environ.get(MAX_DIM_ENV) == before, "--max-dim must not outlive the command"
    out = tmp_path / "r.json"
    code, status, _ = run(capsys, "verify", "--group", "wreathP-n2", "--group-prime", "wreathP-n2",
                          "--out", str(out))
    assert code == 0 and "report written" in status
    doc = ReportDocument.from_json(out.read_text())
    assert doc.result["overall"] and doc.result["consistent"]
    assert set(doc.timings) >= {"fusion", "scott", "subgroups", "vertex"}


def test_verify_is_deterministic(capsys, monkeypatch):
    monkeypatch.delenv("WREATH_BRAUER_MAX_DIM", raising=False)
    a = run(capsys, "verify", "--group", "wreathP-n2", "--group-prime", "wreathP-n2")[1]
    b = run(capsys, "verify", "--group", "wreathP-n2", "--group-prime", "wreathP-n2", "--threads", "3")[1]
    da, db = strip_timings(a), strip_timings(b)
    da["command"] = db["command"] = None
    assert da == db


def test_ik_check(capsys):
    code, out, _ = run(capsys, "ik-check", "--group", "c4c4-s3")
    r = json.loads(out)["result"]
    assert code == 0 and r["criterion_holds_everywhere"] is False
    found = [v["ik"]["found"] for v in (x["details"] for x in r["verdicts"])]
    assert found.count(False) == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wreathbrauer", "catalog", "describe", "wreathP-n2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["order"] == 32
