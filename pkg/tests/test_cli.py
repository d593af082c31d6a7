import json

import jsonschema
import pytest

from triquad import cli
from triquad.quadforms import clear_caches


@pytest.fixture(autouse=True)
def fresh_caches():
    clear_caches()
    yield
    clear_caches()


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_json_validates_against_schema(capsys):
    code, out, _ = run(capsys, "classify", "89", "--json")
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, cli.VERDICT_JSON_SCHEMA)
    assert payload["d"] == 89 and payload["type"] == "(2,4)"
    assert payload["h2_kind"] == "exact" and payload["h2_value"] == 8


def test_classify_text(capsys):
    code, out, _ = run(capsys, "classify", "187")
    assert code == 0
    assert "(2,2,2)" in out and "d = 187" in out


def test_bad_input_exits_2(capsys):
    for arg in ("6", "45", "1", "-3", "x"):
        code, _, err = run(capsys, "classify", arg)
        assert code == 2, arg
        assert "error:" in err


def test_ceiling_exits_3(capsys):
    code, _, err = run(capsys, "--ceiling", "100", "classify", "209")
    assert code == 3 and "ceiling" in err


def test_scan_csv(capsys):
    code, out, _ = run(capsys, "scan", "--min", "3", "--max", "100", "--filter", "24")
    assert code == 0
    lines = [l for l in out.splitlines() if l and not l.startswith("#")]
    assert lines[0] == cli.CSV_HEADER
    ds = [int(l.split(",")[0]) for l in lines[1:]]
    assert ds == [33, 57, 89]
    assert all("(2,4)" in l for l in lines[1:])


def test_scan_json(capsys):
    code, out, _ = run(capsys, "scan", "--min", "80", "--max", "90", "--format", "json")
    assert code == 0
    records = [json.loads(l) for l in out.splitlines()]
    assert "summary" in records[-1]
    for rec in records[:-1]:
        rec.pop("seconds")
        jsonschema.validate(rec, cli.VERDICT_JSON_SCHEMA)


def test_scan_bad_range_exits(capsys):
    code, _, _ = run(capsys, "scan", "--min", "50", "--max", "3")
    assert code == 2
    code, _, _ = run(capsys, "--ceiling", "100", "scan", "--min", "3", "--max", "200")
    assert code == 3


def test_quad_queries(capsys):
    code, out, _ = run(capsys, "quad", "--", "-66", "h2")
    assert code == 0 and out.strip() == "8"
    code, out, _ = run(capsys, "quad", "--", "-66", "structure")
    assert code == 0 and out.strip() == "(2, 4)"
    code, out, _ = run(capsys, "quad", "33", "unit")
    assert code == 0 and "23 + 4*sqrt(33)" in out and "norm 1" in out
    code, out, _ = run(capsys, "quad", "33", "structure")
    assert code == 0 and "h = 1, h+ = 2" in out
    code, _, _ = run(capsys, "quad", "12", "h2")
    assert code == 2


def test_cache_roundtrip(tmp_path, capsys):
    cache = tmp_path / "cg.cache"
    code, out1, _ = run(capsys, "--cache", str(cache), "classify", "89", "--json")
    assert code == 0 and cache.exists()
    text = cache.read_text()
    assert any(line.startswith("1|") for line in text.splitlines())
    clear_caches()
    code, out2, _ = run(capsys, "--cache", str(cache), "classify", "89", "--json")
    assert code == 0 and json.loads(out1) == json.loads(out2)


def test_verify_paper(capsys):
    code, out, _ = run(capsys, "verify-paper")
    assert code == 0
    assert "FAIL" not in out
    assert sum("PASS" in l for l in out.splitlines()) == 14
