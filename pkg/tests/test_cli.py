import json
import subprocess
import sys

import jsonschema
import pytest

from hypershaf.cli import load_schema, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def check(doc, name):
    jsonschema.validate(doc, load_schema(name))


def test_bounds_part_i(capsys):
    doc = run_json(capsys, "bounds", "--field", "Q", "--S", "{2}", "--genus", "1", "--part", "i")
    check(doc, "bounds")
    lo = doc["results"]["i"]["log10"]["lo"]
    assert lo.startswith("674.058238637208307197105")


def test_bounds_all_lists_skipped(capsys):
    doc = run_json(capsys, "bounds", "--S", "2", "--genus", "1", "--part", "all")
    check(doc, "bounds")
    assert set(doc["skipped"]) == {"ii", "corollary", "omega-gy", "omega-evgy", "propeff"}
    assert {"i", "wp", "faltings"} <= set(doc["results"])


def test_bounds_missing_constant_exit_2(capsys):
    code, out, err = run(capsys, "bounds", "--S", "2", "--genus", "1", "--part", "ii")
    assert code == 2 and out == ""
    e = json.loads(err)
    check(e, "error")
    assert e["exit_code"] == 2 and "c6" in e["error"]


def test_bounds_illustrative(capsys):
    doc = run_json(capsys, "bounds", "--S", "2", "--genus", "1", "--part", "ii", "--illustrative-constants")
    check(doc, "bounds")
    assert "illustrative" in json.dumps(doc)


def test_unsupported_field_exit_3(capsys):
    code, _, err = run(capsys, "extend-pid", "--field", "Q(sqrt(5))")
    assert code == 3 and json.loads(err)["exit_code"] == 3


def test_extend_pid(capsys):
    doc = run_json(capsys, "extend-pid", "--field", "Q(sqrt(-5))")
    check(doc, "extend-pid")
    assert len(doc["added"]) == 1 and "2" in json.dumps(doc["added"][0])


def test_disc(capsys):
    doc = run_json(capsys, "disc", "--poly", "x^3 - x", "--genus", "1")
    check(doc, "disc")
    assert doc["delta"] == "64" and doc["delta_factorization"] == [[2, 6]] and doc["routes_agree"]


def test_disc_bad_poly_exit_2(capsys):
    code, _, _ = run(capsys, "disc", "--poly", "x^^3", "--genus", "1")
    assert code == 2


def test_reduce_modes(capsys):
    doc = run_json(capsys, "reduce", "--poly", "x^3 + 5*x^2 + x + 1")
    check(doc, "reduce")
    assert doc["tau"] == "-2"
    doc = run_json(capsys, "reduce", "--delta", str(2**40), "--S", "2", "--genus", "1")
    check(doc, "reduce")
    assert doc["omega"] == "1/8" and doc["delta"] == "16"
    doc = run_json(capsys, "reduce", "--poly", "x^3 - 6*x^2 + 11*x - 6", "--S", "2", "--genus", "1", "--canonical")
    check(doc, "reduce")
    assert doc["record"]["f"] == ["0", "-1", "0", "1"]
    doc = run_json(capsys, "reduce", "--form", "x^3 + 5*x^2*y + 10*x*y^2 + 11*y^3")
    check(doc, "reduce")


def test_sunit(capsys):
    doc = run_json(capsys, "sunit", "--S", "2", "--height-bound", "log 4")
    check(doc, "sunit")
    assert {(s["x"], s["y"]) for s in doc["solutions"]} == {("2", "-1"), ("-1", "2"), ("1/2", "1/2")}
    assert run_json(capsys, "sunit", "--S", "2", "--height-bound", "1.4")["count"] == 3


def test_enumerate_and_catalog(capsys, tmp_path):
    out = tmp_path / "c.jsonl"
    doc = run_json(capsys, "enumerate", "--genus", "1", "--S", "2", "--box", "6", "-o", str(out))
    check(doc, "enumerate")
    lines = out.read_text().splitlines()
    check(json.loads(lines[0]), "catalog_header")
    for ln in lines[1:]:
        check(json.loads(ln), "catalog_record")
    cat = run_json(capsys, "catalog", "-i", str(out), "--genus", "1", "--primes", "2")
    check(cat, "catalog")
    assert cat["count"] == len(lines) - 1


def test_enumerate_stdout_is_byte_identical(capsys):
    a = run(capsys, "enumerate", "--genus", "1", "--S", "2", "--box", "5")
    b = run(capsys, "enumerate", "--genus", "1", "--S", "2", "--box", "5", "--jobs", "2")
    assert a[0] == b[0] == 0 and a[1] == b[1]


def test_resource_limit_exit_4(capsys, monkeypatch):
    monkeypatch.setenv("HYPERSHAF_MAX_GRID", "10")
    code, _, err = run(capsys, "enumerate", "--genus", "1", "--S", "2", "--box", "50")
    assert code == 4 and json.loads(err)["exit_code"] == 4


def test_verify_laws(capsys):
    doc = run_json(capsys, "verify-laws", "--trials", "10", "--seed", "1")
    check(doc, "verify-laws")
    assert doc["ok"] and "_seconds" not in doc


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "bounds")[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    cfg = tmp_path / "cfg"
    cfg.write_text("precision = 20\n")
    assert run(capsys, "--config", str(cfg), "bounds", "--genus", "1")[0] == 2
    assert run(capsys, "--config", str(tmp_path / "missing"), "bounds", "--genus", "1")[0] == 2


def test_pretty_output(capsys):
    code, out, _ = run(capsys, "--pretty", "disc", "--poly", "x^3 - x", "--genus", "1")
    assert code == 0 and "64" in out
    with pytest.raises(json.JSONDecodeError):
        json.loads(out)


def test_module_entry_point():
    p = subprocess.run(
        [sys.executable, "-m", "hypershaf", "disc", "--poly", "x^3 + 1", "--genus", "1"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert json.loads(p.stdout)["delta"] == "-432"
