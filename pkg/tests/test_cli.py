import io
import json
import subprocess
import sys
from contextlib import redirect_stdout

import numpy as np
import pytest

from golden_util import diff, load_cases, check_case, FIXTURES
from star_lebesgue import serialize as ser
from star_lebesgue.cli import main
from star_lebesgue.functional import check_representable
from star_lebesgue.star_algebra import validate


def run(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main([str(a) for a in argv])
    return code, buf.getvalue()


@pytest.mark.parametrize("case", load_cases(), ids=lambda c: c["name"])
def test_golden(case):
    assert check_case(case) == []


def test_diff_detects_changes():
    assert diff({"a": [1.0, 2.0]}, {"a": [1.0, 2.0 + 1e-12]}) == []
    assert diff({"a": [1.0, 2.0]}, {"a": [1.0, 2.1]})
    assert diff({"a": True}, {"a": False})
    assert diff({"a": 1}, {"b": 1})
    assert diff({"rep": [1]}, {"rep": [2]}) == []


def test_decompose_report_values():
    d = FIXTURES / "two_point"
    code, out = run(["decompose", d / "algebra.json", d / "f.json", d / "g.json"])
    assert code == 0
    rep = json.loads(out)
    np.testing.assert_allclose(ser.decode_complex(rep["g_a"], "g_a"), [1, 0], atol=1e-12)
    np.testing.assert_allclose(ser.decode_complex(rep["g_s"], "g_s"), [0, 1], atol=1e-12)


def test_decompose_f_equals_g(tmp_path):
    d = FIXTURES / "matrix_equal"
    code, out = run(["decompose", d / "algebra.json", d / "f.json", d / "g.json"])
    assert code == 0
    assert np.abs(ser.decode_complex(json.loads(out)["g_s"], "g_s")).max() == 0.0


def test_not_positive_embeds_certificate():
    d = FIXTURES / "not_positive"
    code, out = run(["decompose", d / "algebra.json", d / "f.json", d / "g.json"])
    assert code == 3
    cert = json.loads(out)["certificates"]["f"]
    assert cert["is_positive"] is False


def test_verify_zero_functionals(tmp_path):
    d = FIXTURES / "two_point"
    zero = tmp_path / "zero.json"
    zero.write_text(ser.dumps(ser.functional_to_json(ser.functional_from_json({"values": [[0, 0], [0, 0]]}))))
    code, out = run(["verify", d / "algebra.json", zero, zero])
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_malformed_json(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"values": [[1, 0],\n  [0, 0]')
    d = FIXTURES / "two_point"
    code, out = run(["decompose", d / "algebra.json", bad, d / "g.json"])
    assert code == 2
    assert "line 2" in json.loads(out)["error"]


def test_missing_field_and_wrong_length(tmp_path):
    d = FIXTURES / "two_point"
    f = tmp_path / "f.json"
    f.write_text('{"vals": []}')
    code, out = run(["decompose", d / "algebra.json", f, d / "g.json"])
    assert code == 2 and "values" in json.loads(out)["error"]
    f.write_text('{"values": [[1, 0]]}')
    code, _ = run(["decompose", d / "algebra.json", f, d / "g.json"])
    assert code == 2


def test_invalid_algebra(tmp_path):
    doc = json.loads((FIXTURES / "two_point" / "algebra.json").read_text())
    doc["invol"] = [[[0, 0], [0, 0]], [[0, 0], [0, 0]]]
    alg = tmp_path / "alg.json"
    alg.write_text(json.dumps(doc))
    d = FIXTURES / "two_point"
    code, out = run(["decompose", alg, d / "f.json", d / "g.json"])
    assert code == 2
    assert json.loads(out)["validation"]["ok"] is False


def test_generate_matrix(tmp_path):
    code, _ = run(["generate", "matrix", "2", "--k", "3", "--seed", "7", "--out", tmp_path])
    assert code == 0
    alg = ser.algebra_from_json(ser.load_json(tmp_path / "algebra.json"))
    f = ser.functional_from_json(ser.load_json(tmp_path / "functional.json"), alg.dim)
    assert validate(alg).ok
    assert check_representable(alg, f).representable


def test_generate_is_byte_deterministic(tmp_path):
    for sub in ("a", "b"):
        assert run(["generate", "group", "S3", "--k", "2", "--seed", "11", "--out", tmp_path / sub])[0] == 0
    for name in ("algebra.json", "functional.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    assert run(["generate", "function", "4", "--seed", "1"]) == run(["generate", "function", "4", "--seed", "1"])


def test_generate_zero_terms():
    code, out = run(["generate", "function", "3", "--k", "0"])
    assert code == 0
    values = ser.decode_complex(json.loads(out)["functional"]["values"], "values")
    np.testing.assert_array_equal(values, np.zeros(3))


@pytest.mark.parametrize("argv", [
    ["generate", "group", "Q8"],
    ["generate", "matrix", "two"],
    ["generate", "tensor", "2"],
    ["generate", "function", "3", "--k", "-1"],
])
def test_generate_bad_arguments(argv):
    assert run(argv)[0] == 2


def test_tolerance_flag_and_env(monkeypatch):
    d = FIXTURES / "two_point"
    args = ["decompose", d / "algebra.json", d / "f.json", d / "g.json"]
    assert run(args + ["--tolerance", "0.5"])[0] == 2
    assert run(args + ["--tolerance", "0"])[0] == 2
    code, out = run(args + ["--tolerance", "1e-7"])
    assert code == 0 and json.loads(out)["tolerance"] == 1e-7
    monkeypatch.setenv("STAR_LEBESGUE_TOL", "1e-6")
    assert json.loads(run(args)[1])["tolerance"] == 1e-6
    monkeypatch.setenv("STAR_LEBESGUE_TOL", "tiny")
    assert run(args)[0] == 2


def test_out_file(tmp_path):
    d = FIXTURES / "matrix_trace"
    out = tmp_path / "report.json"
    code, text = run(["gns", d / "algebra.json", d / "f.json", "--out", out, "--pretty"])
    assert code == 0 and text == ""
    rep = json.loads(out.read_text())
    assert rep["dim"] == 4
    assert rep["roundtrip_residual"] <= 1e-12


def test_usage_errors():
    assert run([])[0] == 2
    assert run(["decompose"])[0] == 2


def test_module_entry_point():
    d = FIXTURES / "two_point"
    proc = subprocess.run(
        [sys.executable, "-m", "star_lebesgue", "decompose", str(d / "algebra.json"), str(d / "f.json"), str(d / "g.json")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["certificate"]["ok"] is True
