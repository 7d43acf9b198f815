import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from spectral_chain import errors
from spectral_chain.cli import CLI_ERROR_CODES, error_codes, run

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


def call(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv, stdin=""):
    code, out, err = call(*argv, stdin=stdin)
    assert code == 0, err
    doc = json.loads(out)
    assert doc["schema"] == "spectral-chain/1"
    return doc


def test_invariants_on_nilpotent_jordan():
    doc = call_json("invariants", DATA / "jordan3.json")
    assert doc["ascent"] == doc["descent"] == 3
    for field in ("dim", "c", "c_prime", "k", "uniform_descent_degree", "drazin_index", "essential_ascent", "essential_descent"):
        assert field in doc


def test_invariants_golden_and_deterministic():
    _, out, _ = call("invariants", DATA / "jordan3.json")
    assert out == (GOLDEN / "invariants_jordan3.json").read_text(encoding="utf-8")
    assert out == call("invariants", DATA / "jordan3.json")[1]


def test_stdin_input():
    text = (DATA / "jordan3.json").read_text()
    assert call_json("drazin", "-", stdin=text)["index"] == 3


def test_classify_and_spectrum():
    doc = call_json("classify", DATA / "jordan3.json", "--lambda", "0,0")
    assert doc["pole_order"] == 3 and doc["in_spectrum"]
    doc = call_json("spectrum", DATA / "jordan3.json")
    assert doc["complete"] and doc["region"]["primitives"] == [{"kind": "point", "center": ["0", "0"]}]


def test_spectrum_incomplete():
    doc = call_json("spectrum", DATA / "companion.json")
    assert doc["complete"] is False and "region" not in doc
    code, _, err = call("spectrum", DATA / "companion.json", "--strict")
    assert code == 1 and json.loads(err)["error"]["code"] == "INCOMPLETE_FACTORIZATION"


def test_region_hull_of_circle():
    doc = call_json("region", DATA / "circle.json", "--op", "hull")
    assert doc["result"]["hull"] == {"primitives": [{"kind": "disk", "center": ["0", "0"], "radius": "1"}]}
    assert len(doc["result"]["holes"]) == 1


def test_region_binary_ops(tmp_path):
    disk = tmp_path / "disk.json"
    disk.write_text(json.dumps({"primitives": [{"kind": "disk", "center": ["0", "0"], "radius": "1"}]}))
    assert call_json("region", DATA / "circle.json", "--other", disk, "--op2", "subset")["binary"]["result"] is True
    assert call_json("region", DATA / "circle.json", "--other", disk, "--op2", "pocetna")["binary"]["result"]["passed"]
    diff = call_json("region", disk, "--other", DATA / "circle.json", "--op2", "diff")["binary"]
    assert diff["closed"] is False
    code, _, err = call("region", disk, "--other", DATA / "circle.json", "--op2", "pocetna")
    assert code == 1 and json.loads(err)["error"]["code"] == "PRECONDITION_VIOLATED"
    code, _, _ = call("region", disk, "--op2", "union")
    assert code == 2


def test_derive_with_verification():
    doc = call_json("derive", "--profile", DATA / "forward_shift_profile.json", "--verify", "all")
    derived = {d["kind"]: d["rule"] for d in doc["derived"]}
    assert derived["LD"] == "cor-Dra-1"
    assert doc["verification"]["eta"]["passed"] and doc["verification"]["boundary"]["passed"]
    assert doc["common_hull"] == {"primitives": [{"kind": "disk", "center": ["0", "0"], "radius": "1"}]}


def test_derive_conflict_is_domain_error(tmp_path):
    circle = json.loads((DATA / "circle.json").read_text())
    disk = {"primitives": [{"kind": "disk", "center": ["0", "0"], "radius": "1"}]}
    bad = {"schema": "spectral-chain/1", "spectra": {"su": disk, "TUD": circle, "dsc": {"primitives": circle["primitives"] + [{"kind": "point", "center": ["0", "0"]}]}}}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, _, err = call("derive", "--profile", path)
    assert code == 1 and json.loads(err)["error"]["code"] == "RULE_CONFLICT"
    doc = call_json("derive", "--profile", path, "--lenient")
    assert any(d["code"] == "RULE_CONFLICT" for d in doc["profile"]["diagnostics"])


def test_catalog_commands():
    names = [e["name"] for e in call_json("catalog", "list")["entries"]]
    assert "forward-shift" in names and "primer" in names
    code, out, _ = call("catalog", "validate")
    assert code == 0 and json.loads(out)["passed"]
    assert call_json("catalog", "show", "cesaro")["entry"]["name"] == "cesaro"
    assert call("catalog", "show")[0] == 2
    assert call("catalog", "show", "nope")[0] == 2


def test_render_svg_golden(tmp_path):
    out = tmp_path / "out.svg"
    code, stdout, _ = call("render-svg", DATA / "mixed.json", "-o", out)
    assert code == 0 and stdout == ""
    assert out.read_text(encoding="utf-8") == (GOLDEN / "mixed.svg").read_text(encoding="utf-8")


@pytest.mark.parametrize(
    "argv, stdin, code, err_code",
    [
        (("invariants", "-"), "{not json", 2, "MALFORMED_JSON"),
        (("invariants", "/no/such/file.json"), "", 2, "USAGE_ERROR"),
        (("invariants", "-"), '{"rows": 1}', 2, "INVALID_INPUT"),
        (("invariants", "-"), '{"rows": 1, "cols": 2, "entries": [["1","0"],["2","0"]]}', 1, "NON_SQUARE_MATRIX"),
        (("classify", "-", "--lambda", "x"), (DATA / "jordan3.json").read_text(), 2, "INVALID_INPUT"),
    ],
)
def test_error_exit_codes(argv, stdin, code, err_code):
    got, _, err = call(*argv, stdin=stdin)
    assert got == code
    doc = json.loads(err)
    assert doc["schema"] == "spectral-chain/1" and doc["error"]["code"] == err_code


def test_usage_errors_exit_2():
    assert call()[0] == 2
    assert call("bogus")[0] == 2
    assert call("classify", DATA / "jordan3.json")[0] == 2


def _all_error_classes(cls=errors.SpectralChainError):
    for sub in cls.__subclasses__():
        yield sub
        yield from _all_error_classes(sub)


def test_every_error_has_a_documented_code():
    codes = error_codes()
    for cls in _all_error_classes():
        assert cls.code in codes and codes[cls.code] != cls.__name__
    assert set(CLI_ERROR_CODES) <= set(codes)
    assert call_json("errors")["codes"] == codes


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "spectral_chain", "invariants", str(DATA / "jordan3.json")],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "invariants_jordan3.json").read_text(encoding="utf-8")
