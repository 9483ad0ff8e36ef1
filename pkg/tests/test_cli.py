import json
import subprocess
import sys
from pathlib import Path

import pytest

from degen import fixtures as fx
from degen.cli import main
from degen.serialize import dumps

DATA = Path(__file__).resolve().parent.parent / "data" / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_validate_exit_codes(capsys):
    code, out, _ = run(capsys, "validate", DATA / "f2_p3.json")
    assert code == 0 and out.splitlines()[-1] == "valid"
    code, out, _ = run(capsys, "validate", DATA / "f4_printed_p3.json")
    assert code == 1 and out.splitlines()[-1] == "invalid: A5 A8"
    code, _, err = run(capsys, "validate", DATA / "missing.json")
    assert code == 2 and err.startswith("error:")


def test_validate_json(capsys):
    code, out, _ = run(capsys, "validate", "--json", DATA / "f5_second_printed_p3.json")
    doc = json.loads(out)
    assert code == 1 and not doc["valid"]
    assert [a["axiom"] for a in doc["axioms"] if a["status"] == "fail"] == ["G7"]


def test_bad_input_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, _, err = run(capsys, "validate", bad)
    assert code == 2 and "invalid JSON" in err
    doc = json.loads((DATA / "f2_p3.json").read_text())
    doc["simple"]["r"] = -1
    bad.write_text(json.dumps(doc))
    code, _, err = run(capsys, "validate", bad)
    assert code == 2 and "$.simple.r" in err
    code, _, err = run(capsys, "validate", DATA / "frobenius_cover_p3.json")
    assert code == 2


def test_realize(capsys):
    code, out, _ = run(capsys, "realize", "--dot", DATA / "f2_p3.json")
    assert code == 0 and "b1=2" in out and out.count('"X1" -- "X2"') == 3
    code, out, _ = run(capsys, "realize", DATA / "f5_p3.json")
    doc = json.loads(out)
    assert code == 0
    assert doc["conservation"] == {"expected": 10, "realized": 10, "ok": True, "diagnostics": []}
    code, _, err = run(capsys, "realize", DATA / "f5_second_printed_p3.json")
    assert code == 1 and "G7" in err


def test_realize_figure(capsys, tmp_path):
    png = tmp_path / "f2.png"
    code, _, _ = run(capsys, "realize", DATA / "f2_p3.json", "--figure", png)
    assert code == 0 and png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_render(capsys, tmp_path):
    code, out, _ = run(capsys, "render", DATA / "f3_p3.json")
    assert code == 0 and out.startswith('graph "f3_p3"')
    png = tmp_path / "f5.png"
    code, out, _ = run(capsys, "render", DATA / "f5_p3.json", "--figure", png)
    assert code == 0 and "base_genus=4" in out and png.exists()
    png = tmp_path / "f2.png"
    code, _, _ = run(capsys, "render", DATA / "f2_p3.json", "--figure", png)
    assert code == 0 and png.exists()


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--p", 3, "--vertices", 2, "--count")
    assert code == 0 and out.strip() == "183"
    code, out, _ = run(capsys, "enumerate", "--p", 3, "--vertices", 1, "--max-m", 1)
    lines = out.splitlines()
    assert code == 0 and lines and all(json.loads(x)["prime_context"]["p"] == 3 for x in lines)
    code, out, _ = run(capsys, "enumerate", "--p", 3, "--vertices", 0, "--count")
    assert code == 0 and out.strip() == "0"
    code, out, _ = run(capsys, "enumerate", "--p", 3, "--vertices", 1, "--max-m", 1, "--double", "--count")
    assert code == 0 and int(out) > 0


@pytest.mark.parametrize("argv", [
    ["enumerate", "--p", "3", "--vertices", "-1"],
    ["enumerate", "--p", "4", "--vertices", "1"],
    ["enumerate", "--p", "3", "--vertices", "1", "--max-t", "0"],
])
def test_enumerate_bad_bounds(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["enumerate", "--p", "3", "--vertices", "many"])
    assert info.value.code == 2


def test_orbit(capsys, tmp_path):
    code, out, _ = run(capsys, "orbit", DATA / "frobenius_cover_p3.json")
    assert code == 0 and out.startswith("orbit size 2")
    path = tmp_path / "f2c.json"
    path.write_text(dumps(*fx.f2_concrete(3)))
    code, out, _ = run(capsys, "orbit", "--json", path)
    assert code == 0 and json.loads(out)["size"] == 2
    code, out, _ = run(capsys, "orbit", "--frobenius", 9, path)
    assert code == 0 and out.startswith("orbit size 1")
    code, _, err = run(capsys, "orbit", "--frobenius", 6, path)
    assert code == 2 and "not a power" in err


def test_equivariance(capsys):
    code, out, _ = run(capsys, "equivariance", DATA / "frobenius_cover_p3.json")
    assert code == 0 and out.strip() == "1/1 commuting squares"
    code, out, _ = run(capsys, "equivariance", "--random", 5, "--p", 5, "--json")
    assert code == 0 and json.loads(out) == {"checked": 5, "failed": []}
    assert run(capsys, "equivariance")[0] == 2
    assert run(capsys, "equivariance", "--random", 2)[0] == 2
    assert run(capsys, "equivariance", DATA / "f2_p3.json")[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "degen", "validate", str(DATA / "f1_p5.json")],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.strip().endswith("valid")
