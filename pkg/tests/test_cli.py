import json
import subprocess
import sys

import pytest

from kleinian.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_E8(capsys):
    code, out, _ = run(capsys, "verify", "E8", "--no-timings")
    assert code == 0
    assert out.startswith("E8: PASS")
    assert "null vector (1, 2, 3, 4, 5, 6, 4, 2, 3)" in out


def test_verify_A2_json(capsys):
    code, out, _ = run(capsys, "verify", "A", "2", "--format", "json")
    body = json.loads(out)
    assert code == 0 and body["ok"]
    assert body["profile"]["diagram_match"]["kind"] == "A2~"
    names = [c["name"] for c in body["checks"]]
    assert names[:4] == ["group order", "relations", "invariance", "syzygy"]


def test_degenerate_c_exit_code(capsys):
    code, _, err = run(capsys, "verify", "D", "4", "--c", "1")
    assert code == 2 and "degenerate" in err


def test_rank_flag_and_cyclotomic_c(capsys):
    code, out, _ = run(capsys, "verify", "D", "--r", "6", "--c", "zeta(8)^3", "--no-timings")
    assert code == 0 and out.startswith("D6 c=(zeta(8)^3): PASS")


@pytest.mark.parametrize("argv", [["verify", "E9"], ["verify", "D", "5", "--c", "1/"], ["verify", "A3", "--c", "2"]])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_probe_output(capsys):
    code, out, _ = run(capsys, "probe", "A3", "(1+X)*X")
    assert code == 0
    assert "accepted" in out and "same profile as F: True" in out
    code, out, _ = run(capsys, "probe", "E6", "Y", "--format", "json")
    assert json.loads(out)["accepted"] is False


def test_export_is_byte_stable(capsys, tmp_path):
    files = []
    for i in range(2):
        path = tmp_path / f"p{i}.json"
        assert run(capsys, "export", "profile", "D5", "--c", "1", "--format", "json", "--out", str(path))[0] == 0
        files.append(path.read_bytes())
    assert files[0] == files[1]
    body = json.loads(files[0])
    assert body["diagram_match"]["kind"] == "D5~"
    assert {c["kind"] for c in body["components"]} == {"exceptional", "open"}


def test_export_dot(capsys):
    code, out, _ = run(capsys, "export", "diagram", "E8", "--format", "dot")
    assert code == 0 and 'shape=doublecircle' in out and '"b" [label="b:3"' in out
    code, out, _ = run(capsys, "export", "mckay", "E6", "--format", "dot")
    assert out.count("label=") == 7


def test_export_io_error_names_the_path(capsys, tmp_path):
    bad = tmp_path / "missing" / "x.dot"
    code, _, err = run(capsys, "export", "diagram", "A3", "--format", "dot", "--out", str(bad))
    assert code == 1 and str(bad) in err


def test_verify_all_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "kleinian", "verify", "all", "--no-timings", "--seed", "0"],
        capture_output=True, text=True, timeout=300,
    )
    assert proc.returncode == 0, proc.stdout[-2000:] + proc.stderr[-2000:]
    lines = [l for l in proc.stdout.splitlines() if not l.startswith(" ")]
    heads = [l.split(":")[0] for l in lines[:-1]]
    assert heads[0] == "A2" and heads[-1] == "E8"
    assert lines[-1] == "27/27 targets pass"
