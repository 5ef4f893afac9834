import io
import json
import shutil
import subprocess
import sys

import pytest

from magh.cli import main
from magh.metric import FiniteMetricSpace, cycle_space, random_metric


def run_cli(capsys, monkeypatch, argv, stdin=""):
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_gen_cycle(capsys, monkeypatch):
    code, out, err = run_cli(capsys, monkeypatch, ["gen", "cycle", "4"])
    assert code == 0 and err == ""
    assert FiniteMetricSpace.from_json(out) == cycle_space(4)
    data = json.loads(out)
    assert data["d"][0][1] == "1"


def test_gen_pretty_and_outfile(capsys, monkeypatch, tmp_path):
    target = tmp_path / "space.json"
    code, out, _ = run_cli(
        capsys, monkeypatch, ["gen", "path", "3", "--pretty", "--out", str(target)]
    )
    assert code == 0 and out == ""
    text = target.read_text()
    assert text.startswith("{\n")
    assert FiniteMetricSpace.from_json(text).n == 3


def test_gen_random_seeded(capsys, monkeypatch):
    code, out1, _ = run_cli(capsys, monkeypatch, ["gen", "random", "5", "--seed", "9"])
    assert code == 0
    code, out2, _ = run_cli(capsys, monkeypatch, ["gen", "random", "5", "--seed", "9"])
    assert out1 == out2
    assert FiniteMetricSpace.from_json(out1) == random_metric(5, seed=9)


def test_pipe_gen_to_mx(capsys, monkeypatch):
    _, space_json, _ = run_cli(capsys, monkeypatch, ["gen", "cycle", "4"])
    code, out, _ = run_cli(capsys, monkeypatch, ["mx"], stdin=space_json)
    assert code == 0
    assert json.loads(out) == {"m_x": "3", "witness": [0, 1, 2, 3]}


def test_mx_infinite(capsys, monkeypatch):
    _, space_json, _ = run_cli(capsys, monkeypatch, ["gen", "path", "4"])
    code, out, _ = run_cli(capsys, monkeypatch, ["mx"], stdin=space_json)
    assert code == 0
    assert json.loads(out) == {"m_x": "inf", "witness": None}


def test_certify(capsys, monkeypatch):
    _, space_json, _ = run_cli(capsys, monkeypatch, ["gen", "cycle", "6"])
    code, out, _ = run_cli(
        capsys, monkeypatch, ["certify", "--pair", "0", "3"], stdin=space_json
    )
    assert code == 0
    assert json.loads(out) == {
        "components": 2,
        "distance": "3",
        "mh2_lower_bound": 1,
        "pair": [0, 3],
    }


def test_certify_pair_out_of_range(capsys, monkeypatch):
    _, space_json, _ = run_cli(capsys, monkeypatch, ["gen", "cycle", "4"])
    code, out, err = run_cli(
        capsys, monkeypatch, ["certify", "--pair", "0", "9"], stdin=space_json
    )
    assert code == 2
    assert "out of range" in err


def test_compute_csv(capsys, monkeypatch):
    _, space_json, _ = run_cli(capsys, monkeypatch, ["gen", "cycle", "4"])
    code, out, _ = run_cli(
        capsys,
        monkeypatch,
        ["compute", "--l", "2", "--n-max", "2", "--format", "csv"],
        stdin=space_json,
    )
    assert code == 0
    assert out.splitlines() == ["l,n,betti,torsion", "2,0,0,", "2,1,0,", "2,2,12,"]


def test_compute_table_spectrum(capsys, monkeypatch):
    _, space_json, _ = run_cli(capsys, monkeypatch, ["gen", "path", "3"])
    code, out, _ = run_cli(
        capsys,
        monkeypatch,
        ["compute", "--n-max", "2", "--l-max", "2"],
        stdin=space_json,
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["l", "n", "betti", "torsion"]
    assert lines[1].split() == ["0", "0", "3", "-"]
    # grading 2 at degree 2 carries Z^4
    assert "2  2  4" in out


def test_compute_json_and_explicit_gradings(capsys, monkeypatch):
    _, space_json, _ = run_cli(capsys, monkeypatch, ["gen", "cycle", "4"])
    code, out, _ = run_cli(
        capsys,
        monkeypatch,
        ["compute", "--l", "1,2", "--n-max", "1", "--format", "json"],
        stdin=space_json,
    )
    assert code == 0
    rows = json.loads(out)
    assert [(r["l"], r["n"]) for r in rows] == [("1", 0), ("1", 1), ("2", 0), ("2", 1)]
    assert rows[1] == {"l": "1", "n": 1, "betti": 8, "torsion": []}


def test_compute_threads_match_single(capsys, monkeypatch):
    _, space_json, _ = run_cli(capsys, monkeypatch, ["gen", "cycle", "5"])
    outs = []
    for threads in ("1", "4"):
        code, out, _ = run_cli(
            capsys,
            monkeypatch,
            ["compute", "--n-max", "2", "--threads", threads, "--format", "json"],
            stdin=space_json,
        )
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]


def test_compute_rejects_negative_grading(capsys, monkeypatch):
    _, space_json, _ = run_cli(capsys, monkeypatch, ["gen", "cycle", "4"])
    code, _, err = run_cli(
        capsys, monkeypatch, ["compute", "--l", "-1"], stdin=space_json
    )
    assert code == 2
    assert "negative grading" in err


def test_spectrum(capsys, monkeypatch):
    _, space_json, _ = run_cli(capsys, monkeypatch, ["gen", "path", "3"])
    code, out, _ = run_cli(
        capsys, monkeypatch, ["spectrum", "--n-max", "2"], stdin=space_json
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,l,count"
    assert "0,0,3" in lines
    assert "1,1,4" in lines and "1,2,2" in lines
    assert "2,2,6" in lines and "2,4,2" in lines


def test_verify_single_space(capsys, monkeypatch):
    _, space_json, _ = run_cli(capsys, monkeypatch, ["gen", "cycle", "4"])
    code, out, err = run_cli(
        capsys,
        monkeypatch,
        ["verify", "--check", "d_squared", "--check", "simp_iso", "--in", "-"],
        stdin=space_json,
    )
    assert code == 0 and err == ""
    reports = [json.loads(line) for line in out.splitlines()]
    assert [r["check"] for r in reports] == ["d_squared", "simp_iso"]
    assert all(r["status"] == "pass" for r in reports)


def test_verify_default_suite_exit_zero(capsys, monkeypatch):
    code, out, err = run_cli(
        capsys, monkeypatch, ["verify", "--check", "d_squared", "--n-max", "2"]
    )
    assert code == 0
    assert len(out.splitlines()) == 14


def test_verify_failure_exit_one(capsys, monkeypatch):
    import magh.verify as verify_module
    from magh.frames import is_frame

    monkeypatch.setattr(verify_module, "is_realized_frame", is_frame)
    _, space_json, _ = run_cli(capsys, monkeypatch, ["gen", "cycle", "6"])
    code, out, err = run_cli(
        capsys,
        monkeypatch,
        ["verify", "--check", "tensor_route", "--in", "-"],
        stdin=space_json,
    )
    assert code == 1
    assert "1 of 1 checks failed" in err
    report = json.loads(out.splitlines()[0])
    assert report["status"] == "fail"


def test_bad_input_exit_two(capsys, monkeypatch):
    code, _, err = run_cli(capsys, monkeypatch, ["mx"], stdin="not json or csv")
    assert code == 2
    assert "magh: error:" in err
    code, _, err = run_cli(capsys, monkeypatch, ["mx"], stdin="")
    assert code == 2
    assert "empty input" in err


def test_csv_space_input(capsys, monkeypatch):
    csv_text = cycle_space(4).to_csv()
    code, out, _ = run_cli(capsys, monkeypatch, ["mx"], stdin=csv_text)
    assert code == 0
    assert json.loads(out)["m_x"] == "3"


def test_infile_reading(capsys, monkeypatch, tmp_path):
    path = tmp_path / "c4.json"
    path.write_text(cycle_space(4).to_json())
    code, out, _ = run_cli(capsys, monkeypatch, ["mx", "--in", str(path)])
    assert code == 0
    assert json.loads(out)["witness"] == [0, 1, 2, 3]


def test_console_script_installed():
    assert shutil.which("magh") is not None


def test_subprocess_pipeline():
    gen = subprocess.run(
        [sys.executable, "-m", "magh", "gen", "cycle", "6"],
        capture_output=True,
        text=True,
        check=True,
    )
    mx = subprocess.run(
        [sys.executable, "-m", "magh", "mx"],
        input=gen.stdout,
        capture_output=True,
        text=True,
        check=True,
    )
    assert json.loads(mx.stdout) == {"m_x": "4", "witness": [0, 1, 2, 4]}


def test_version_flag():
    proc = subprocess.run(
        [sys.executable, "-m", "magh", "--version"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip().startswith("magh ")


def test_usage_error_exit_code():
    proc = subprocess.run(
        [sys.executable, "-m", "magh", "frobnicate"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2
