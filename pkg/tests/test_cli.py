import csv
import io
import json
import subprocess
import sys

import pytest

from toomcook.cli import default_points, fraction_decimal, main
from toomcook.numeric import schoolbook_int

BIG = "--points=10000000000,10000000001,10000000002,10000000003,10000000004"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_mul_examples():
    assert run("mul", "--base", "10", "--kx", "3", "--ky", "3", "--points", "0,1,-1,2,-2", "123", "456") == (0, "56088\n")
    assert run("mul", "--", "-12", "34") == (0, "-408\n")
    assert run("mul", "--", "0x10", "-0x2") == (0, "-32\n")


def test_mul_split_too_small(capsys):
    code, out = run("mul", "--kx", "1", "2", "3")
    assert code == 2 and out == ""
    err = capsys.readouterr().err
    assert "--kx" in err and "SplitTooSmall" in err


@pytest.mark.parametrize("argv, flag, name", [
    (["--base", "1"], "--base", "BaseTooSmall"),
    (["--points", "0,1,1,2,-2"], "--points", "DuplicatePoints"),
    (["--kx", "2", "--ky", "3", "--points", "0,1,-1"], "--points", "WrongPointCount"),
])
def test_config_errors_name_the_flag(argv, flag, name, capsys):
    code, _ = run("theta", *argv)
    assert code == 2
    err = capsys.readouterr().err
    assert flag in err and name in err


def test_bad_operand_and_bad_flag(capsys):
    assert run("mul", "12", "zz")[0] == 2
    assert "y:" in capsys.readouterr().err
    assert run("mul", "--kx", "three", "1", "2")[0] == 2
    assert run("frobnicate")[0] == 2


def test_theta_outputs():
    code, out = run("theta")
    assert code == 0 and "theta    3 (= 6/2) ~ 3.000000" in out
    code, out = run("theta", BIG)
    assert "theta    33 (= 66/2)" in out and "c_x      21" in out
    code, out = run("theta", "--kx", "2", "--ky", "2", "--points", "0,1,-1", "--format", "json")
    doc = json.loads(out)
    assert doc["theta"] == "4" and doc["theta_fraction"] == "4/1" and doc["c"] == "2"


def test_trace_expand_once_matches_worked_example():
    code, out = run("trace", "--expand-once", BIG, "123", "456")
    assert code == 0
    assert out.splitlines() == [
        "100000000020000000003 * 400000000050000000006",
        "100000000040000000006 * 400000000130000000015",
        "100000000060000000011 * 400000000210000000032",
        "100000000080000000018 * 400000000290000000057",
        "100000000100000000027 * 400000000370000000090",
    ]


def test_trace_json():
    code, out = run("trace", "12", "34")
    doc = json.loads(out)
    assert doc["schema"] == "toom-trace/1"
    assert doc["root"]["base_case"] and doc["root"]["children"] == []
    x, y = "-98765432109876543210987", "123456789012345678901234567"
    code, out = run("trace", "--", x, y)
    doc = json.loads(out)
    assert doc["product"] == run("mul", "--", x, y)[1].strip()
    assert json.dumps(doc, indent=1) + "\n" == out


def test_check_passes_and_is_deterministic():
    a = run("check", "--runs", "5", "--seed", "7", "--max-digits", "120")
    b = run("check", "--runs", "5", "--seed", "7", "--max-digits", "120")
    assert a[0] == 0 and a == b
    assert a[1].rstrip().endswith("PASS")


def test_check_json_and_fault():
    code, out = run("check", "--runs", "3", "--format", "json")
    assert code == 0 and json.loads(out)["passed"]
    code, out = run("check", "--runs", "3", "--max-digits", "200", "--inject-fault", "--format", "json")
    doc = json.loads(out)
    assert code == 1 and not doc["passed"]
    assert doc["oracle_mismatches"] > 0
    assert doc["checks"]["piece_i_bound"]["violations"] > 0


def test_check_plot(tmp_path):
    path = tmp_path / "depth.png"
    assert run("check", "--runs", "2", "--max-digits", "200", "--plot", str(path))[0] == 0
    assert path.stat().st_size > 0


def test_bench_csv(tmp_path, capsys):
    code, out = run("bench", "--sizes", "50")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 1
    assert list(rows[0]) == ["size_digits", "toomk_nodes", "toomk_time", "schoolbook_time"]
    path = tmp_path / "bench.png"
    code, out = run("bench", "--ladder", "30", "270", "3", "--plot", str(path))
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["size_digits"]) for r in rows] == [30, 90, 270]
    assert path.stat().st_size > 0
    assert "node-count growth" in capsys.readouterr().err


def test_mul_fuzz_against_schoolbook():
    import random
    rng = random.Random(42)
    for _ in range(25):
        x = rng.getrandbits(rng.randrange(1, 900)) * rng.choice((1, -1))
        y = rng.getrandbits(rng.randrange(1, 900)) * rng.choice((1, -1))
        assert run("mul", "--kx", "2", "--ky", "3", "--", str(x), str(y))[1] == f"{schoolbook_int(10, x, y)}\n"


def test_helpers():
    assert default_points(5) == [0, 1, -1, 2, -2]
    assert default_points(4) == [0, 1, -1, 2]
    from fractions import Fraction
    assert fraction_decimal(Fraction(8, 3), 4) == "2.6666"
    assert fraction_decimal(Fraction(-1, 2), 2) == "-0.50"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "toomcook", "mul", "--", "-7", "6"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "-42\n"


def test_check_parallel_report_matches_serial():
    serial = run("check", "--runs", "4", "--seed", "3", "--max-digits", "150")
    parallel = run("check", "--runs", "4", "--seed", "3", "--max-digits", "150", "--jobs", "2")
    assert serial == parallel and serial[0] == 0
