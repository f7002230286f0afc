import io
import json

import pytest

from greenkit.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


@pytest.fixture()
def s3_file(tmp_path):
    f = tmp_path / "s3.grp"
    f.write_text("degree 3\n(0 1)\n(0 1 2)\n")
    return str(f)


def test_frobenius_reports_dimension(s3_file):
    code, out = call("frobenius", s3_file, "1")
    assert code == 0
    assert "dim A(i) = 3" in out


def test_marks_table(s3_file):
    code, out = call("marks", s3_file)
    assert code == 0
    assert out.splitlines() == ["set,0:1,1:2,2:3,3:6", "G/0:1,6,0,0,0", "G/1:2,3,1,0,0",
                                "G/2:3,2,0,2,0", "G/3:6,1,1,1,1"]
    code, out = call("marks", "S3", "--format", "json")
    assert json.loads(out)["marks"][1] == ["3", "1", "0", "0"]


def test_burnside_table():
    code, out = call("burnside", "S3")
    assert code == 0
    assert "1:2,1:2,0:1,1" in out and "1:2,1:2,1:2,1" in out


def test_subgroups():
    code, out = call("subgroups", "C2xC2")
    assert code == 0 and len(out.splitlines()) == 6


def test_check_green_cohomology(tmp_path):
    f = tmp_path / "c2.grp"
    f.write_text("degree 2\n(0 1)\n")
    code, out = call("check-green", "cohomology", str(f), "--prime", "2", "--max-degree", "3")
    assert code == 0, out


@pytest.mark.parametrize("instance", ["burnside", "fixed-points", "end", "convolution"])
def test_check_green_instances(instance):
    assert call("check-green", instance, "S3", "--subgroup", "1")[0] == 0


def test_other_suites():
    assert call("monadicity", "S3", "2")[0] == 0
    assert call("dress-roundtrip", "C2xC2")[0] == 0
    assert call("rectification", "C4", "--field", "fp:5")[0] == 0


def test_exit_codes():
    assert call("marks", "nope")[0] == 2
    assert call("frobenius", "S3", "17")[0] == 2
    assert call("marks", "S3", "--field", "fp:6")[0] == 2
    assert call("bogus")[0] == 2
    assert call("marks", "D6", "--bound", "8")[0] == 3
    assert call("check-green", "cohomology", "D6", "--max-degree", "4")[0] == 3


def test_json_report(tmp_path):
    path = tmp_path / "r.json"
    code, _ = call("frobenius", "S3", "1", "--field", "fp:5", "--json", str(path))
    d = json.loads(path.read_text())
    assert d["schema"] == 1 and d["status"] == "pass" and d["check_count"] == len(d["checks"])
    assert d["field"] == "fp:5" and d["seed"] == 0


def test_json_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    call("monadicity", "S3", "1", "--seed", "9", "--json", str(a))
    call("monadicity", "S3", "1", "--seed", "9", "--json", str(b))
    assert a.read_bytes() == b.read_bytes()
