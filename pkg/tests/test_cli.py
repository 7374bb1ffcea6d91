import json
import subprocess
import sys
from pathlib import Path

import pytest

from partition_qseries import MutationLoop, QSeries, Quiver, sum_loop
from partition_qseries.cli import main
from partition_qseries.closed_forms import dynkin_loop

LOOPS = Path(__file__).resolve().parent.parent / "loops"
A3_TEXT = "1 + 2 * q^(3/4) + 1 * q^(4/4) + 2 * q^(7/4) + 2 * q^(8/4) + 4 * q^(11/4) + 5 * q^(12/4)"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def write_loop(tmp_path, q, mutations, phi=None, name="loop.json"):
    loop = MutationLoop.from_normal_form(q, mutations, phi)
    path = tmp_path / name
    path.write_text(json.dumps(loop.to_json()))
    return path


def test_compute_text(capsys):
    code, out, err = run(capsys, "compute", LOOPS / "a3.json", "--cutoff", "3")
    assert code == 0
    assert out.strip() == A3_TEXT
    assert err == ""


def test_compute_verbose_goes_to_stderr(capsys):
    code, out, err = run(capsys, "compute", LOOPS / "a3.json", "--cutoff", "3", "--verbose")
    assert out.strip() == A3_TEXT
    assert "delta: 4" in err and "positive-definite" in err


def test_compute_json_round_trip(capsys):
    code, out, _ = run(capsys, "compute", LOOPS / "d5.json", "--cutoff", "7/2", "--format", "json")
    assert code == 0
    assert QSeries.from_json(json.loads(out)) == sum_loop(dynkin_loop("D5"), "7/2")


def test_not_a_loop(capsys):
    code, out, err = run(capsys, "compute", LOOPS / "not_a_loop.json")
    assert code == 3
    assert out == ""
    assert "[[0, -1], [1, 0]]" in err


@pytest.mark.parametrize(
    "content",
    ["{not json", json.dumps({"quiver": {"n": 2, "arrows": [[1, 1]]}, "steps": []}), json.dumps({"steps": []})],
)
def test_parse_errors(capsys, tmp_path, content):
    path = tmp_path / "bad.json"
    path.write_text(content)
    code, _, err = run(capsys, "compute", path)
    assert code == 2 and err.startswith("error:")


def test_missing_file(capsys, tmp_path):
    assert run(capsys, "compute", tmp_path / "nope.json")[0] == 2


@pytest.mark.parametrize("cutoff", ["1 / 2", "x", "-1"])
def test_bad_cutoff(capsys, cutoff):
    with pytest.raises(SystemExit) as info:
        main(["compute", str(LOOPS / "a3.json"), "--cutoff", cutoff])
    assert info.value.code == 2


def test_bad_dynkin_type(capsys):
    assert run(capsys, "dynkin", "B3")[0] == 2
    assert run(capsys, "square", "A1", "A2")[0] == 2


def test_degenerate(capsys, tmp_path):
    path = write_loop(tmp_path, Quiver.from_arrows(2, [(1, 2)]), [1, 1])
    assert run(capsys, "compute", path)[0] == 4
    assert run(capsys, "info", path)[0] == 4


def test_not_positive(capsys, tmp_path):
    path = write_loop(tmp_path, Quiver.from_arrows(2, [(1, 2)]), [2, 2, 1, 1])
    code, out, err = run(capsys, "compute", path)
    assert code == 5 and out == ""
    assert run(capsys, "info", path)[0] == 5


def test_verify_pentagon_a2(capsys):
    code, out, _ = run(capsys, "verify-pentagon", LOOPS / "a2.json", "--pos", "0", "--cutoff", "10")
    assert code == 0
    assert out.splitlines()[-1] == "EQUAL"


def test_verify_pentagon_four_vertex(capsys):
    code, out, _ = run(
        capsys, "verify-pentagon", LOOPS / "four_vertex.json", "--pos", "1", "--cutoff", "8", "--format", "json"
    )
    data = json.loads(out)
    assert code == 0 and data["equal"]
    assert data["expanded_normal_form"] == {"mutations": [4, 2, 1, 2, 3, 1, 4, 2], "phi": [1, 4, 2, 3]}
    assert QSeries.from_json(data["original"]).agrees_with(QSeries.from_json(data["expanded"]))


def test_verify_pentagon_double_arrow(capsys, tmp_path):
    path = write_loop(tmp_path, Quiver(((0, 2), (-2, 0))), [1, 2])
    assert run(capsys, "verify-pentagon", path, "--pos", "0")[0] == 6
    assert run(capsys, "verify-pentagon", LOOPS / "a3.json", "--pos", "7")[0] == 6


def test_limit(capsys):
    code, out, err = run(capsys, "dynkin", "E6", "--cutoff", "8", "--max-terms", "5")
    assert code == 7 and out == ""


@pytest.mark.parametrize("cutoff", ["0", "25/2"])
def test_check_identities(capsys, cutoff):
    code, out, _ = run(capsys, "check-identities", "--cutoff", cutoff)
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 37
    assert all(line.endswith("PASS") for line in lines)


def test_check_identities_json(capsys):
    code, out, _ = run(capsys, "check-identities", "--cutoff", "4", "--format", "json")
    data = json.loads(out)
    assert data["all_pass"] and data["cutoff"] == "4/1"


def test_dynkin_modes(capsys):
    direct = run(capsys, "dynkin", "D4", "--cutoff", "5")[1]
    closed = run(capsys, "dynkin", "D4", "--cutoff", "5", "--closed-form")[1]
    code, both, err = run(capsys, "dynkin", "D4", "--cutoff", "5", "--both")
    assert direct == closed == both
    assert code == 0 and "EQUAL" in err


def test_square_both_json(capsys):
    code, out, _ = run(capsys, "square", "A3", "A2", "--order", "minus", "--both", "--cutoff", "4", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["equal"]
    assert data["direct"] == data["closed_form"]


def test_info(capsys):
    code, out, _ = run(capsys, "info", LOOPS / "a2_pentagon.json", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["normal_form"] == {"mutations": [2, 1, 2], "phi": [2, 1]}
    assert data["form"]["delta"] == 2
    assert data["form"]["positivity"] == "positive-definite"


def test_jobs_do_not_change_output(capsys):
    one = run(capsys, "dynkin", "D5", "--cutoff", "8", "--format", "json")[1]
    many = run(capsys, "dynkin", "D5", "--cutoff", "8", "--format", "json", "--jobs", "3")[1]
    assert one == many


def test_output_is_byte_stable():
    cmd = [sys.executable, "-m", "partition_qseries", "compute", str(LOOPS / "four_vertex.json"), "--cutoff", "5"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first.startswith(b"1 + ")
