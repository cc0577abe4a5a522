import csv
import io
import json
import subprocess
import sys

import pytest

from radixz.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


@pytest.fixture
def write(tmp_path):
    def _write(name, obj):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(p)
    return _write


def test_digits(capsys):
    assert run_json(capsys, "digits", "twin_dragon")["digits"] == [[-1, 0], [0, 0]]
    assert run_json(capsys, "digits", "two")["digits"] == [[-1], [0]]
    assert run_json(capsys, "digits", "minus_two", "--convention", "u")["digits"] == [[-1], [0]]


def test_digits_identity_is_a_domain_error(capsys, write):
    code, out, err = run(capsys, "digits", write("id.json", {"n": 2, "rows": [[1, 0], [0, 1]]}))
    assert code == 3 and "not a dilation" in err and out == ""


@pytest.mark.parametrize(
    "content, code",
    [("{not json", 2), ({"n": 2, "rows": [[1, 0]]}, 2), ({"rows": [["1/2"]]}, 2), ({"rows": [[1, 1], [1, 1]]}, 3)],
)
def test_input_errors(capsys, write, content, code):
    assert run(capsys, "digits", write("m.json", content))[0] == code


def test_missing_file(capsys):
    assert run(capsys, "digits", "/nonexistent/matrix.json")[0] == 2


def test_pseudodigits(capsys):
    d = run_json(capsys, "pseudodigits", "two")
    assert d["table"]["S"] == [[1]]
    assert "R_upper" in d["bounds"] and "R_upper_decimal" in d["bounds"]
    d = run_json(capsys, "pseudodigits", "minus_two")
    assert d["table"]["S"] == [] and d["table"]["summary"] == "yields radix representation"
    d = run_json(capsys, "pseudodigits", "lagarias_wang")
    assert len(d["table"]["cycles"]) == 2


def test_represent_and_decode(capsys, write):
    d = run_json(capsys, "represent", "minus_two", "1", "--convention", "u")
    assert d["kind"] == "radix" and d["digits"] == [[-1], [-1]]
    d = run_json(capsys, "represent", "twin_dragon", "0,1")
    assert d["kind"] == "pseudo" and d["pseudodigit"] == [0, 1] and d["N"] == 0
    assert run_json(capsys, "represent", "twin_dragon", "--decode", json.dumps(d))["x"] == [0, 1]
    d = run_json(capsys, "represent", "lagarias_wang", "[3, -2, 1, 5]")
    assert run_json(capsys, "represent", "lagarias_wang", "--decode", write("r.json", d))["x"] == [3, -2, 1, 5]


def test_represent_errors(capsys):
    assert run(capsys, "represent", "twin_dragon", "1,2,3")[0] == 2
    assert run(capsys, "represent", "twin_dragon")[0] == 2
    bad = json.dumps({"kind": "radix", "digits": [[1, 0]]})
    assert run(capsys, "represent", "twin_dragon", "--decode", bad)[0] == 2
    assert run(capsys, "represent", "two", "--decode", "{oops")[0] == 2


def test_check(capsys, write):
    d = run_json(capsys, "check", "diag_two")
    assert d["conditions"]["verdict"] == "Inconclusive" and not d["cross_validation"]["yields_radix"]
    d = run_json(capsys, "check", "three_i")
    assert d["conditions"]["verdict"] == "GuaranteedRadix"
    d = run_json(capsys, "check", "twin_dragon")
    assert d["conditions"]["verdict"] == "Inconclusive" and d["conditions"]["jeong_C_in_AU"] is False
    # Jeong's condition holds but a nonzero cycle exists: internal inconsistency
    code, _, err = run(capsys, "check", write("j.json", {"rows": [[3, 2], [1, 3]]}))
    assert code == 4 and "inconsistency" in err


def test_power(capsys):
    assert run_json(capsys, "power", "twin_dragon")["beta"] == 3
    assert run_json(capsys, "power", "twin_dragon", "--threshold", "MuGt2SqrtN")["beta"] == 4
    assert run_json(capsys, "power", "three_i")["beta"] == 1
    assert run_json(capsys, "power", "two")["beta"] == 2
    assert run(capsys, "power", "twin_dragon", "--beta-max", "2")[0] == 3


def parse_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]


def test_atlas(capsys, tmp_path):
    code, out, _ = run(capsys, "atlas", "twin_dragon", "--n-max", "6")
    header, rows = parse_csv(out)
    assert code == 0 and header == ["x1", "x2", "tag"]
    assert sum(r[2] == "radix" for r in rows) == 128
    assert sum(r[2] == "pseudo" for r in rows) == 64
    _, rows = parse_csv(run(capsys, "atlas", "twin_dragon", "--n-max", "0")[1])
    assert rows == [["-1", "0", "radix"], ["0", "0", "radix"], ["0", "1", "pseudo"]]
    _, rows = parse_csv(run(capsys, "atlas", "two", "--n-max", "2")[1])
    assert [int(r[0]) for r in rows if r[1] == "radix"] == list(range(-7, 1))
    out_file = tmp_path / "a.csv"
    assert run(capsys, "atlas", "two", "--n-max", "2", "--out", str(out_file))[0] == 0
    assert out_file.read_text().startswith("x1,tag\n")
    assert run(capsys, "atlas", "two", "--n-max", "-1")[0] == 2


def test_report_round_trip(capsys):
    from radixz.serialize import RunReport, dump

    code, out, _ = run(capsys, "report", "twin_dragon")
    assert code == 0
    assert dump(RunReport.from_dict(json.loads(out)).to_dict()) == out


def test_lattice(capsys, write):
    basis = write("M.json", {"n": 2, "rows": [["1", "1"], ["0", "1"]]})
    d = run_json(capsys, "lattice", basis, write("A.json", {"rows": [[3, 0], [0, 3]]}))
    assert d["B"]["rows"] == [[3, 0], [0, 3]] and d["yields_radix"] and d["mu_prime_gt_2"]
    code = run(capsys, "lattice", write("M2.json", {"rows": [[2, 0], [0, 1]]}), write("S.json", {"rows": [[1, 1], [0, 1]]}))[0]
    assert code == 3
    cbasis = write("C.json", {"rows": [[[1, 1], [0, 0]], [[0, 0], [1, 1]]]})
    d = run_json(capsys, "lattice", cbasis, "twin_dragon")
    assert d["B"]["rows"] == [[1, 1], [-1, 1]] and d["pseudodigits"] == [[["0", "0"], ["1", "1"]]]


def test_reproduce(capsys):
    d = run_json(capsys, "reproduce")
    assert d["two"]["S"] == [[1]] and d["minus_two"]["S"] == []
    assert d["twin_dragon"]["S"] == [[0, 1]]
    assert len(d["lagarias_wang"]["cycles"]) == 2


def test_output_is_byte_identical(capsys):
    assert run(capsys, "report", "lagarias_wang") == run(capsys, "report", "lagarias_wang")


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "radixz.cli", "digits", "two"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["digits"] == [[-1], [0]]
    proc = subprocess.run([sys.executable, "-m", "radixz.cli", "nope"], capture_output=True, text=True)
    assert proc.returncode == 2
