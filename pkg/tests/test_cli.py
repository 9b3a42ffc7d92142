import json

import pytest

from gtmod.gtmod_cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, build_parser, main
from gtmod.core.codec import encode_tag, parse_operator, parse_spec, parse_vector
from gtmod.core.errors import InputError
from gtmod.core.rep_engine import Casimir, Generator, Sym
from gtmod.core.tableaux import ShiftVector

CRITICAL = {"n": 3, "rows": [["2", "0", "-2"], ["1", "1"], ["1"]]}
SMALL_VERIFY = ["--n-max", "2", "--generic-count", "1", "--singular-count", "1", "--tags", "1", "--radius", "1"]
GL3_VERIFY = ["--n-max", "3", "--fd-count", "1", "--generic-count", "1", "--singular-count", "2", "--tags", "3", "--radius", "1"]


def _no_float(text):
    raise AssertionError(f"float in output: {text}")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def _vector(spec, kind, rows, coeff="1"):
    return json.dumps({"spec": spec, "terms": [{"tag": {"kind": kind, "shift": {"rows": rows}}, "coeff": coeff}]})


def test_classify_critical(capsys):
    code, out, _ = run(capsys, "classify", "--tableau", json.dumps(CRITICAL), "--seed", "4")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["seed"] == 4
    assert doc["classification"]["critical_pairs"] == [[2, 1, 2]]
    assert doc["classification"]["is_1_critical"] is True


def test_classify_from_file(tmp_path, capsys):
    path = tmp_path / "v.json"
    path.write_text(json.dumps(CRITICAL))
    code, out, _ = run(capsys, "classify", "--tableau", f"@{path}")
    assert code == EXIT_OK
    assert json.loads(out)["classification"]["standard"] is False


@pytest.mark.parametrize("text", ["{not json", json.dumps({"n": 3, "rows": [["1", "0.5"]]}), json.dumps({"n": 2})])
def test_malformed_input_is_a_usage_error(capsys, text):
    code, out, err = run(capsys, "classify", "--tableau", text)
    assert code == EXIT_USAGE
    assert out == ""
    assert "error" in err


def test_act_generic_example(capsys):
    spec = {"family": "Generic", "v": {"n": 2, "rows": [["1", "-1"], ["1/2"]]}}
    code, out, _ = run(capsys, "act", "--vector", _vector(spec, "Gen", [["0"]]), "--generator", "E,1,2")
    assert code == EXIT_OK
    terms = json.loads(out)["result"]["terms"]
    assert terms == [{"tag": {"kind": "Gen", "shift": {"rows": [["1"]]}}, "coeff": "3/4"}]


def test_act_casimir(capsys):
    spec = {"family": "Generic", "v": {"n": 2, "rows": [["1", "-1"], ["1/2"]]}}
    code, out, _ = run(capsys, "act", "--vector", _vector(spec, "Gen", [["0"]]), "--generator", "C,1,1")
    assert code == EXIT_OK
    assert json.loads(out)["result"]["terms"][0]["coeff"] == "1/2"


def test_act_singular_alt_at_fixed_shift_is_zero(capsys):
    spec = {"family": "OneSingular", "v": CRITICAL, "pair": [2, 1, 2]}
    code, out, _ = run(capsys, "act", "--vector", _vector(spec, "Alt", [["0", "0"], ["0"]]), "--generator", "E,1,1")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["input"]["terms"] == [] and doc["result"]["terms"] == []


def test_act_rejects_bad_generator(capsys):
    spec = {"family": "FiniteDim", "weight": [1, 0]}
    vec = json.dumps({"spec": spec, "terms": []})
    assert run(capsys, "act", "--vector", vec, "--generator", "E,1,3")[0] == EXIT_USAGE
    assert run(capsys, "act", "--vector", vec, "--generator", "X,1,2")[0] == EXIT_USAGE


def test_basis(capsys):
    code, out, _ = run(capsys, "basis", "--weight", "2,1,0")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["dimension"] == doc["weyl_dimension"] == 8
    assert len(doc["basis"]) == 8


def test_basis_rejects_non_dominant(capsys):
    assert run(capsys, "basis", "--weight", "0,1")[0] == EXIT_USAGE


def test_verify_small(capsys):
    code, out, _ = run(capsys, "verify", "--seed", "2", *SMALL_VERIFY)
    assert code == EXIT_OK
    lines = out.splitlines()
    assert json.loads(lines[-1])["summary"]["failed"] == 0
    for line in lines:
        json.loads(line, parse_float=_no_float)


def test_verify_is_byte_identical(capsys):
    first = run(capsys, "verify", "--seed", "9", *SMALL_VERIFY)[1]
    second = run(capsys, "verify", "--seed", "9", *SMALL_VERIFY)[1]
    assert first == second


def test_verify_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("GTMOD_SEED", "13")
    out = run(capsys, "verify", *SMALL_VERIFY)[1]
    assert json.loads(out.splitlines()[-1])["seed"] == 13


def test_verify_catches_a_mutation(capsys):
    code, out, _ = run(capsys, "verify", "--mutate", "sign-e12", "--no-casimir", *SMALL_VERIFY)
    assert code == EXIT_FAILED
    assert json.loads(out.splitlines()[-1])["summary"]["failed"] > 0


@pytest.mark.parametrize("mutation, extra", [
    ("gamma-shift", []),
    ("p-minus-factor", ["--no-casimir"]),
    ("tau-orientation", []),
])
def test_verify_catches_each_mutation_on_gl3(capsys, mutation, extra):
    code, out, _ = run(capsys, "verify", "--mutate", mutation, *extra, *GL3_VERIFY)
    assert code == EXIT_FAILED
    summary = json.loads(out.splitlines()[-1])["summary"]
    assert summary["failed"] > 0 and summary["passed"] > 0


def test_verify_defaults_to_gl4():
    args = build_parser().parse_args(["verify"])
    assert args.n_max == 4 and args.fd_count is None


@pytest.mark.parametrize("flags", [["--n-max", "1"], ["--trunc", "1"], ["--radius", "-1"], ["--fd-count", "-1"]])
def test_verify_bad_flags(capsys, flags):
    assert run(capsys, "verify", *flags)[0] == EXIT_USAGE


def test_verify_to_file(tmp_path, capsys):
    target = tmp_path / "reports.jsonl"
    code, out, _ = run(capsys, "verify", "--out", str(target), *SMALL_VERIFY)
    assert code == EXIT_OK and out == ""
    assert target.read_text().endswith("\n")


# ---------- codec ----------

def test_operator_parsing():
    assert parse_operator("E,1,2") == Generator(1, 2)
    assert parse_operator(" c, 3, 2") == Casimir(3, 2)
    with pytest.raises(InputError):
        parse_operator("E,1")


def test_singular_input_is_normalized():
    raw = {"family": "OneSingular", "v": {"n": 3, "rows": [["2", "0", "-2"], ["3", "1"], ["1/3"]]}, "pair": [2, 1, 2]}
    parsed = parse_spec(raw)
    assert parsed.spec.v[2, 1] == 1
    vec = parse_vector(json.loads(_vector(raw, "Sym", [["0", "0"], ["0"]])))
    assert vec.support == [Sym(ShiftVector.from_top_rows([[2, 0], [0]]))]
    assert encode_tag(vec.support[0]) == {"kind": "Sym", "shift": {"rows": [["2", "0"], ["0"]]}}
