import json
import subprocess
import sys
from pathlib import Path

import pytest

from cobtrace import serialize as ser
from cobtrace.cli import main, parse_dims

GOLDEN = Path(__file__).parent / "golden"
CASES = json.loads((GOLDEN / "cases.json").read_text())


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def in_golden(monkeypatch):
    monkeypatch.chdir(GOLDEN)


@pytest.mark.parametrize("case", CASES, ids=[c["name"] for c in CASES])
def test_golden_case(case, in_golden, capsys):
    code, out, err = run(case["argv"], capsys)
    assert code == case["exit"]
    assert out == (GOLDEN / "expected" / f"{case['name']}.out").read_text()
    assert err == (GOLDEN / "expected" / f"{case['name']}.err").read_text()
    # identical invocation, identical bytes
    assert run(case["argv"], capsys) == (code, out, err)


def test_corpus_has_twenty_documents():
    assert len(list((GOLDEN / "inputs").glob("*.json"))) == 20


def _cobordism_docs():
    for path in sorted((GOLDEN / "inputs").glob("*.json")):
        doc = json.loads(path.read_text())
        if isinstance(doc, dict) and "arcs" in doc and path.stem != "bad_sign":
            yield path


@pytest.mark.parametrize("path", list(_cobordism_docs()), ids=lambda p: p.stem)
def test_cobordism_round_trip(path):
    doc = json.loads(path.read_text())
    phi = ser.cobordism_from_doc(doc)
    canon = ser.dumps(ser.cobordism_to_doc(phi))
    again = ser.cobordism_from_doc(json.loads(canon), phi.labels)
    assert again == phi
    assert ser.dumps(ser.cobordism_to_doc(again)) == canon


def test_normalize_is_idempotent(capsys):
    canonical = GOLDEN / "expected" / "normalize_figure.out"
    code, out, _ = run(["normalize", str(canonical)], capsys)
    assert code == 0 and out == canonical.read_text()


def test_wiring_round_trip(in_golden):
    for name in ("wd_intro", "wd_inner", "wd_outer"):
        doc = json.loads((GOLDEN / "inputs" / f"{name}.json").read_text())
        W = ser.wiring_from_doc(doc)
        out = ser.wiring_to_doc(W)
        assert ser.wiring_from_doc(out) == W
        assert ser.dumps(ser.wiring_to_doc(ser.wiring_from_doc(out))) == ser.dumps(out)


def test_matrix_and_int_round_trip(in_golden):
    doc = json.loads((GOLDEN / "inputs" / "mat_a.json").read_text())
    T, f = ser.morphism_from_doc(doc)
    assert ser.morphism_to_doc(T, f) == doc
    doc = json.loads((GOLDEN / "inputs" / "int_f.json").read_text())
    T, f = ser.int_morphism_from_doc(doc)
    back = ser.int_morphism_to_doc(T, f)
    assert ser.int_morphism_to_doc(*ser.int_morphism_from_doc(back)) == back


def test_category_round_trip(in_golden):
    doc = json.loads((GOLDEN / "inputs" / "cat_z2.json").read_text())
    assert ser.category_to_doc(ser.category_from_doc(doc)) == doc


def test_kleisli_round_trip(in_golden):
    doc = json.loads((GOLDEN / "inputs" / "kleisli_map.json").read_text())
    k = ser.kleisli_from_doc(doc)
    out = ser.kleisli_to_doc(k)
    assert ser.kleisli_to_doc(ser.kleisli_from_doc(out)) == out


def test_canonical_outputs_reserialize_identically():
    for path in sorted((GOLDEN / "expected").glob("*.out")):
        text = path.read_text()
        if text.startswith("{"):
            assert ser.dumps(json.loads(text)) == text


# -- exit codes and argument handling ---------------------------------------


def test_invalid_json_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, out, err = run(["normalize", str(bad)], capsys)
    assert code == 2 and out == "" and "invalid JSON" in err


def test_missing_file_exits_2(tmp_path, capsys):
    code, _, err = run(["normalize", str(tmp_path / "nope.json")], capsys)
    assert code == 2 and "cannot read" in err


def test_unknown_command_exits_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2


def test_seed_is_mandatory(capsys):
    with pytest.raises(SystemExit) as e:
        main(["check", "axioms", "--cases", "3"])
    assert e.value.code == 2


def test_invalid_cobordism_exits_1(tmp_path, capsys):
    doc = {"dom": [{"label": "a", "sign": "-"}], "cod": [{"label": "a", "sign": "+"}],
           "arcs": [[{"side": "dom", "index": 1}, {"side": "cod", "index": 1}]]}
    path = tmp_path / "clash.json"
    path.write_text(json.dumps(doc))
    code, out, err = run(["normalize", str(path)], capsys)
    assert code == 1 and out == "" and "OrientationClash" in err


def test_stdin_input(monkeypatch, capsys):
    doc = (GOLDEN / "inputs" / "id_a.json").read_text()
    monkeypatch.setattr("sys.stdin", __import__("io").StringIO(doc))
    code, out, _ = run(["normalize", "-"], capsys)
    assert code == 0 and json.loads(out) == json.loads(doc)


def test_trace_over_bad_prefix_exits_1(in_golden, capsys):
    code, _, err = run(["trace", "inputs/id_a.json", "--over", "3"], capsys)
    assert code == 1


@pytest.mark.parametrize("text", ["", "a", "a=0", "a=x", "=2"])
def test_parse_dims_rejects(text):
    with pytest.raises(ser.DocumentError):
        parse_dims(text)


def test_parse_dims():
    assert parse_dims("a=2, b=3") == {"a": 2, "b": 3}


def test_module_entry_point(in_golden):
    proc = subprocess.run(
        [sys.executable, "-m", "cobtrace", "compose", "inputs/cup_a.json", "inputs/cap_a.json"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "expected" / "compose_cup_cap.out").read_text()
