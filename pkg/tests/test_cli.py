import json
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import FIXTURES, idempotent_maps
from statone import documents
from statone.cli import dualize, main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, doc, name="doc.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc) if isinstance(doc, dict) else doc, encoding="utf-8")
    return path


# ------------------------------------------------------------------ documents

doc_strategy = st.one_of(
    st.integers(1, 5).flatmap(lambda k: st.sampled_from(idempotent_maps(k)).map(
        lambda s: {"kind": "product", "chains": [1] * len(s), "sigma": list(s)})),
    st.lists(st.integers(1, 9), min_size=1, max_size=4).map(lambda c: {"kind": "product", "chains": c}),
    st.integers(1, 4).flatmap(lambda k: st.sampled_from(idempotent_maps(k)).map(
        lambda s: {"kind": "stone", "points": [f"p{i}" for i in range(len(s))], "g": list(s)})),
    st.integers(1, 4).flatmap(lambda k: st.sampled_from(idempotent_maps(k)).map(
        lambda s: {"kind": "bauer", "vertices": len(s), "g": list(s)})),
    st.integers(1, 4).flatmap(lambda k: st.sampled_from(idempotent_maps(k)).map(
        lambda s: {"kind": "cube", "dim": len(s), "sigma": list(s)})),
)


@given(doc_strategy)
def test_parse_print_round_trip(doc):
    text = documents.dumps(doc)
    assert documents.loads(text) == doc
    assert documents.dumps(documents.loads(text)) == text
    assert documents.to_document(documents.build(doc)) == doc


def test_table_document_round_trip():
    doc = documents.load(FIXTURES / "algebras" / "chain2_table.json")
    assert documents.to_document(documents.build(doc)) == doc


@pytest.mark.parametrize("bad", [
    {"kind": "product", "chains": []},
    {"kind": "product", "chains": [1, 1], "sigma": [0]},
    {"kind": "stone", "points": ["a"], "g": [0], "extra": 1},
    {"kind": "cube", "dim": 2, "sigma": [0, 2]},
    {"kind": "table", "oplus": [[0, 1]], "star": [1, 0], "zero": 0},
    {"kind": "nonsense"},
    [1, 2, 3],
])
def test_schema_errors(bad):
    with pytest.raises(documents.DocumentError):
        documents.validate(bad)


# ---------------------------------------------------------------------- check

def test_check_examples(capsys, tmp_path):
    code, out, _ = run(capsys, "check", write(tmp_path, {"kind": "product", "chains": [1, 1, 1], "sigma": [0, 0, 2]}))
    assert code == 0 and "FAIL" not in out
    code, out, _ = run(capsys, "check", write(tmp_path, {"kind": "product", "chains": [1, 1], "sigma": [1, 0]}))
    assert code == 1
    assert "idempotence: σ(σ(0))=0≠σ(0)=1" in out
    code, _, err = run(capsys, "check", write(tmp_path, '{"kind": "product", "chains": [1,'))
    assert code == 2 and "not JSON" in err
    code, _, _ = run(capsys, "check", tmp_path / "missing.json")
    assert code == 2


def test_check_reports_first_counterexample(capsys):
    code, out, _ = run(capsys, "check", FIXTURES / "negative" / "one_plus_one_corrupted.json")
    assert code == 1
    assert "FAIL x⊕1=1: x=3: x⊕1=0" in out


def test_check_replays_certificates(capsys):
    code, out, _ = run(capsys, "check", FIXTURES / "certificates" / "boolean3_sigma002.json")
    assert code == 0
    code, out, _ = run(capsys, "check", FIXTURES / "negative" / "corrupted_certificate.json")
    assert code == 1
    assert "FAIL replay from stored witnesses" in out


@pytest.mark.parametrize("path", sorted((FIXTURES / "objects").glob("*.json")) + sorted(
    (FIXTURES / "algebras").glob("*.json")), ids=lambda p: p.stem)
def test_check_passes_on_shipped_fixtures(capsys, path):
    assert run(capsys, "check", path)[0] == 0


@pytest.mark.parametrize("name,code", [
    ("swap2", 1), ("divisibility", 1), ("one_plus_one_corrupted", 1), ("corrupted_certificate", 1),
    ("malformed", 2), ("schema_violation", 2),
])
def test_check_negative_fixtures(capsys, name, code):
    assert run(capsys, "check", FIXTURES / "negative" / f"{name}.json")[0] == code


# -------------------------------------------------------------------- dualize

def test_dualize_examples():
    assert dualize({"kind": "product", "chains": [1, 1, 1], "sigma": [0, 0, 2]}) == \
        {"kind": "stone", "points": ["0", "1", "2"], "g": [0, 0, 2]}
    assert dualize({"kind": "stone", "points": ["a", "b", "c"], "g": [0, 0, 2]}) == \
        {"kind": "product", "chains": [1, 1, 1], "sigma": [0, 0, 2]}
    assert dualize({"kind": "bauer", "vertices": 3, "g": [0, 0, 2]}) == {"kind": "cube", "dim": 3, "sigma": [0, 0, 2]}
    assert dualize({"kind": "cube", "dim": 3, "sigma": [0, 0, 2]}) == {"kind": "bauer", "vertices": 3, "g": [0, 0, 2]}


def test_dualize_uses_sorted_labels():
    # z→x, x→x, y→x; sorted labels x, y, z become atoms 0, 1, 2
    assert dualize({"kind": "stone", "points": ["z", "x", "y"], "g": [1, 1, 1]})["sigma"] == [0, 0, 0]


@pytest.mark.parametrize("k", range(1, 5))
def test_dualize_twice_is_identity_up_to_labels(k):
    for s in idempotent_maps(k):
        for doc in ({"kind": "product", "chains": [1] * k, "sigma": list(s)},
                    {"kind": "bauer", "vertices": k, "g": list(s)},
                    {"kind": "cube", "dim": k, "sigma": list(s)},
                    {"kind": "stone", "points": [str(i) for i in range(k)], "g": list(s)}):
            assert dualize(dualize(doc)) == doc


def test_dualize_errors(capsys, tmp_path):
    bauer = write(tmp_path, {"kind": "bauer", "vertices": 2, "g": [0, 0]})
    assert run(capsys, "dualize", bauer, "--direction", "algebra-to-space")[0] == 2
    non_boolean = write(tmp_path, {"kind": "product", "chains": [2, 1], "sigma": [0, 1]}, "product.json")
    assert run(capsys, "dualize", non_boolean)[0] == 2
    out = tmp_path / "out.json"
    assert run(capsys, "dualize", bauer, "--out", out)[0] == 0
    assert json.loads(out.read_text()) == {"kind": "cube", "dim": 2, "sigma": [0, 0]}


# ------------------------------------------------------------------ roundtrip

@pytest.mark.parametrize("path", sorted((FIXTURES / "objects").glob("*.json")), ids=lambda p: p.stem)
def test_roundtrip_every_object_fixture(capsys, tmp_path, path):
    out = tmp_path / "cert.json"
    assert run(capsys, "roundtrip", path, "--out", out)[0] == 0
    cert = json.loads(out.read_text())
    assert cert["kind"] == "certificate" and cert["passed"]
    assert run(capsys, "check", out)[0] == 0


def test_roundtrip_on_corrupted_certificate(capsys):
    assert run(capsys, "roundtrip", FIXTURES / "negative" / "corrupted_certificate.json")[0] == 1


# ------------------------------------------------------------------ enumerate

def test_enumerate_examples(capsys, tmp_path):
    code, out, _ = run(capsys, "enumerate", write(tmp_path, {"kind": "product", "chains": [1, 1, 1]}))
    assert code == 0 and out.startswith("10 state-morphism operators")
    code, out, _ = run(capsys, "enumerate", write(tmp_path, {"kind": "product", "chains": [2, 4, 3]}))
    assert out.startswith("2 state-morphism operators")
    code, out, _ = run(capsys, "enumerate", write(tmp_path, {"kind": "product", "chains": [1, 1]}), "--mode", "table")
    assert code == 0
    assert out.startswith("3 state-operator tables among 256 (3 state-morphism)")
    assert out.count("[morphism, structural]") == 3


def test_enumerate_table_document(capsys):
    code, out, _ = run(capsys, "enumerate", FIXTURES / "algebras" / "boolean2_table.json", "--mode", "table")
    assert code == 0 and out.count("[morphism]") == 3


def test_enumerate_cap(capsys, monkeypatch):
    assert run(capsys, "enumerate", FIXTURES / "algebras" / "product_243.json", "--mode", "table")[0] == 3
    monkeypatch.setenv("STATONE_TABLE_CAP", "2")
    assert run(capsys, "enumerate", FIXTURES / "algebras" / "boolean2_bare.json", "--mode", "table")[0] == 3


# ----------------------------------------------------------------- export-dot

def edges(dot):
    return {tuple(p.strip(' ";').split('" -> "')) for p in dot.splitlines() if "->" in p}


def test_export_dot(capsys, tmp_path):
    code, out, _ = run(capsys, "export-dot", FIXTURES / "objects" / "stone3.json")
    assert code == 0 and out.startswith("digraph")
    assert edges(out) == {("a", "a"), ("b", "a"), ("c", "c")}
    code, out, _ = run(capsys, "export-dot", write(tmp_path, {"kind": "stone", "points": ["x", "y"], "g": [0, 1]}))
    assert edges(out) == {("x", "x"), ("y", "y")}
    code, out, _ = run(capsys, "export-dot", FIXTURES / "objects" / "bauer4.json")
    assert edges(out) == {("v0", "v0"), ("v1", "v0"), ("v2", "v2"), ("v3", "v2")}
    assert run(capsys, "export-dot", FIXTURES / "objects" / "cube3.json")[0] == 2


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "statone.cli", "check", str(FIXTURES / "negative" / "swap2.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert "idempotence" in proc.stdout
