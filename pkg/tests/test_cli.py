import json

import pytest

from f1rep.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_indec(capsys):
    code, out, _ = call(capsys, "indec", "Q3_2_1", "--json")
    assert code == 0 and json.loads(out)["count"] == 6


def test_hom_and_list(capsys):
    code, out, _ = call(capsys, "hom", "A2", "S1+S2+P2", "S1+S2", "--list", "--json")
    data = json.loads(out)
    assert code == 0 and data["hom_dim"] == 5 and len(data["morphisms"]) == 6


def test_text_and_json_agree(capsys):
    _, text, _ = call(capsys, "ext", "A3", "--degree", "2", "[3,3]", "[1,1]")
    _, js, _ = call(capsys, "ext", "A3", "--degree", "2", "[3,3]", "[1,1]", "--json")
    data = json.loads(js)
    assert f"dim {data['dim']}" in text and f"cap {data['cap']}" in text
    assert data["dim"] == 1 and data["saturated"]


def test_deterministic_across_threads(capsys):
    outs = {call(capsys, "ext", "A3", "--degree", "2", "[3,3]", "[1,1]", "--json", "--threads", t, "--witnesses")[1] for t in ("1", "2")}
    assert len(outs) == 1


def test_euler_and_descent(capsys):
    code, out, _ = call(capsys, "euler", "A2", "S1+S2+P2", "S1+S2", "--json")
    assert code == 0 and json.loads(out)["value"] == 4
    code, out, _ = call(capsys, "descent-check", "A2", "--json")
    data = json.loads(out)
    assert code == 0 and any({v["first"]["value"], v["second"]["value"]} == {2, 4} for v in data["violations"])


def test_descent_universe_file(capsys, tmp_path):
    path = tmp_path / "u.json"
    path.write_text(json.dumps(["P2+P2", "S1+S2+P2", "P2", {"dims": [1, 1], "maps": {"a1": [0]}}]))
    code, out, _ = call(capsys, "descent-check", "A2", "--universe", str(path), "--json")
    assert code == 0 and json.loads(out)["violations"]


def test_projective(capsys):
    code, out, _ = call(capsys, "projective", "Q3_2_1", "M", "--json")
    data = json.loads(out)
    assert code == 0 and data["status"] == "not_projective" and data["witness_verified"]
    code, out, _ = call(capsys, "projective", "Q3_2_1", "P1", "--cap", "4")
    assert code == 0 and "projective_up_to_cap" in out


@pytest.mark.parametrize("fixture,want", [("A1", 0), ("A2", 1), ("A3", 2)])
def test_gldim(capsys, fixture, want):
    code, out, _ = call(capsys, "gldim", fixture, "--json")
    data = json.loads(out)
    assert code == 0 and data["global_dimension"] == want and data["saturated"]


def test_decompose_inline_json(capsys):
    code, out, _ = call(capsys, "decompose", "A2", '{"dims": [2, 2], "maps": {"a1": [1, 0]}}', "--json")
    assert code == 0 and len(json.loads(out)["summands"]) == 3


def test_quiver_file(capsys, tmp_path):
    path = tmp_path / "q.json"
    path.write_text(json.dumps({"vertices": 2, "arrows": [{"id": "x", "source": 1, "target": 2}]}))
    code, out, _ = call(capsys, "hom", str(path), "P1", "S1")
    assert code == 0 and "dim Hom = 1" in out


def test_input_errors(capsys, tmp_path):
    code, _, err = call(capsys, "hom", "A2", '{"dims": [1, 2], "maps": {"a1": [1, 1]}}', "S1")
    assert code == 2 and "M.maps.a1.map[1]" in err and "both map to 1" in err
    code, _, err = call(capsys, "hom", "missing.json", "S1", "S1")
    assert code == 2 and "quiver" in err
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": 2, "arrows": [{"id": "a", "source": 5, "target": 1}]}')
    code, _, err = call(capsys, "indec", str(bad))
    assert code == 2 and "quiver.arrows[0].source" in err
    code, _, err = call(capsys, "ext", "A2", "--degree", "1", "[1,7]", "S1")
    assert code == 2 and err.startswith("error: N")
    code, _, _ = call(capsys, "ext", "A2", "S1", "S1")
    assert code == 2
    code, _, err = call(capsys, "euler", "Q3_2_1", "M", "S1")
    assert code == 2 and "max-degree" in err


def test_verify_subset(capsys):
    code, out, _ = call(capsys, "verify-paper", "--only", "hom-table", "euler-descent")
    assert code == 0 and out.count("PASS") == 2
