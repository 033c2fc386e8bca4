import json
import subprocess
import sys

from annulus.fusion import FusionResult
from annulus.levinwen import defect_line_patch, patch_to_json
from annulus.structures import compound_to_json, vertical_compound
from annulus.defects import parse_defect, trivial_defect
from annulus.walls import wall


def run_cli(*args):
    return subprocess.run([sys.executable, "-m", "annulus.cli", *args],
                          capture_output=True, text=True)


def test_fuse_vertical_spec_example():
    r = run_cli("fuse-vertical", "-p", "5", "RFr(x=1;r=2)", "FrR(z=3;r=2)")
    assert r.returncode == 0, r.stderr
    doc = json.loads(r.stdout)
    got = dict(map(tuple, doc["outcomes"][0]["defects"]))
    want = {f"RR(a={a},x={(4 - 2 * a) % 5})": 1 for a in range(5)}
    assert got == want
    # round trip: emitted JSON re-parses to an equal FusionResult
    assert FusionResult.from_json(doc).to_json() == doc


def test_determinism():
    a = run_cli("associator", "-p", "3", "R", "Fq:2", "R")
    b = run_cli("associator", "-p", "3", "R", "Fq:2", "R")
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout


def test_associator_golden_diff_clean():
    r = run_cli("associator", "-p", "2", "--table", "--golden")
    assert r.returncode == 0, r.stderr


def test_associator_golden_from_file_and_mismatch(tmp_path):
    from annulus.fusion import load_golden_associators

    golden = load_golden_associators()
    path = tmp_path / "golden.json"
    path.write_text(json.dumps(golden))
    r = run_cli("associator", "-p", "2", "R", "Fq:1", "R", "--golden", str(path))
    assert r.returncode == 0, r.stderr
    # corrupt one delta: the diff must fail with the golden-mismatch code
    golden["cells"]["R|F|R"]["deltas"] = []
    path.write_text(json.dumps(golden))
    r = run_cli("associator", "-p", "2", "R", "Fq:1", "R", "--golden", str(path))
    assert r.returncode == 5
    assert "golden" in r.stderr


def test_parse_error_exit_code():
    r = run_cli("fuse-vertical", "-p", "5", "bogus(", "RFr(x=1;r=2)")
    assert r.returncode == 2
    r = run_cli("fuse-vertical", "-p", "4", "RR(0,0)", "RR(0,0)")
    assert r.returncode == 2


def test_wall_mismatch_exit_code():
    r = run_cli("fuse-vertical", "-p", "3", "RFr(x=0;r=1)", "FrR(z=0;r=2)")
    assert r.returncode == 3
    assert "mismatch" in r.stderr


def test_size_limit_exit_code(tmp_path, monkeypatch):
    doc = compound_to_json(vertical_compound(
        parse_defect("TT(a=0,b=0)", 5), parse_defect("TT(a=0,b=0)", 5)))
    path = tmp_path / "s.json"
    path.write_text(json.dumps(doc))
    r = subprocess.run(
        [sys.executable, "-m", "annulus.cli", "decompose", str(path)],
        capture_output=True, text=True, env={"ANNULUS_MAX_BASIS": "3",
                                             "PATH": "/usr/bin:/bin"})
    assert r.returncode == 4


def test_decompose_structure_document(tmp_path):
    ident = trivial_defect(wall(3, "X", 1))
    doc = compound_to_json(vertical_compound(ident, ident))
    path = tmp_path / "structure.json"
    path.write_text(json.dumps(doc))
    r = run_cli("decompose", str(path))
    assert r.returncode == 0, r.stderr
    out = json.loads(r.stdout)
    assert out["decomposition"] == [[ident.name(), 1]]
    bad = tmp_path / "bad.json"
    bad.write_text("{\"p\": 3}")
    assert run_cli("decompose", str(bad)).returncode == 6


def test_lw_command(tmp_path):
    path = tmp_path / "patch.json"
    path.write_text(json.dumps(patch_to_json(defect_line_patch(2))))
    r = run_cli("lw", str(path))
    assert r.returncode == 0, r.stderr
    doc = json.loads(r.stdout)
    assert doc["ground_space_dim"] == 1
    assert doc["commuting"] is True


def test_lw_violated_term_report(tmp_path):
    from annulus.levinwen import hexagon_chain_patch

    patch = hexagon_chain_patch(2, 1)
    state = patch.consistent_basis()[0]
    edges = patch.edge_labels_of(state)
    interior = next(e for e in patch.edges if all(end for end in e.ends))
    edges[interior.eid] = (edges[interior.eid] + 1) % 2
    ppath = tmp_path / "patch.json"
    ppath.write_text(json.dumps(patch_to_json(patch)))
    spath = tmp_path / "state.json"
    spath.write_text(json.dumps({
        "edges": edges,
        "vertices": [list(v) for v in state],
    }))
    r = run_cli("lw", str(ppath), "--state", str(spath))
    assert r.returncode == 0, r.stderr
    doc = json.loads(r.stdout)
    assert sorted(doc["violated_terms"].values()) == [1, 1]


def test_template_shorthand_documents(tmp_path):
    doc = {"p": 5, "template": "vertical",
           "defects": ["RFr(x=1;r=2)", "FrR(z=3;r=2)"]}
    path = tmp_path / "v.json"
    path.write_text(json.dumps(doc))
    r = run_cli("decompose", str(path))
    assert r.returncode == 0, r.stderr
    out = json.loads(r.stdout)
    assert ["RR(a=1,x=2)", 1] in out["decomposition"]
    doc = {"p": 3, "template": "associator", "walls": ["R", "Fq:2", "R"],
           "corners": {"mu0": 2, "nu1": 1}}
    path.write_text(json.dumps(doc))
    out = json.loads(run_cli("decompose", str(path)).stdout)
    assert out["decomposition"] == [["RR(a=0,x=0)", 1]]


def test_text_format():
    r = run_cli("fuse-horizontal", "-p", "3", "--format", "text",
                "FqR(x=1;q=2)", "LL(a=1,x=2)", "--corner", "top=1")
    assert r.returncode == 0
    assert "TT(a=1,b=1)" in r.stdout
