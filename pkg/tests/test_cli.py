"""End-to-end checks of the command line entry point."""

import hashlib
import json

import pytest

from dycktile.cli import _default_workers, main
from dycktile.incidence import IncidenceMatrix, build


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_matrix_smallest_basis(capsys):
    code, out, _ = run(capsys, "matrix", "--n", "1")
    assert code == 0
    assert out.split() == ["U", "U", "1"]


def test_matrix_inverse_csv(capsys):
    code, out, _ = run(capsys, "matrix", "--n", "2", "--kind", "Minv", "--format", "csv")
    assert code == 0
    assert out.splitlines() == [",UU,DD", "UU,1,0", "DD,q,1"]


def test_matrix_json_round_trip(capsys):
    code, out, _ = run(capsys, "matrix", "--n", "3", "--epsilon", "1", "--format", "json")
    assert code == 0
    assert IncidenceMatrix.from_json(json.loads(out)) == build(3, 1, "I")


def test_matrix_latex_has_rows(capsys):
    code, out, _ = run(capsys, "matrix", "--n", "2", "--kind", "N", "--format", "latex")
    assert code == 0
    assert "&" in out and "\\\\" in out


def test_matrix_rejects_bad_n(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["matrix", "--n", "0"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["matrix", "--n", "11"])
    assert exc.value.code == 2


def test_genfun_lower_sum(capsys):
    code, out, _ = run(capsys, "genfun", "--lambda", "DDUUDD")
    assert code == 0
    lines = out.splitlines()
    assert lines[1] == "q=1: 36"
    assert "6q^5" in lines[0]


def test_genfun_pair_json(capsys):
    code, out, _ = run(
        capsys,
        "genfun", "--lambda", "DUDU", "--mu", "UUDD",
        "--class", "exclusive", "--weight", "tiles", "--format", "json",
    )
    assert code == 0
    blob = json.loads(out)
    assert blob["coefficients"] == [0, 1]
    assert blob["q_at_1"] == 1
    assert blob["class"] == "exclusive"


def test_genfun_incomparable_pair(capsys):
    code, _, err = run(capsys, "genfun", "--lambda", "UUDD", "--mu", "DDUU")
    assert code == 3
    assert "error" in err


def test_genfun_type_a_needs_dyck(capsys):
    code, _, err = run(capsys, "genfun", "--lambda", "DU", "--type", "A")
    assert code == 3
    assert "Dyck" in err


def test_word_validation():
    with pytest.raises(SystemExit) as exc:
        main(["tree", "--lambda", "UDX"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["genfun", "--lambda", "U" * 11])
    assert exc.value.code == 2


def test_allow_long_lifts_cap(capsys):
    code, out, _ = run(capsys, "tree", "--lambda", "U" * 11, "--allow-long")
    assert code == 0
    assert "omega: 1" in out


def test_tilings_single_pair(capsys):
    code, out, _ = run(
        capsys,
        "tilings", "--lambda", "DUDU", "--mu", "UUDD", "--class", "exclusive",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "upper=UUDD class=exclusive tiles=1 area=3 art=2"
    assert lines[1] == "total: 1 tiling"


def test_tilings_trivial_region(capsys):
    code, out, _ = run(capsys, "tilings", "--lambda", "UUDD", "--mu", "UUDD")
    assert code == 0
    lines = out.splitlines()
    assert "tiles=0" in lines[0]
    assert lines[1] == "total: 1 tiling"


def test_tilings_filter_and_render(capsys, tmp_path):
    out_dir = tmp_path / "out"
    code, out, _ = run(
        capsys,
        "tilings", "--lambda", "DDUUDD", "--filter-art", "5",
        "--render", str(out_dir),
    )
    assert code == 0
    assert "total: 6 tilings" in out
    svgs = sorted(p.name for p in out_dir.glob("*.svg"))
    assert svgs == ["tiling_%03d.svg" % i for i in range(6)]
    manifest = json.loads((out_dir / "manifest.json").read_text())
    assert manifest["command"] == "tilings"
    assert manifest["arguments"]["filter_art"] == 5
    assert len(manifest["artifacts"]) == 6
    for entry in manifest["artifacts"]:
        data = (out_dir / entry["file"]).read_bytes()
        assert entry["sha256"] == hashlib.sha256(data).hexdigest()
        assert entry["art"] == 5
        assert data.startswith(b"<svg")


def test_render_is_deterministic(capsys, tmp_path):
    blobs = []
    for name in ("a", "b"):
        out_dir = tmp_path / name
        run(capsys, "tilings", "--lambda", "DUDU", "--render", str(out_dir))
        files = sorted(p.name for p in out_dir.iterdir())
        blobs.append([(f, (out_dir / f).read_bytes()) for f in files])
    assert blobs[0] == blobs[1]


def test_tilings_domain_error(capsys):
    code, _, err = run(capsys, "tilings", "--lambda", "UUDD", "--mu", "DDUU")
    assert code == 3
    assert "error" in err


def test_tree_empty_word(capsys):
    code, out, _ = run(capsys, "tree", "--lambda", "")
    assert code == 0
    assert "(empty tree)" in out
    assert "omega: 1" in out
    assert "q=1: 1" in out


def test_tree_all_down(capsys):
    code, out, _ = run(capsys, "tree", "--lambda", "DDDD")
    assert code == 0
    lines = out.splitlines()
    assert lines[1] == "edge [0] dotted"
    assert "omega: 1 + q + q^2 + 2q^3 + q^4 + q^5 + q^6" in lines
    assert "q=1: 8" in lines


def test_tree_stuck_word(capsys):
    code, out, err = run(capsys, "tree", "--lambda", "DUDDUU")
    assert code == 4
    assert out == ""
    assert "edge [1] dotted" in err
    assert "error:" in err


def test_tree_stuck_word_json(capsys):
    code, out, _ = run(capsys, "tree", "--lambda", "DUDDUU", "--format", "json")
    assert code == 4
    blob = json.loads(out)
    assert blob["word"] == "DUDDUU"
    assert "error" in blob
    assert blob["tree"]["arrows"]


def test_tree_dot_output(capsys):
    code, out, _ = run(capsys, "tree", "--lambda", "UUDD", "--format", "dot")
    assert code == 0
    assert out.startswith("digraph")


def test_tree_json_output(capsys):
    code, out, _ = run(capsys, "tree", "--lambda", "DUUDUU", "--format", "json")
    assert code == 0
    blob = json.loads(out)
    assert blob["q_at_1"] == 18
    assert blob["coefficients"] == [1, 2, 3, 3, 3, 3, 2, 1]


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--max-length", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "all checks passed"
    for line in lines[:-1]:
        assert " pass " in line


def test_verify_json_report(capsys):
    code, out, _ = run(capsys, "verify", "--max-length", "1", "--json")
    assert code == 0
    blob = json.loads(out)
    assert blob["all_pass"] is True
    names = {c["name"] for c in blob["checks"]}
    assert "golden-matrices" in names
    assert "matrix-bridge" in names
    assert "tree-evaluation" in names
    assert all(c["passed"] for c in blob["checks"])


def test_worker_count_does_not_change_output(capsys):
    outputs = []
    for n in ("1", "2"):
        code, out, _ = run(capsys, "genfun", "--lambda", "DDUU", "--workers", n)
        assert code == 0
        outputs.append(out)
    assert outputs[0] == outputs[1]


def test_default_workers_env(monkeypatch):
    monkeypatch.setenv("DYCKTILE_WORKERS", "3")
    assert _default_workers() == 3
    monkeypatch.setenv("DYCKTILE_WORKERS", "99")
    assert _default_workers() == 8
    monkeypatch.setenv("DYCKTILE_WORKERS", "zero")
    assert _default_workers() == 1
    monkeypatch.delenv("DYCKTILE_WORKERS")
    assert _default_workers() == 1


def test_missing_subcommand():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
