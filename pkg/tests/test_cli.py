import io
import subprocess
import sys

import pytest

from ontoalgebra.cli import main
from ontoalgebra.datasets import load, read_text
from ontoalgebra.formats import parse_document, parse_ontology
from ontoalgebra.reason import equivalent_theories


@pytest.fixture
def data(tmp_path):
    """Copy the bundled fixtures somewhere the CLI can read them by path."""
    for stem in ("apo", "pmg", "dblp", "lattes", "foaf1", "foaf2"):
        (tmp_path / f"{stem}.onto").write_text(read_text(f"{stem}.onto"))
    (tmp_path / "lattes.map").write_text(read_text("lattes.map"))
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_implies_true_and_false(data, capsys):
    assert run(capsys, "implies", data / "apo.onto", "mo:Label sub foaf:Agent .") == (0, "true\n", "")
    assert run(capsys, "implies", data / "apo.onto", "foaf:Person sub foaf:Agent .") == (1, "false\n", "")


def test_equiv(data, capsys, tmp_path):
    code, out, _ = run(capsys, "minimize", data / "pmg.onto")
    assert code == 0
    (tmp_path / "theta.onto").write_text(out)
    assert run(capsys, "equiv", data / "pmg.onto", tmp_path / "theta.onto")[:2] == (0, "true\n")
    assert run(capsys, "equiv", data / "pmg.onto", data / "apo.onto")[:2] == (1, "false\n")


def test_minimize_prints_five_constraints(data, capsys):
    code, out, _ = run(capsys, "minimize", data / "pmg.onto")
    o = parse_ontology(out)
    assert code == 0 and len(o.constraints) == 5
    assert equivalent_theories(o.constraints, load("pmg_minimized").constraints)


def test_project_and_closed(data, capsys):
    keep = "mo:MusicArtist,mo:SoloMusicArtist,mo:MusicGroup,mo:Label,xsd:string,foaf:name"
    code, out, _ = run(capsys, "project", data / "apo.onto", "--keep", keep)
    assert code == 0
    assert equivalent_theories(parse_ontology(out).constraints, load("mac_expected").constraints)
    code, out, _ = run(capsys, "closed", data / "apo.onto", "--keep", keep)
    assert code == 0 and "foaf:Person sub Bottom ." in out


def test_keep_is_required(data, capsys):
    code, _, err = run(capsys, "project", data / "apo.onto")
    assert code == 2 and "--keep" in err


def test_binary_operations(data, capsys):
    code, out, _ = run(capsys, "intersect", data / "dblp.onto", data / "lattes.onto", "--rename", data / "lattes.map")
    assert code == 0 and len(parse_ontology(out).constraints) == 3
    code, out, _ = run(capsys, "diff", data / "foaf1.onto", data / "foaf2.onto")
    assert code == 0
    assert equivalent_theories(parse_ontology(out).constraints, load("foaf_diff_expected").constraints)
    code, out, _ = run(capsys, "union", data / "foaf1.onto", data / "foaf2.onto")
    assert code == 0 and "Agent sub not Document ." in out


def test_deprecate_warns(data, capsys, tmp_path):
    (tmp_path / "drop.onto").write_text("Group sub Agent .\nImage sub Agent .\n")
    code, out, err = run(capsys, "deprecate", data / "foaf1.onto", "--drop", tmp_path / "drop.onto")
    assert code == 0
    assert "Group sub Agent" not in out
    assert "warning" in err and "Image" in err


def test_queries_and_exports(data, capsys, tmp_path):
    code, out, _ = run(capsys, "consequences", data / "pmg.onto")
    assert code == 0 and "mo:MusicGroup sub foaf:Agent ." in out.splitlines()
    (tmp_path / "bad.onto").write_text("C sub D .\nC sub not D .\n")
    assert run(capsys, "empty", tmp_path / "bad.onto")[:2] == (0, "C\n")
    assert run(capsys, "table", tmp_path / "bad.onto")[1].endswith("C\tBottom\n")
    code, _, _ = run(capsys, "graph", data / "pmg.onto", "--dot", tmp_path / "g.dot")
    assert code == 0 and (tmp_path / "g.dot").read_text().startswith("digraph")


def test_out_writes_a_file(data, capsys, tmp_path):
    target = tmp_path / "out.onto"
    code, out, _ = run(capsys, "minimize", data / "pmg.onto", "--out", target)
    assert code == 0 and out == ""
    assert len(parse_ontology(target.read_text()).constraints) == 5


def test_stdin(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO("C sub D .\nD sub E .\nC sub E .\n"))
    code, out, _ = run(capsys, "minimize", "-")
    assert code == 0 and "C sub E" not in out


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["implies", "missing.onto", "C sub D ."],
        ["minimize", "--out"],
    ],
)
def test_usage_errors_exit_two(argv, capsys):
    assert run(capsys, *argv)[0] == 2


def test_parse_error_reports_a_span(capsys, tmp_path):
    (tmp_path / "bad.onto").write_text("C sub D .\nC sup D .\n")
    code, _, err = run(capsys, "minimize", tmp_path / "bad.onto")
    assert code == 2 and "line 2, column 3" in err
    code, _, err = run(capsys, "implies", tmp_path / "bad.onto", "C sub D .")
    assert code == 2


def test_bad_query(data, capsys):
    assert run(capsys, "implies", data / "apo.onto", "not foaf:Person sub foaf:Agent .")[0] == 2
    assert run(capsys, "implies", data / "apo.onto", "ex:C sub foaf:Agent .")[0] == 2


def test_every_producer_output_reparses(data, capsys):
    for argv in (
        ["minimize", data / "apo.onto"],
        ["union", data / "apo.onto", data / "pmg.onto"],
        ["intersect", data / "apo.onto", data / "pmg.onto"],
        ["diff", data / "apo.onto", data / "pmg.onto"],
        ["project", data / "apo.onto", "--keep", "foaf:Person foaf:Agent"],
    ):
        code, out, _ = run(capsys, *argv)
        assert code == 0
        parse_document(out, allow_extended=True)


def test_module_entry_point(data):
    proc = subprocess.run(
        [sys.executable, "-m", "ontoalgebra", "implies", str(data / "apo.onto"), "mo:Label sub foaf:Agent ."],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "true\n"
