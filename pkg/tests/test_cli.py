import io
import json
import subprocess
import sys
from collections import Counter
from fractions import Fraction as F

import pytest

from graphs import cycle
from ollivier_exact import curvature
from ollivier_exact.cli import main
from ollivier_exact.counterexamples import build_ce_bipartite
from ollivier_exact.curvature import kappa
from ollivier_exact.graph import format_edge_list, parse_edge_list
from ollivier_exact.lp import LinearProgramme
from ollivier_exact.report import CSV_HEADER, curvature_record, decimal_display, emit, rational


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return _write


C5 = "a b\nb c\nc d\nd e\ne a\n"
K3 = "a b\nb c\nc a\n"


def test_curvature_c5_auto(write):
    code, out, _ = run("curvature", write("c5.txt", C5))
    records = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(records) == 5
    assert all(r["kappa"] == "0" and r["method"] == "closed-form" for r in records)
    assert [r["edge"] for r in records] == sorted(r["edge"] for r in records)


def test_curvature_k3_full_lp(write):
    code, out, _ = run("curvature", "--input", write("k3.txt", K3), "--method", "full-lp")
    records = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and [r["kappa"] for r in records] == ["1/2"] * 3
    assert records[0]["breakdown"] == {"W_plus": "1/2", "W_zero": "0", "W_minus": "-1/2", "components": []}
    assert records[0]["counts"]["triangle"] == 1


def test_reduced_record_lists_components(write):
    code, out, _ = run("curvature", write("c5.txt", C5), "--method", "reduced-lp", "--edge", "a,b")
    (record,) = [json.loads(line) for line in out.splitlines()]
    assert record["breakdown"]["components"] == [{"w0": "0", "wminus": "1"}]


def test_emit_k2_csv():
    g = parse_edge_list("a b\n")
    text = emit([curvature_record(g, kappa(g, 0, 1, "full-lp"))], "csv")
    header, row = text.splitlines()
    assert header == ",".join(CSV_HEADER)
    assert row.startswith("a,b,1,0,full-lp,1,")


def test_emit_empty():
    assert emit([], "json") == ""
    assert emit([], "csv") == ",".join(CSV_HEADER) + "\n"
    with pytest.raises(ValueError):
        emit([], "xml")


def test_rational_formatting():
    assert rational(F(39, 24)) == "13/8"
    assert rational(F(4, 2)) == "2"
    assert rational(None) is None
    assert decimal_display(F(1, 3)) == 0.333333333333
    assert decimal_display(F(13, 8)) == 1.625


def test_forman_record_has_null_W(write):
    code, out, _ = run("curvature", write("c5.txt", C5), "--method", "forman", "--format", "csv")
    assert code == 0
    assert out.splitlines()[1] == "a,b,,0,forman,,,"


def test_exit_codes(write, tmp_path):
    path = write("c5.txt", C5)
    assert run("curvature", str(tmp_path / "missing.txt"))[0] == 2
    assert run("curvature")[0] == 2
    bad = write("loop.txt", "a b\nb b\n")
    code, _, err = run("curvature", bad)
    assert code == 2 and "line 2" in err
    assert run("curvature", path, "--edge", "a,c")[0] == 3
    assert run("curvature", path, "--edge", "a,zz")[0] == 3
    assert run("curvature", path, "--edge", "abc")[0] == 3
    assert run("partition", path, "--edge", "a,c")[0] == 3
    assert run("compare", path, "--edge", "a,c")[0] == 3


def test_unusable_method_exits_2(write):
    ce1 = build_ce_bipartite(5)
    path = write("ce1.txt", format_edge_list(ce1.graph))
    code, out, err = run("curvature", path, "--method", "closed-form", "--edge", "u0,v0")
    assert code == 2 and out == "" and "closed form not applicable" in err
    code, _, err = run("curvature", path, "--method", "brute-force", "--brute-budget", "3", "--edge", "u0,v0")
    assert code == 2 and "too large" in err


def test_argument_validation(write):
    with pytest.raises(SystemExit) as exc:
        main(["curvature", write("c5.txt", C5), "--jobs", "0"])
    assert exc.value.code == 2


def test_compare_counterexample(write):
    ce1 = build_ce_bipartite(5)
    path = write("ce1.txt", format_edge_list(ce1.graph))
    code, out, _ = run("compare", path, "--edge", "u0,v0")
    (row,) = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and row["agree"]
    assert F(row["W"]["bm-bipartite"]) == 1 < F(row["W"]["full-lp"])
    assert row["W"]["closed-form"] is None and row["W"]["bm-girth5"] is None


def test_compare_csv(write):
    code, out, _ = run("compare", write("c5.txt", C5), "--format", "csv")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "edge_u,edge_v,full-lp,reduced-lp,brute-force,closed-form,bm-bipartite,bm-girth5,forman,agree"
    assert lines[1] == "a,b,1,1,1,1,,1,0,true"


def test_compare_corpus():
    code, out, _ = run("compare", "--corpus", "6")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and all(r["agree"] for r in rows)
    assert len({r["graph"] for r in rows}) == 1 + 1 + 2 + 6 + 21 + 112 - 1  # K1 has no edges


def test_compare_detects_corrupted_box(monkeypatch, write):
    original = curvature.build_reduced_lp_w0

    def off_by_one(part, comp, g):
        lp, variables = original(part, comp, g)
        if not variables:
            return lp, variables
        lower = list(lp.lower)
        lower[0] -= 1
        return LinearProgramme(lp.cost, tuple(lower), lp.upper, lp.diff_edges), variables

    # a triangle 0 1 4 with two pendant vertices on 0
    path = write("g.txt", "0 1\n0 2\n0 3\n0 4\n1 4\n")
    assert run("compare", path)[0] == 0
    monkeypatch.setattr(curvature, "build_reduced_lp_w0", off_by_one)
    code, _, err = run("compare", path)
    assert code == 1
    assert "disagreement" in err and "reduced-lp=" in err


def test_partition_json(write):
    code, out, _ = run("partition", write("c5.txt", C5), "--edge", "a,b")
    (rec,) = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert rec["pentagon_u"] == ["e"] and rec["pentagon_v"] == ["c"] and rec["pentagon_uv"] == ["d"]
    assert rec["components"] == [{"triangle": [], "square_u": [], "square_v": [], "pentagon_u": ["e"],
                                  "pentagon_v": ["c"], "pentagon_uv": ["d"]}]
    assert rec["refined"]["pent_circ_u"] == 1


def test_counterexample_round_trip(tmp_path):
    dest = tmp_path / "g5.txt"
    code, out, _ = run("counterexample", "--family", "girth5", "--param", "6", "--emit-graph", str(dest))
    report = json.loads(out)
    assert code == 0 and report["refuted"] and report["w_bm"] == "37/24" and report["witness_profit"] == "13/8"
    assert all(report[k] for k in ("witness_lipschitz", "profit_matches", "hypothesis_holds",
                                   "w_bm_matches", "lp_dominates_witness"))
    code, out, _ = run("curvature", str(dest))
    kappas = Counter(json.loads(line)["kappa"] for line in out.splitlines())

    from ollivier_exact.counterexamples import build_ce_girth5
    g = build_ce_girth5(6).graph
    again = parse_edge_list(dest.read_text())
    assert sorted(map(len, again.adjacency)) == sorted(map(len, g.adjacency))
    assert kappas == Counter(str(kappa(g, u, v).kappa) for u, v in g.edges())


def test_counterexample_bipartite_threshold():
    assert not json.loads(run("counterexample", "--family", "bipartite", "--param", "4")[1])["refuted"]
    assert json.loads(run("counterexample", "--family", "bipartite", "--param", "5")[1])["refuted"]


def test_jobs_do_not_change_output(write):
    text = "".join(f"c{i} c{(i + 1) % 12}\nc{i} c{(i + 5) % 12}\n" for i in range(12))
    path = write("g.txt", text)
    one = run("curvature", path, "--jobs", "1")
    two = run("curvature", path, "--jobs", "2")
    assert one == two and one[0] == 0


def test_console_script(write):
    proc = subprocess.run([sys.executable, "-m", "ollivier_exact.cli", "curvature", write("k3.txt", K3),
                           "--format", "csv"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1].startswith("a,b,1/2,1/2,")
