import json
import subprocess
import sys

import pytest

from homclass import rstruct
from homclass.logic import parse, qr
from homclass.solvers import count_homs

from cli_corpus import COMMANDS, CORPUS, run_cli


def report(argv, cwd=CORPUS):
    code, out, err = run_cli(argv, cwd)
    assert code == 0, err
    return json.loads(out)["result"]


class TestSolve:
    def test_examples(self):
        assert report(["solve", "graphs.rstruct", "C3", "K2"])["answer"] is False
        r = report(["solve", "graphs.rstruct", "C5", "C5"])
        assert r["answer"] is True and len(r["witness"]) == 5
        assert report(["solve", "graphs.rstruct", "K2", "V1", "--problem", "emb"])["answer"] is False

    def test_tree_dp_matches_brute(self):
        a = report(["solve", "instances.rstruct", "P3s", "P3s_target", "--method", "tree-dp"])
        b = report(["solve", "instances.rstruct", "P3s", "P3s_target"])
        assert a["answer"] == b["answer"]


class TestMeasures:
    @pytest.mark.parametrize("name,tw,pw,td", [("P4", 1, 1, 3), ("K2", 1, 1, 2), ("C4", 2, 2, 3)])
    def test_values(self, name, tw, pw, td):
        r = report(["measures", "graphs.rstruct", name])
        assert (r["tw"], r["pw"], r["td"]) == (tw, pw, td)

    def test_bound(self):
        code, out, err = run_cli(["measures", "graphs.rstruct", "T6", "--max-size", "3"])
        assert code == 4 and out == "" and "bound" in err


class TestClassify:
    def test_edge_cores(self):
        r = report(["classify", "sample_edges.rstruct"])
        assert r["label"] == "para-L regime" and "finite-sample" in r["note"]

    def test_odd_cycles(self):
        assert report(["classify", "sample_odd_cycles.rstruct"])["label"] == "path-degree"

    def test_directed_binary_trees(self):
        r = report(["classify", "sample_bintrees.rstruct", "--max-size", "15"])
        assert r["label"] == "tree-degree candidates"
        assert [s["pw"] for s in r["sample"]] == [1, 1, 2]


class TestLogicCommands:
    def test_mc(self):
        assert report(["mc", "triangle.fo", "graphs.rstruct", "K3"])["value"] is True
        assert report(["mc", "triangle.fo", "graphs.rstruct", "C4"])["value"] is False
        assert report(["mc", "every_vertex_has_neighbour.fo", "graphs.rstruct", "V1"])["value"] is False

    def test_compile_phi(self, tmp_path):
        out = tmp_path / "p5.fo"
        r = report(["compile-phi", "graphs.rstruct", "P5", "--width", "2", "--out", str(out)])
        phi = parse(out.read_text())
        assert qr(phi) <= 3 and r["qr"] == qr(phi) and not r["rejected"]

    def test_compile_phi_rejects(self):
        code, out, err = run_cli(["compile-phi", "graphs.rstruct", "C5", "--width", "2"])
        assert code == 0 and json.loads(out)["result"]["rejected"] is True and err


class TestReduce:
    def test_reduce_then_count(self, tmp_path):
        out = tmp_path / "target.rstruct"
        report(["reduce", "tree-decomposition", "instances.rstruct", "--left", "K2s",
                "--right", "K2s_target", "--out", str(out)])
        target = rstruct.load(out)
        src = rstruct.load(CORPUS / "instances.rstruct")
        assert count_homs(target["left"], target["right"]) == count_homs(src["K2s"], src["K2s_target"])

    def test_trace(self, tmp_path):
        trace = tmp_path / "chain.jsonl"
        report(["reduce", "path-chain", "instances.rstruct", "--left", "P3s", "--right", "P3s_target",
                "--trace", str(trace)])
        steps = [json.loads(line)["name"] for line in trace.read_text().splitlines()]
        assert steps == ["homstar-path-to-dipath", "dipath-to-stpath", "stpath-to-cyclestar"]

    def test_verify(self):
        assert report(["verify", "tree-decomposition", "instances.rstruct", "--left", "K2s",
                       "--right", "K2s_target"])["ok"]
        r = report(["verify", "minor-to-host", "--random", "--trials", "30"])
        assert r["ok"] and r["passed"] == 30


class TestErrors:
    def test_parse_error(self, tmp_path):
        bad = tmp_path / "bad.rstruct"
        bad.write_text("structure A\nuniverse two\n")
        code, out, err = run_cli(["core", str(bad), "A"])
        assert code == 2 and out == "" and "line 2" in err

    def test_missing_file(self):
        assert run_cli(["core", "nope.rstruct", "A"])[0] == 2

    def test_unknown_name(self):
        code, _, err = run_cli(["core", "graphs.rstruct", "Q9"])
        assert code == 3 and "Q9" in err

    def test_vocabulary_mismatch(self):
        assert run_cli(["solve", "instances.rstruct", "Tern", "K2s_target"])[0] == 3

    def test_formula_vocabulary(self, tmp_path):
        fo = tmp_path / "a.fo"
        fo.write_text("exists x. A(x)")
        assert run_cli(["mc", str(fo), "graphs.rstruct", "K2"])[0] == 3


class TestReports:
    def test_timing_opt_in(self):
        code, out, _ = run_cli(["--timing", "core", "graphs.rstruct", "C4"])
        rep = json.loads(out)
        assert "timing" in rep and rep["timing"]["seconds"] >= 0
        assert "timing" not in json.loads(run_cli(["core", "graphs.rstruct", "C4"])[1])

    def test_inputs_hashed(self):
        rep = json.loads(run_cli(["core", "graphs.rstruct", "C4"])[1])
        assert rep["inputs"][0]["path"] == "graphs.rstruct" and len(rep["inputs"][0]["sha256"]) == 64

    @pytest.mark.parametrize("argv", COMMANDS[:8], ids=lambda a: " ".join(a[:3]))
    def test_repeatable(self, argv):
        assert run_cli(argv)[1] == run_cli(argv)[1]

    def test_module_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "homclass", "solve", "graphs.rstruct", "C3", "K2"],
                              cwd=CORPUS, capture_output=True, text=True)
        assert proc.returncode == 0 and json.loads(proc.stdout)["result"]["answer"] is False
