import json

import pytest

from powerdom.cli import main
from powerdom.families import (
    gen_complete_bipartite,
    gen_doublestar,
    gen_figure1,
    gen_figure2,
    gen_path,
    gen_section4_example,
)


@pytest.fixture
def files(tmp_path):
    def put(name, g):
        p = tmp_path / name
        if name.endswith(".g6"):
            p.write_text(g.to_graph6() + "\n")
        elif name.endswith(".json"):
            p.write_text(g.to_json())
        else:
            p.write_text(g.to_edge_list())
        return str(p)

    return {
        "figure1": put("figure1.el", gen_figure1().graph),
        "figure2": put("figure2.el", gen_figure2().graph),
        "k33": put("k33.g6", gen_complete_bipartite(3, 3)),
        "p3": put("p3.el", gen_path(3)),
        "p5": put("p5.json", gen_path(5)),
        "p6": put("p6.el", gen_path(6)),
        "ds": put("ds.el", gen_doublestar(2, 2)),
        "sec4": put("sec4.el", gen_section4_example(3).graph),
        "dir": tmp_path,
    }


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


# -- invariants -----------------------------------------------------------------------


def test_pd_on_fourteen_vertex_graph(files, capsys):
    code, obj = run_json(capsys, "pd", files["figure1"])
    assert code == 0 and obj["value"] == 3 and len(obj["witness"]) == 3
    code, out, _ = run(capsys, "pd", files["figure1"], "--prune")
    assert code == 0 and "gamma_P = 3" in out


def test_ell_with_certificate(files, capsys):
    code, obj = run_json(capsys, "ell", files["figure2"])
    assert code == 0 and obj["value"] == 4
    assert len(obj["certificate"]["parts"]) == 4


def test_sp_rejects_non_tree(files, capsys):
    code, _, err = run(capsys, "sp", files["k33"])
    assert code == 2 and "tree" in err


@pytest.mark.parametrize("cmd,key,value", [("zf", "p6", 1), ("dom", "p6", 2), ("sp", "ds", 2), ("zell", "ds", 2)])
def test_other_invariants(files, capsys, cmd, key, value):
    code, obj = run_json(capsys, cmd, files[key])
    assert code == 0 and obj["value"] == value


def test_inconclusive_exit(files, capsys):
    code, obj = run_json(capsys, "zf", files["k33"], "--max-subsets", "3")
    assert code == 3 and obj["value"] is None


def test_parse_errors(files, capsys):
    bad = files["dir"] / "bad.el"
    bad.write_text("0 1\n1 x\n")
    code, _, err = run(capsys, "pd", bad)
    assert code == 2 and "line 2" in err
    code, _, _ = run(capsys, "pd", files["dir"] / "missing.el")
    assert code == 2
    code, _, _ = run(capsys, "pd", files["p6"], "--max-subsets", "0")
    assert code == 2
    code, _, _ = run(capsys, "frobnicate")
    assert code == 2


def test_format_override(files, capsys):
    alias = files["dir"] / "k33.txt"
    alias.write_text((files["dir"] / "k33.g6").read_text())
    code, obj = run_json(capsys, "pd", alias, "--format", "g6")
    assert code == 0 and obj["value"] == 2


# -- product ------------------------------------------------------------------------------


def test_product_max_factor_check(files, capsys):
    out_path = files["dir"] / "p3p6.el"
    code, obj = run_json(capsys, "product", files["p3"], files["p6"], "--check", "lemma2", "-o", out_path)
    assert code == 0 and obj["n"] == 18
    rep = obj["reports"][0]
    assert rep["holds"] == {"max(gamma_P(G),gamma_P(H)) <= gamma_P(GxH)": True}
    assert rep["slack"]["max(gamma_P(G),gamma_P(H)) <= gamma_P(GxH)"] == 0
    assert out_path.read_text().startswith("n 18")


def test_product_vizing(files, capsys):
    code, obj = run_json(capsys, "product", files["ds"], files["ds"], "--check", "vizing")
    assert code == 0
    rep = obj["reports"][0]
    assert all(rep["holds"].values())
    assert {b["name"]: b["value"] for b in rep["bounds"]}["gamma_P(T1)*gamma_P(T2)"] == 4


def test_product_cap(files, capsys):
    code, _, err = run(capsys, "product", files["figure2"], files["figure2"], "--cap", "100")
    assert code == 4 and "cap" in err


def test_product_vizing_needs_trees(files, capsys):
    code, _, _ = run(capsys, "product", files["k33"], files["ds"], "--check", "vizing")
    assert code == 2


# -- gen and verify ----------------------------------------------------------------------------


@pytest.mark.parametrize("argv,n", [
    (["gms", "--m", "2", "--s", "1"], 15),
    (["necklace", "--k", "3"], 12),
    (["familyF", "--h", "p3"], 9),
    (["figure2"], 19),
    (["section4", "--n", "3"], 18),
])
def test_gen_bundles_verify(files, capsys, argv, n):
    out = files["dir"] / f"{argv[0]}.el"
    code, _, _ = run(capsys, "gen", *argv, "-o", out)
    assert code == 0
    cert = files["dir"] / f"{argv[0]}.cert.json"
    bundle = json.loads(cert.read_text())
    assert bundle["graph"]["n"] == n
    code, text, _ = run(capsys, "verify", out, cert)
    assert code == 0 and text.startswith("valid")


def test_gen_bad_parameters(capsys):
    assert run(capsys, "gen", "gms", "--m", "1", "--s", "1")[0] == 2
    assert run(capsys, "gen", "necklace")[0] == 2
    assert run(capsys, "gen", "familyF", "--h", "zz9")[0] == 2


def test_tampered_partition_certificate(files, capsys):
    cert = files["dir"] / "f2.json"
    run(capsys, "ell", files["figure2"], "-o", cert)
    obj = json.loads(cert.read_text())
    z = 18
    parts = obj["certificate"]["parts"]
    assert any(z in p for p in parts)
    obj["certificate"]["parts"] = [[v for v in p if v != z] for p in parts]
    cert.write_text(json.dumps(obj))
    code, out, _ = run(capsys, "verify", files["figure2"], cert)
    assert code == 1 and "INVALID" in out


def test_tampered_witness(files, capsys):
    cert = files["dir"] / "pd.json"
    run(capsys, "pd", files["figure1"], "-o", cert)
    obj = json.loads(cert.read_text())
    obj["witness"] = obj["witness"][:2]
    cert.write_text(json.dumps(obj))
    assert run(capsys, "verify", files["figure1"], cert)[0] == 1


def test_verify_schema_errors(files, capsys):
    cert = files["dir"] / "junk.json"
    cert.write_text("{\"hello\": 1}")
    assert run(capsys, "verify", files["p6"], cert)[0] == 2
    cert.write_text("not json")
    assert run(capsys, "verify", files["p6"], cert)[0] == 2


def test_verify_rejects_graph_mismatch(files, capsys):
    out = files["dir"] / "gms.el"
    run(capsys, "gen", "gms", "--m", "2", "--s", "1", "-o", out)
    assert run(capsys, "verify", files["figure2"], files["dir"] / "gms.cert.json")[0] in (1, 2)


def test_leaf_path_report_verifies(files, capsys):
    cert = files["dir"] / "ds.sp.json"
    code, _, _ = run(capsys, "sp", files["ds"], "--leaf-paths", "-o", cert)
    assert code == 0
    obj = json.loads(cert.read_text())
    assert sorted(map(sorted, obj["certificate"]["parts"])) == [[0, 2, 3], [1, 4, 5]]
    assert run(capsys, "verify", files["ds"], cert)[0] == 0


def test_every_written_artifact_verifies(files, capsys):
    written = []
    for cmd, key in [("pd", "figure1"), ("zf", "figure1"), ("dom", "figure1"), ("ell", "figure2"),
                     ("zell", "ds"), ("sp", "ds"), ("pd", "p5"), ("ell", "k33")]:
        path = files["dir"] / f"{cmd}-{key}.json"
        extra = ["--leaf-paths"] if cmd == "sp" else []
        assert run(capsys, cmd, files[key], "-o", path, *extra)[0] == 0
        written.append((files[key], path))
    for graph, path in written:
        code, out, _ = run(capsys, "verify", graph, path)
        assert code == 0, (path, out)


# -- sweeps ------------------------------------------------------------------------------------------


def test_sweep_vizing_small(files, capsys, monkeypatch):
    monkeypatch.chdir(files["dir"])
    code, obj = run_json(capsys, "sweep-trees", "--max-n", "5", "--check", "vizing")
    assert code == 0
    assert obj["summary"]["vizing"] == {"instances": 49, "counterexamples": 0, "inconclusive": 0}


def test_sweep_single_checks_and_resume(files, capsys, monkeypatch):
    monkeypatch.chdir(files["dir"])
    results = files["dir"] / "res.jsonl"
    argv = ["sweep-trees", "--max-n", "7", "--check", "ellT_eq_sp", "--check", "condition1_exists",
            "--check", "thm1", "--results", results]
    code, first = run_json(capsys, *argv)
    assert code == 0 and first["trees"] == 1 + 1 + 2 + 3 + 6 + 11
    lines = results.read_text().splitlines()
    assert len(lines) == 3 * 24
    code, second = run_json(capsys, *argv)
    assert second == first and len(results.read_text().splitlines()) == len(lines)


def test_sweep_caps(capsys):
    assert run(capsys, "sweep-trees", "--max-n", "12", "--check", "vizing")[0] == 4
    assert run(capsys, "sweep-trees", "--max-n", "11")[0] == 4


def test_sweep_writes_counterexamples(files, capsys, monkeypatch):
    monkeypatch.chdir(files["dir"])
    import powerdom.cli as cli

    def broken(check, trees, budget):
        return {"check": check, "trees": ["x"], "ok": False}

    monkeypatch.setattr(cli, "sweep_one", broken)
    code, _, _ = run(capsys, "sweep-trees", "--max-n", "3", "--counterexamples", "cx.jsonl")
    assert code == 1 and (files["dir"] / "cx.jsonl").read_text().count("\n") == 2


# -- cut-sets -------------------------------------------------------------------------------------------


def test_cutset_two_hubs(files, capsys):
    code, out, _ = run(capsys, "cutset", files["sec4"], "--cut", "x1,x2", "--ci", "x1", "--ci", "x2")
    assert code == 0 and "generalized upper: 4" in out
    code, obj = run_json(capsys, "cutset", files["sec4"], "--cut", "x1,x2")
    rep = obj["reports"][0]
    assert {b["name"]: b["value"] for b in rep["bounds"]}["upper"] == 6


def test_cutset_path(files, capsys):
    code, out, _ = run(capsys, "cutset", files["p5"], "--cut", "2")
    assert code == 0 and "sandwich: 1 <= gamma_P = 1 <= 3" in out
    assert run(capsys, "cutset", files["p5"], "--cut", "0")[0] == 2


# -- determinism ------------------------------------------------------------------------------------------


def test_output_bytes_are_deterministic(files, capsys):
    for argv in (["pd", files["figure1"], "--json"], ["gen", "gms", "--m", "3", "--s", "2", "--json"],
                 ["product", files["ds"], files["p3"], "--check", "lemma2", "--json"],
                 ["cutset", files["sec4"], "--cut", "x1,x2", "--json"]):
        a = run(capsys, *argv)
        b = run(capsys, *argv)
        assert a == b
