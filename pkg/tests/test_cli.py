"""Command-line pipeline: subcommands, config precedence, reproducible outputs."""

import json

import pytest

from querykg import fixtures
from querykg.cli import main


def run(argv):
    return main([str(a) for a in argv])


def pipeline_files(tmp_path):
    return {
        "triples": tmp_path / "triples.jsonl",
        "graph": tmp_path / "graph.json",
        "seq": tmp_path / "seq.jsonl",
        "kbc": tmp_path / "kbc.jsonl",
        "stats": tmp_path / "stats.json",
    }


def run_pipeline(tmp_path, query):
    f = pipeline_files(tmp_path)
    assert run(["extract", "--docs", fixtures.einstein_docs(),
                "--coref", fixtures.einstein_coref(), "--out", f["triples"]]) == 0
    assert run(["build", "--docs", fixtures.einstein_docs(), "--triples", f["triples"],
                "--query", query, "--out", f["graph"]]) == 0
    assert run(["linearize", "--graph", f["graph"], "--out", f["seq"]]) == 0
    assert run(["mask", "--linearization", f["seq"], "--mode", "nodes",
                "--p-mask", "0.5", "--seed", "3", "--out", f["kbc"]]) == 0
    assert run(["stats", "--graph", f["graph"], "--out", f["stats"]]) == 0
    return f


def test_pipeline_end_to_end(tmp_path, capsys):
    query = fixtures.einstein_query().read_text().strip()
    f = run_pipeline(tmp_path, query)
    for path in f.values():
        assert path.exists() and path.stat().st_size > 0

    graph = json.loads(f["graph"].read_text())
    assert graph["config"]["tau_node"] == 0.85
    names = {n["name"] for n in graph["nodes"]}
    assert "albert einstein" in names

    seq = json.loads(f["seq"].read_text())
    assert seq["tokens"][:9] == [
        "<sub>", "albert", "einstein", "<obj>", "the", "nobel", "prize", "<pred>", "won",
    ]

    stats = json.loads(f["stats"].read_text())
    assert stats["accepted"] == 2 and stats["rejected"] == 2

    out = capsys.readouterr().out
    assert "config:" in out and "seed:" in out


def test_every_output_has_provenance_sidecar(tmp_path):
    query = fixtures.einstein_query().read_text().strip()
    f = run_pipeline(tmp_path, query)
    for path in f.values():
        meta = json.loads((path.parent / (path.name + ".meta.json")).read_text())
        assert meta["command"] in ("extract", "build", "linearize", "mask", "stats")
        assert "tau_node" in meta["config"]
        # no absolute paths may leak into provenance
        assert not any("path" in k for k in meta["config"])
        assert tmp_path.name not in json.dumps(meta)


def test_rerun_outputs_byte_identical(tmp_path):
    query = fixtures.einstein_query().read_text().strip()
    (tmp_path / "a").mkdir()
    (tmp_path / "b").mkdir()
    a = run_pipeline(tmp_path / "a", query)
    b = run_pipeline(tmp_path / "b", query)
    for key in a:
        assert a[key].read_bytes() == b[key].read_bytes()
        meta_a = (a[key].parent / (a[key].name + ".meta.json")).read_bytes()
        meta_b = (b[key].parent / (b[key].name + ".meta.json")).read_bytes()
        assert meta_a == meta_b


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("tau_rel = 0.0\nseed = 9\n# comment line\n")
    f = pipeline_files(tmp_path)
    query = fixtures.einstein_query().read_text().strip()
    assert run(["extract", "--docs", fixtures.einstein_docs(),
                "--coref", fixtures.einstein_coref(), "--out", f["triples"]]) == 0

    # file overrides the 0.30 default: all four triples accepted
    assert run(["build", "--docs", fixtures.einstein_docs(), "--triples", f["triples"],
                "--query", query, "--config", cfg, "--out", f["graph"]]) == 0
    graph = json.loads(f["graph"].read_text())
    assert graph["config"]["tau_rel"] == 0.0 and graph["config"]["seed"] == 9
    assert graph["accepted"] == 4

    # flag overrides the file
    assert run(["build", "--docs", fixtures.einstein_docs(), "--triples", f["triples"],
                "--query", query, "--config", cfg, "--tau-rel", "0.99",
                "--out", f["graph"]]) == 0
    graph = json.loads(f["graph"].read_text())
    assert graph["config"]["tau_rel"] == 0.99
    assert graph["accepted"] == 0


def test_config_file_unknown_key_fails(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("tau_rell = 0.5\n")
    f = pipeline_files(tmp_path)
    code = run(["extract", "--docs", fixtures.einstein_docs(), "--config", cfg,
                "--out", f["triples"]])
    assert code == 1


def test_missing_input_exits_one(tmp_path, capsys):
    code = run(["linearize", "--graph", tmp_path / "nope.json",
                "--out", tmp_path / "out.jsonl"])
    assert code == 1
    assert capsys.readouterr().err.strip()


def test_shuffle_and_sweep_commands(tmp_path):
    f = pipeline_files(tmp_path)
    query = fixtures.web50_query().read_text().strip()
    assert run(["extract", "--docs", fixtures.web50_docs(), "--out", f["triples"]]) == 0

    shuffle_out = tmp_path / "shuffle.json"
    assert run(["shuffle", "--docs", fixtures.web50_docs(), "--triples", f["triples"],
                "--query", query, "--seed", "5", "--out", shuffle_out]) == 0
    rep = json.loads(shuffle_out.read_text())
    assert rep["accepted_delta"] == 0 and rep["weight_sum_delta"] == 0

    sweep_out = tmp_path / "sweep.json"
    assert run(["sweep", "--docs", fixtures.web50_docs(), "--triples", f["triples"],
                "--query", query, "--target", fixtures.web50_target(),
                "--cuts", "1,5,10,50", "--out", sweep_out]) == 0
    rep = json.loads(sweep_out.read_text())
    fracs = [row["missing_fraction"] for row in rep["cuts"]]
    assert fracs == sorted(fracs, reverse=True)

    # parallel evaluation must not change the result
    sweep_par = tmp_path / "sweep_par.json"
    assert run(["sweep", "--docs", fixtures.web50_docs(), "--triples", f["triples"],
                "--query", query, "--target", fixtures.web50_target(),
                "--cuts", "1,5,10,50", "--jobs", "4", "--out", sweep_par]) == 0
    assert json.loads(sweep_par.read_text())["cuts"] == rep["cuts"]


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "querykg" in capsys.readouterr().out
