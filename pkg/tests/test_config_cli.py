"""Configuration parsing, presets, table rendering, and exit codes."""

import json

import pytest

import wlantcp.cli as cli_mod
from wlantcp.cli import build_parser, main, run_tables
from wlantcp.config import ConfigError, RunConfig, parse_config, render_config
from wlantcp.model import CollisionPolicy
from wlantcp.phy import Fidelity
from wlantcp.presets import PRESETS, TABLE1, TABLE2, TABLE3

TINY = """{
  "profile": "802.11b@11",
  "downloads": [16, 16],
  "uploads": [16],
  "replications": 2,
  "horizon_s": 3.0,
  "seed": 5
}"""


def test_parse_and_render_round_trip():
    config = RunConfig(profile="802.11g@54", downloads=(24, 20),
                       uploads=(16,), mode="analyze", replications=7,
                       horizon_s=12.5, seed=9,
                       collision_policy=CollisionPolicy.PAPER_SIMPLE,
                       fidelity=Fidelity.STANDARDS, n_max=30,
                       output_format="csv")
    assert parse_config(render_config(config)) == config
    defaults = RunConfig(profile="802.11b@11", downloads=(24,))
    assert parse_config(render_config(defaults)) == defaults


def test_parse_applies_defaults():
    config = parse_config('{"profile": "802.11b@11", "downloads": [24]}')
    assert config.mode == "both"
    assert config.replications == 30
    assert config.horizon_s == 20.0
    assert config.seed == 1
    assert config.collision_policy is CollisionPolicy.MIXTURE
    assert config.fidelity is Fidelity.PAPER
    assert config.n_max == 40
    assert config.output_format == "markdown"
    assert config.scenario.w_down == 24


@pytest.mark.parametrize("text,fragment", [
    ('{"profile": "802.11b@11"}', "at least one connection"),
    ('{"profile": "802.11b@11", "downloads": []}', "at least one"),
    ('{"profile": "802.11b@11", "downloads": [0]}', "windows must be"),
    ('{"profile": "802.11b@11", "downloads": [-3]}', "windows must be"),
    ('{"profile": "802.11b@11", "downloads": [1.5]}', "windows must be"),
    ('{"downloads": [24]}', "missing required key 'profile'"),
    ('{"profile": "802.11x@9", "downloads": [24]}', "unknown profile"),
    ('{"profile": "802.11b@11", "downloads": [24], "x": 1}', "unknown key"),
    ('{"profile": "802.11b@11", "downloads": [24], "mode": "fast"}',
     "mode must be"),
    ('{"profile": "802.11b@11", "downloads": [24], "replications": 0}',
     "replications"),
    ('{"profile": "802.11b@11", "downloads": [24], "replications": true}',
     "wrong type"),
    ('{"profile": "802.11b@11", "downloads": [24], "horizon_s": -1}',
     "horizon_s"),
    ('{"profile": "802.11b@11", "downloads": [24], "n_max": 5}', "n_max"),
    ('{"profile": "802.11b@11", "downloads": [24], "format": "yaml"}',
     "format must be"),
    ('{"profile": "802.11b@11", "downloads": [24], '
     '"collision_policy": "x"}', "CollisionPolicy"),
    ('[1, 2]', "JSON object"),
    ('{oops}', "malformed config"),
])
def test_parse_rejections(text, fragment):
    with pytest.raises(ConfigError, match=fragment):
        parse_config(text)


def test_parse_errors_carry_line_context():
    text = ('{\n  "profile": "802.11b@11",\n  "downloads": [24],\n'
            '  "bogus_key": 3\n}')
    with pytest.raises(ConfigError, match=r"line 4"):
        parse_config(text)
    with pytest.raises(ConfigError, match=r"line 1, column"):
        parse_config("{nope}")


def test_runconfig_direct_validation():
    with pytest.raises(ConfigError):
        RunConfig(profile="802.11b@11")
    with pytest.raises(ConfigError):
        RunConfig(profile="802.11b@11", downloads=(24,), n_max=9)
    with pytest.raises(ConfigError):
        RunConfig(profile="802.11b@11", downloads=(24,), replications=0)


def test_preset_window_populations():
    assert len(TABLE1) == 6 and len(TABLE2) == 8 and len(TABLE3) == 8
    totals1 = [(r.w_down, r.w_up) for r in TABLE1]
    assert totals1 == [(112, 184), (116, 184), (128, 184), (188, 116),
                       (176, 124), (176, 128)]
    totals2 = [(r.w_down, r.w_up) for r in TABLE2]
    assert totals2 == [(112, 184), (148, 116), (128, 184), (188, 148),
                       (128, 184), (188, 116), (176, 124), (128, 176)]
    assert [r.profile for r in TABLE1] == (
        ["802.11b@11"] * 2 + ["802.11b@5.5"] * 2 + ["802.11b@2"] * 2)
    assert [r.profile for r in TABLE2] == (
        ["802.11g@54"] * 2 + ["802.11g@48"] * 2 + ["802.11g@36"] * 2
        + ["802.11g@12"] * 2)
    for row in TABLE1 + TABLE2:
        assert not row.split and row.ref_aggregate_mbps is not None
    for t2, t3 in zip(TABLE2, TABLE3):
        assert t3.split and t3.ref_download_mbps is not None
        assert (t3.downloads, t3.uploads) == (t2.downloads, t2.uploads)
    assert PRESETS["table1"] is TABLE1


def test_run_tables_analyze_only():
    result = run_tables("table1", mode="analyze")
    assert result.exit_code == 0
    assert result.within_tolerance and not result.had_errors
    assert len(result.rows) == 6
    for row in result.rows:
        assert row["status"] == "ok"
        assert row["analysis_mbps"] is not None
        assert row["sim_mbps"] is None and row["rel_err_pct"] is None
    assert result.document.count("\n") >= 8  # header, rule, six rows


def test_run_tables_config_modes(tmp_path):
    config = parse_config(TINY)
    analyzed = run_tables(config, mode="analyze")
    assert analyzed.exit_code == 0
    simulated = run_tables(config, mode="simulate")
    assert simulated.exit_code == 0
    row = simulated.rows[0]
    assert row["analysis_mbps"] is None
    assert row["sim_mbps"] is not None and row["sim_ci_mbps"] is not None
    both_loose = run_tables(config, mode="both", tolerance_pct=50.0)
    assert both_loose.exit_code == 0
    assert both_loose.rows[0]["rel_err_pct"] is not None
    both_tight = run_tables(config, mode="both", tolerance_pct=1e-9)
    assert both_tight.exit_code == 1
    assert both_tight.rows[0]["status"] == "outside-tolerance"


def test_run_tables_single_replication_has_no_ci():
    config = parse_config(TINY)
    result = run_tables(config, mode="simulate", replications=1)
    assert result.exit_code == 0
    assert result.rows[0]["sim_mbps"] is not None
    assert result.rows[0]["sim_ci_mbps"] is None


def test_run_tables_flushes_partial_results_on_row_errors(monkeypatch):
    def boom(*args, **kwargs):
        raise RuntimeError("induced failure")

    monkeypatch.setattr(cli_mod, "throughput", boom)
    result = run_tables("table1", mode="analyze")
    assert result.had_errors and result.exit_code == 2
    assert len(result.rows) == 6
    for row in result.rows:
        assert row["status"].startswith("error: induced failure")
    assert "induced failure" in result.document


def test_run_tables_rejects_unknown_preset():
    with pytest.raises(ConfigError, match="unknown preset"):
        run_tables("table9")


def test_csv_and_json_formats():
    csv_doc = run_tables("table1", mode="analyze",
                         output_format="csv").document
    header = csv_doc.splitlines()[0]
    assert header == ("row,profile,w_down,w_up,ref_mbps,analysis_mbps,"
                      "sim_mbps,sim_ci_mbps,rel_err_pct,status")
    assert len(csv_doc.splitlines()) == 7
    json_doc = run_tables("table3", mode="analyze",
                          output_format="json").document
    doc = json.loads(json_doc)
    assert doc["within_tolerance"] is True
    assert doc["mode"] == "analyze"
    assert doc["collision_policy"] == "mixture"
    assert len(doc["rows"]) == 8
    assert doc["rows"][0]["analysis_down_mbps"] is not None
    assert "version" in doc and "seed" in doc
    split_header = run_tables("table3", mode="analyze",
                              output_format="csv").document.splitlines()[0]
    assert split_header.startswith("row,profile,w_down,w_up,ref_down_mbps")


def test_cli_main_analyze_and_exit_codes(tmp_path, capsys):
    code = main(["--preset", "table1", "--mode", "analyze"])
    out = capsys.readouterr().out
    assert code == 0
    assert "b-1" in out and "802.11b@11" in out
    config_path = tmp_path / "run.json"
    config_path.write_text(TINY, encoding="utf-8")
    code = main(["--config", str(config_path), "--mode", "analyze",
                 "--format", "csv"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.startswith("row,profile")


def test_cli_main_simulation_tolerance_gate(tmp_path, capsys):
    config_path = tmp_path / "run.json"
    config_path.write_text(TINY, encoding="utf-8")
    assert main(["--config", str(config_path), "--tolerance", "75"]) == 0
    capsys.readouterr()
    assert main(["--config", str(config_path), "--tolerance", "1e-7"]) == 1
    capsys.readouterr()


def test_cli_main_config_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"profile": "802.11b@11"}', encoding="utf-8")
    assert main(["--config", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "error:" in err
    assert main(["--config", str(tmp_path / "missing.json")]) == 2
    capsys.readouterr()


def test_cli_output_is_byte_identical_across_runs(tmp_path, capsys):
    config_path = tmp_path / "run.json"
    config_path.write_text(TINY, encoding="utf-8")
    args = ["--config", str(config_path), "--format", "json",
            "--tolerance", "60"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    second = capsys.readouterr().out
    assert first == second
    doc = json.loads(first)
    assert doc["rows"][0]["sim_mbps"] is not None


def test_cli_flag_overrides_change_the_run(tmp_path, capsys):
    config_path = tmp_path / "run.json"
    config_path.write_text(TINY, encoding="utf-8")
    base = ["--config", str(config_path), "--mode", "analyze",
            "--format", "json"]
    assert main(base) == 0
    default_doc = json.loads(capsys.readouterr().out)
    assert main(base + ["--collision-policy", "paper",
                        "--fidelity", "standards"]) == 0
    flipped_doc = json.loads(capsys.readouterr().out)
    assert default_doc["rows"][0]["analysis_mbps"] != \
        flipped_doc["rows"][0]["analysis_mbps"]
    assert flipped_doc["collision_policy"] == "paper"
    assert flipped_doc["fidelity"] == "standards"


def test_cli_beta_dump(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("WLANTCP_OUTDIR", str(tmp_path))
    assert main(["--preset", "table2", "--mode", "analyze",
                 "--beta-dump", "beta.csv"]) == 0
    capsys.readouterr()
    lines = (tmp_path / "beta.csv").read_text().splitlines()
    assert lines[0] == "k,beta,residual"
    assert len(lines) == 42  # header plus k = 1..41
    first = lines[1].split(",")
    assert float(first[1]) == pytest.approx(2 / 17, rel=1e-12)


def test_cli_parser_rejects_conflicting_sources():
    parser = build_parser()
    with pytest.raises(SystemExit):
        parser.parse_args(["--config", "a.json", "--preset", "table1"])
    with pytest.raises(SystemExit):
        parser.parse_args([])
