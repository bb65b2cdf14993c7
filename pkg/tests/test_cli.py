import json

import pytest

from linksched.cli import CSV_HEADER, main


def run_cli(args):
    return main(args)


class TestEvacuateCommand:
    def test_spider_table_and_csv(self, tmp_path, capsys):
        out = tmp_path / "evac.csv"
        code = run_cli(
            ["evacuate", "--spider", "3", "--policies", "nsb,mwm", "--csv", str(out)]
        )
        assert code == 0
        printed = capsys.readouterr().out
        assert "spider3" in printed
        lines = out.read_text().splitlines()
        assert lines[0] == CSV_HEADER
        assert lines[1].startswith("evacuation,spider3,nsb,")
        assert ",4,4," in lines[1]  # evac_time=4, delta0=4
        assert lines[2].startswith("evacuation,spider3,mwm,")
        assert ",6,4," in lines[2]

    def test_dimacs_file_source(self, tmp_path):
        col = tmp_path / "tri.col"
        col.write_text("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n")
        out = tmp_path / "out.csv"
        code = run_cli(
            ["evacuate", "--dimacs", str(col), "--policies", "nsb", "--csv", str(out)]
        )
        assert code == 0
        row = out.read_text().splitlines()[1]
        assert row.startswith("evacuation,tri,nsb,")
        assert ",3,2," in row  # triangle drains in 3, workload bound 2

    def test_missing_source_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            run_cli(["evacuate", "--policies", "nsb"])
        assert exc.value.code == 2

    def test_empty_policies_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            run_cli(["evacuate", "--spider", "2", "--policies", ","])
        assert exc.value.code == 2

    def test_unknown_policy_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            run_cli(["evacuate", "--spider", "2", "--policies", "wfq"])
        assert exc.value.code == 2

    def test_bad_dimacs_path_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            run_cli(["evacuate", "--dimacs", "/nonexistent.col", "--policies", "nsb"])
        assert exc.value.code == 2

    def test_topology_source_requires_max_mult(self):
        with pytest.raises(SystemExit) as exc:
            run_cli(["evacuate", "--grid", "2x2", "--policies", "nsb"])
        assert exc.value.code == 2

    def test_grid_with_multiplicities(self, tmp_path):
        out = tmp_path / "grid.csv"
        code = run_cli(
            ["evacuate", "--grid", "2x2", "--max-mult", "3", "--seed", "5",
             "--policies", "nsb,lcnsb,mvm", "--csv", str(out)]
        )
        assert code == 0
        assert len(out.read_text().splitlines()) == 4


class TestThroughputCommand:
    def test_row_counts_and_determinism(self, tmp_path):
        out1 = tmp_path / "a.csv"
        out2 = tmp_path / "b.csv"
        args = [
            "throughput", "--grid", "2x2", "--policies", "nsb,mm",
            "--traffic", "poisson", "--lambdas", "0.1,0.2",
            "--slots", "400", "--warmup", "100", "--seeds", "1,2",
        ]
        assert run_cli(args + ["--csv", str(out1)]) == 0
        assert run_cli(args + ["--csv", str(out2)]) == 0
        text1 = out1.read_text()
        assert text1 == out2.read_text()
        lines = text1.splitlines()
        assert lines[0] == CSV_HEADER
        detail = [l for l in lines[1:] if l.startswith("throughput,")]
        summary = [l for l in lines[1:] if l.startswith("throughput-summary,")]
        assert len(detail) == 2 * 2 * 2  # policies x lambdas x seeds
        assert len(summary) == 2 * 2  # policies x lambdas

    def test_zero_lambda_rejected(self):
        with pytest.raises(SystemExit) as exc:
            run_cli(
                ["throughput", "--grid", "2x2", "--policies", "nsb",
                 "--traffic", "poisson", "--lambdas", "0.0",
                 "--slots", "100", "--warmup", "10", "--seeds", "1"]
            )
        assert exc.value.code == 2

    def test_warmup_must_be_below_slots(self):
        with pytest.raises(SystemExit) as exc:
            run_cli(
                ["throughput", "--grid", "2x2", "--policies", "nsb",
                 "--traffic", "poisson", "--lambdas", "0.1",
                 "--slots", "100", "--warmup", "100", "--seeds", "1"]
            )
        assert exc.value.code == 2

    def test_ci_scale_overrides_slots(self, tmp_path, capsys):
        out = tmp_path / "ci.csv"
        code = run_cli(
            ["throughput", "--grid", "2x2", "--policies", "mm",
             "--traffic", "poisson", "--lambdas", "0.05", "--scale", "ci",
             "--seeds", "3", "--csv", str(out)]
        )
        assert code == 0
        assert ",20000,10000," in out.read_text().splitlines()[1]

    def test_parallel_jobs_match_serial_output(self, tmp_path):
        base = [
            "throughput", "--grid", "2x2", "--policies", "nsb,gmm",
            "--traffic", "poisson", "--lambdas", "0.1,0.2",
            "--slots", "500", "--warmup", "100", "--seeds", "1,2",
        ]
        serial = tmp_path / "serial.csv"
        pooled = tmp_path / "pooled.csv"
        assert run_cli(base + ["--csv", str(serial)]) == 0
        assert run_cli(base + ["--jobs", "2", "--csv", str(pooled)]) == 0
        assert serial.read_bytes() == pooled.read_bytes()


class TestConfigAndEnv:
    def test_config_supplies_missing_options(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"policies": "nsb", "spider": 2}))
        out = tmp_path / "c.csv"
        code = run_cli(["evacuate", "--config", str(cfg), "--csv", str(out)])
        assert code == 0
        assert "spider2" in out.read_text()

    def test_cli_flag_overrides_config(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"policies": "mwm", "spider": 2}))
        out = tmp_path / "c.csv"
        code = run_cli(
            ["evacuate", "--config", str(cfg), "--policies", "nsb", "--csv", str(out)]
        )
        assert code == 0
        body = out.read_text()
        assert ",nsb," in body and ",mwm," not in body

    def test_unknown_config_key_rejected(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"polcies": "nsb"}))
        with pytest.raises(SystemExit) as exc:
            run_cli(["evacuate", "--config", str(cfg), "--spider", "2"])
        assert exc.value.code == 2

    def test_outdir_env_resolves_relative_csv(self, tmp_path, monkeypatch):
        monkeypatch.setenv("LINKSCHED_OUTDIR", str(tmp_path))
        code = run_cli(
            ["evacuate", "--spider", "2", "--policies", "nsb", "--csv", "sub/res.csv"]
        )
        assert code == 0
        assert (tmp_path / "sub" / "res.csv").exists()


class TestValidateCommand:
    def test_single_suite_passes(self, capsys):
        code = run_cli(["validate", "--suite", "oracle", "--count", "25"])
        assert code == 0
        assert "oracle: checked=25 violations=0 [PASS]" in capsys.readouterr().out

    def test_all_suites_small(self, capsys):
        code = run_cli(["validate", "--count", "8"])
        assert code == 0
        out = capsys.readouterr().out
        for name in ("oracle", "coverage", "framedrain", "heavyset", "bipartite"):
            assert f"{name}: checked=8" in out

    def test_unknown_suite_rejected(self):
        with pytest.raises(SystemExit) as exc:
            run_cli(["validate", "--suite", "nonesuch"])
        assert exc.value.code == 2
