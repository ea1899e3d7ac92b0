import json

import pytest

from metasched.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCpmCommand:
    def test_table_output(self, capsys):
        code, out, _ = run_cli(capsys, "cpm", "--instance", "table1")
        assert code == 0
        assert "makespan: 126" in out
        assert "critical: 4, 10, 17" in out

    def test_json_output(self, capsys):
        code, out, _ = run_cli(capsys, "cpm", "--instance", "table1", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["makespan"] == 126
        assert payload["critical"] == [4, 10, 17]
        assert len(payload["rows"]) == 17

    def test_csv_output(self, capsys):
        code, out, _ = run_cli(capsys, "cpm", "--instance", "table1", "--format", "csv")
        assert code == 0
        assert out.splitlines()[0] == "activity,es,ef,ls,lf,tf"

    def test_missing_file_is_domain_error(self, capsys):
        code, _, err = run_cli(capsys, "cpm", "--instance", "no-such-file.json")
        assert code == 1
        assert "error:" in err


class TestRcpspCommand:
    def test_fixed_list_decode(self, capsys):
        order = "4,10,1,8,3,17,7,9,11,5,6,2,12,14,16,13,15"
        code, out, _ = run_cli(
            capsys, "rcpsp", "--instance", "table1", "--capacity", "7", "--list", order
        )
        assert code == 0
        assert "makespan: 151" in out

    def test_search_run_json(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "rcpsp",
            "--instance", "table1",
            "--capacity", "17",
            "--algo", "ts",
            "--seed", "1",
            "--max-evals", "300",
            "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["makespan"] == 126  # capacity 17 is non-binding
        assert len(payload["start_times"]) == 17

    def test_seed_required_without_list(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["rcpsp", "--instance", "table1", "--capacity", "7"])
        assert exc.value.code == 2

    def test_zero_capacity_is_domain_error(self, capsys):
        code, _, err = run_cli(
            capsys, "rcpsp", "--instance", "table1", "--capacity", "0",
            "--list", "4,10,1,8,3,17,7,9,11,5,6,2,12,14,16,13,15",
        )
        assert code == 1
        assert "capacity" in err

    def test_trace_file(self, capsys, tmp_path):
        trace = tmp_path / "trace.csv"
        code, _, _ = run_cli(
            capsys, "rcpsp", "--instance", "table1", "--capacity", "7",
            "--algo", "sa", "--seed", "2", "--max-evals", "200", "--trace", str(trace),
        )
        assert code == 0
        lines = trace.read_text().splitlines()
        assert lines[0] == "eval,best_fitness"
        assert len(lines) > 1


class TestTctpCommand:
    def test_run_with_indirect_cost(self, capsys):
        code, out, _ = run_cli(
            capsys, "tctp", "--instance", "table2", "--indirect-cost", "230",
            "--algo", "ga", "--seed", "3", "--max-evals", "500", "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["total_cost"] == payload["duration"] * 230 + payload["direct_cost"]
        assert len(payload["modes"]) == 18

    def test_indirect_cost_required(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["tctp", "--instance", "table2", "--seed", "1"])
        assert exc.value.code == 2

    def test_seed_required(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["tctp", "--instance", "table2", "--indirect-cost", "230"])
        assert exc.value.code == 2

    def test_emit_front(self, capsys, tmp_path):
        front = tmp_path / "front.csv"
        code, _, _ = run_cli(
            capsys, "tctp", "--instance", "table2", "--indirect-cost", "0",
            "--seed", "1", "--max-evals", "500", "--emit-front", str(front),
        )
        assert code == 0
        lines = front.read_text().splitlines()
        assert lines[0] == "duration,cost,modes"
        points = [tuple(int(x) for x in line.split(",")[:2]) for line in lines[1:]]
        assert points == sorted(points)


class TestConfigResolution:
    def test_config_file_flag(self, capsys, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"sa": {"initial_temperature": 50.0}}))
        code, out, _ = run_cli(
            capsys, "tctp", "--instance", "table2", "--indirect-cost", "230",
            "--algo", "sa", "--seed", "4", "--max-evals", "300",
            "--config", str(config), "--format", "json",
        )
        assert code == 0
        assert json.loads(out)["duration"] > 0

    def test_env_var_config(self, capsys, tmp_path, monkeypatch):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"ga": {"population_size": 10}}))
        monkeypatch.setenv("METASCHED_CONFIG", str(config))
        code, _, _ = run_cli(
            capsys, "tctp", "--instance", "table2", "--indirect-cost", "230",
            "--algo", "ga", "--seed", "4", "--max-evals", "300",
        )
        assert code == 0

    def test_invalid_config_value_is_domain_error(self, capsys, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"ga": {"tournament_size": 1}}))
        code, _, err = run_cli(
            capsys, "tctp", "--instance", "table2", "--indirect-cost", "230",
            "--algo", "ga", "--seed", "4", "--config", str(config),
        )
        assert code == 1
        assert "tournament_size" in err


class TestOracleCommand:
    def test_cpm_oracle(self, capsys):
        code, out, _ = run_cli(capsys, "oracle", "cpm", "--instance", "table1")
        assert code == 0
        assert "makespan: 126" in out

    def test_rcpsp_oracle_restricted(self, capsys):
        code, out, _ = run_cli(
            capsys, "oracle", "rcpsp", "--instance", "table1",
            "--activities", "1-8", "--capacity", "3",
        )
        assert code == 0
        assert "optimal makespan: 129" in out

    def test_tctp_oracle_restricted(self, capsys):
        code, out, _ = run_cli(
            capsys, "oracle", "tctp", "--instance", "table2",
            "--activities", "1-6", "--indirect-cost", "0",
        )
        assert code == 0
        assert "36,88600" in out
        assert "minimum total cost at I=0: 63400" in out

    def test_oversized_oracle_is_domain_error(self, capsys):
        code, _, err = run_cli(capsys, "oracle", "tctp", "--instance", "table2")
        assert code == 1
        assert "exceeds" in err


class TestBenchCommand:
    def test_bench_writes_reports(self, capsys, tmp_path):
        spec = tmp_path / "spec.json"
        spec.write_text(
            json.dumps(
                {
                    "problem": {"kind": "tctp", "instance": "table2", "indirect_cost": 230},
                    "seeds": [1, 2],
                    "max_evaluations": 200,
                }
            )
        )
        out_dir = tmp_path / "out"
        code, out, _ = run_cli(capsys, "bench", "--spec", str(spec), "--out", str(out_dir))
        assert code == 0
        for name in ("report.json", "summary.csv", "front.csv"):
            assert (out_dir / name).exists()


class TestInstancesCommand:
    def test_list(self, capsys):
        code, out, _ = run_cli(capsys, "instances", "list")
        assert code == 0
        assert "table1" in out and "table2" in out

    def test_export_roundtrip(self, capsys, tmp_path):
        target = tmp_path / "copy.json"
        code, _, _ = run_cli(capsys, "instances", "export", "table1", str(target))
        assert code == 0
        code, out, _ = run_cli(capsys, "cpm", "--instance", str(target))
        assert code == 0
        assert "makespan: 126" in out

    def test_export_without_path_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["instances", "export", "table1"])
        assert exc.value.code == 2


def test_no_command_prints_help(capsys):
    code, _, err = run_cli(capsys)
    assert code == 2
    assert "usage" in err.lower()


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    out = capsys.readouterr().out
    assert "metasched 0.1.0" in out
    assert "aoa-v1" in out and "tctp-v1" in out
