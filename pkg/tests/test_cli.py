import json

import pytest

from chainmeter import (
    block_capacity,
    centralization_level,
    cumulative_share_curve,
    export_report,
    max_throughput,
    preset,
    propagation_limited_throughput,
    throughput_upper_bound,
    tx_latency,
)
from chainmeter.cli import EXIT_INPUT, EXIT_OK, EXIT_RUNTIME, EXIT_USAGE, main, run
from chainmeter.presets import bitcoin_miner_distribution

BASE_CONFIG = {
    "miners": [
        {"miner_id": "a", "hash_power_share": 0.5},
        {"miner_id": "b", "hash_power_share": 0.5},
    ],
    "chain": {"block_size_bytes": 1_048_576, "tx_size_bytes": 513.86, "block_interval_s": 600},
    "net": {"bandwidth_bytes_per_s": 712_500, "latency_s": 0.1},
    "duration_blocks": 30,
    "topology_degree": 1,
    "seed": 5,
}


def floats_in(text):
    out = []
    for token in text.replace(",", " ").split():
        try:
            out.append(float(token))
        except ValueError:
            pass
    return out


@pytest.fixture
def dist_csv(tmp_path):
    path = tmp_path / "dist.csv"
    export_report(bitcoin_miner_distribution(), str(path), "csv")
    return str(path)


@pytest.fixture
def config_json(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(BASE_CONFIG))
    return str(path)


@pytest.fixture
def full4_csv(tmp_path):
    path = tmp_path / "g.csv"
    clients = ["c1", "c2", "c3", "c4"]
    rows = ["from,to,count"] + [f"{a},{b},2" for i, a in enumerate(clients) for b in clients[i + 1:]]
    path.write_text("\n".join(rows) + "\n")
    return str(path)


class TestMetricsCommand:
    def test_bitcoin_shaped_file_gives_sixteen(self, dist_csv):
        outcome = run(["metrics", dist_csv, "--epsilon", "0.1"])
        assert outcome.exit_code == EXIT_OK
        row = outcome.stdout_report.splitlines()[1].split()
        assert row[0] == "0.1" and row[1] == "16"
        level = centralization_level(bitcoin_miner_distribution(), 0.1)
        assert float(row[2]) == level.covered_share

    def test_single_consensus_prints_one(self, dist_csv):
        outcome = run(["metrics", dist_csv, "--epsilon", "0", "--consensus", "single"])
        assert outcome.exit_code == EXIT_OK
        assert "central trust (single): N = 1" in outcome.stdout_report

    def test_curve_export(self, dist_csv, tmp_path):
        curve_path = tmp_path / "curve.csv"
        outcome = run(["metrics", dist_csv, "--curve", str(curve_path)])
        assert outcome.exit_code == EXIT_OK
        lines = curve_path.read_text().splitlines()
        expected = cumulative_share_curve(bitcoin_miner_distribution())
        assert len(lines) == 1 + len(expected)
        assert float(lines[-1].split(",")[1]) == 1.0

    def test_missing_file_exits_two_and_names_path(self, tmp_path, capsys):
        assert main(["metrics", str(tmp_path / "absent.csv")]) == EXIT_INPUT
        assert "absent.csv" in capsys.readouterr().err

    def test_unknown_flag_exits_one(self, dist_csv, capsys):
        assert main(["metrics", dist_csv, "--frobnicate"]) == EXIT_USAGE
        assert capsys.readouterr().err


class TestBoundCommand:
    def test_bitcoin_preset_matches_library(self):
        outcome = run(["bound", "--preset", "bitcoin"])
        assert outcome.exit_code == EXIT_OK
        chain, net = preset("bitcoin")
        lines = outcome.stdout_report.splitlines()
        values = {line.split(":")[0]: floats_in(line.split(":")[1])[0] for line in lines}
        assert values["confirmation latency L"] == tx_latency(chain)
        assert values["block capacity"] == block_capacity(chain)
        assert values["protocol throughput R"] == max_throughput(chain)
        assert values["propagation-limited throughput"] == propagation_limited_throughput(chain, net)
        assert values["bandwidth ceiling w/s"] == throughput_upper_bound(net, chain.tx_size_bytes)

    def test_ethereum_preset_latency(self):
        outcome = run(["bound", "--preset", "ethereum"])
        assert "confirmation latency L: 90.0 s" in outcome.stdout_report

    def test_explicit_flags(self):
        outcome = run([
            "bound", "--block-size-mib", "1", "--tx-size-bytes", "513.86",
            "--block-interval-s", "600", "--latency-s", "0.1", "--bandwidth-mbps", "5.7",
        ])
        assert outcome.exit_code == EXIT_OK
        assert "bandwidth ceiling w/s: 1386.5644338925 tx/s" in outcome.stdout_report

    def test_sweep_output_strictly_increasing(self, tmp_path):
        sweep = tmp_path / "sweep.csv"
        sizes = ",".join(str(2**k) for k in range(16, 24))
        outcome = run(["bound", "--preset", "bitcoin", "--sweep", sizes, "--sweep-out", str(sweep)])
        assert outcome.exit_code == EXIT_OK
        tps = [float(line.split(",")[1]) for line in sweep.read_text().splitlines()[1:]]
        assert all(a < b for a, b in zip(tps, tps[1:]))

    def test_sweep_without_out_is_usage_error(self, capsys):
        assert main(["bound", "--preset", "bitcoin", "--sweep", "65536"]) == EXIT_USAGE

    def test_non_positive_param_exits_two(self, capsys):
        code = main(["bound", "--block-size-bytes", "-5", "--tx-size-bytes", "500",
                     "--block-interval-s", "600"])
        assert code == EXIT_INPUT

    def test_missing_chain_flags_is_usage_error(self):
        assert main(["bound", "--tx-size-bytes", "500"]) == EXIT_USAGE


class TestShardCommand:
    def test_example_invocation(self):
        outcome = run(["shard", "--t", "15", "--n", "100", "--k", "4"])
        assert outcome.exit_code == EXIT_OK
        assert "CTP 1500.0" in outcome.stdout_report
        before, after = [line for line in outcome.stdout_report.splitlines() if "CTP" in line]
        assert before.split("CTP")[1].strip() == after.split("CTP")[1].strip()

    def test_too_many_shards_exits_two(self, capsys):
        assert main(["shard", "--t", "15", "--n", "100", "--k", "400"]) == EXIT_INPUT


class TestLightningCommand:
    def test_direct_alpha_one_is_baseline(self, full4_csv):
        outcome = run(["lightning", full4_csv, "--t", "10", "--alpha", "1", "--direct"])
        assert outcome.exit_code == EXIT_OK
        assert "effective throughput: 10.0 tx/s" in outcome.stdout_report
        assert "CTP: 40.0" in outcome.stdout_report

    def test_relay_reduces_onchain_twelve_to_eight(self, full4_csv):
        outcome = run(["lightning", full4_csv, "--t", "10", "--alpha", "2", "--relay", "R"])
        assert outcome.exit_code == EXIT_OK
        assert "on-chain transactions: direct 12 -> plan 8" in outcome.stdout_report
        assert "relay centralization N0: 1" in outcome.stdout_report

    def test_mode_flag_required(self, full4_csv, capsys):
        assert main(["lightning", full4_csv, "--t", "10", "--alpha", "1"]) == EXIT_USAGE


class TestSimulateCommand:
    def test_summary_matches_library(self, config_json):
        outcome = run(["simulate", config_json])
        assert outcome.exit_code == EXIT_OK
        from chainmeter import load_sim_config, run_simulation

        result = run_simulation(load_sim_config(config_json))
        assert repr(result.observed_tps) in outcome.stdout_report
        assert repr(result.stale_rate) in outcome.stdout_report

    def test_same_seed_byte_identical_exports(self, config_json, tmp_path):
        out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
        assert main(["simulate", config_json, "--out", str(out1)]) == EXIT_OK
        assert main(["simulate", config_json, "--out", str(out2)]) == EXIT_OK
        assert out1.read_bytes() == out2.read_bytes()

    def test_seed_override_changes_result(self, config_json, tmp_path):
        out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
        main(["simulate", config_json, "--out", str(out1)])
        main(["simulate", config_json, "--seed", "99", "--out", str(out2)])
        assert out1.read_bytes() != out2.read_bytes()

    def test_seed_range_merges_in_order(self, config_json, tmp_path):
        out = tmp_path / "all.json"
        outcome = run(["simulate", config_json, "--seeds", "3..5", "--out", str(out)])
        assert outcome.exit_code == EXIT_OK
        assert [line.split()[1][:-1] for line in outcome.stdout_report.splitlines()
                if line.startswith("seed ")] == ["3", "4", "5"]
        assert len(json.loads(out.read_text())) == 3

    def test_check_bound_passes(self, config_json):
        assert main(["simulate", config_json, "--check-bound"]) == EXIT_OK

    def test_topology_failure_exits_three(self, config_json, tmp_path, capsys):
        bad = json.loads(open(config_json).read())
        bad["miners"] = [{"miner_id": f"m{i}", "hash_power_share": 0.25} for i in range(4)]
        bad["topology_degree"] = 1  # 4 nodes, degree 1: always two disjoint edges
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(bad))
        assert main(["simulate", str(path)]) == EXIT_RUNTIME

    def test_invalid_config_exits_two(self, tmp_path, capsys):
        bad = dict(BASE_CONFIG, duration_blocks=0)
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(bad))
        assert main(["simulate", str(path)]) == EXIT_INPUT


class TestParserBasics:
    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
        assert "chainmeter" in capsys.readouterr().out

    def test_subcommand_help_documents_flags(self, capsys):
        for command, flag in [
            ("metrics", "--curve"), ("bound", "--sweep"), ("shard", "--k"),
            ("lightning", "--relay"), ("simulate", "--check-bound"),
        ]:
            assert main([command, "--help"]) == 0
            assert flag in capsys.readouterr().out

    def test_no_command_is_usage_error(self, capsys):
        assert main([]) == EXIT_USAGE
