"""Command-line interface: output formats, exit codes, manifests, config."""

import json
import subprocess
import sys

import pytest

from latticeqec.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCodeInfo:
    def test_2d_n3_summary(self, capsys):
        code, out, _ = run_cli(capsys, "code-info", "--dim", "2", "--n", "3")
        assert code == 0
        assert "sites: 9" in out
        assert "stabilizer generators: 4" in out
        assert "gauge generators: 12" in out
        assert "logical X: X(1,1) X(1,2) X(1,3)" in out
        assert "logical Z: Z(1,1) Z(2,1) Z(3,1)" in out

    def test_bad_lattice_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "code-info", "--dim", "3", "--n", "4")
        assert code == 2
        assert "odd" in err


class TestClassify:
    def test_gauge_pair(self, capsys):
        code, out, _ = run_cli(
            capsys, "classify", "--dim", "2", "--n", "3",
            "--error", "Z at (1,1); Z at (1,2)",
        )
        assert code == 0
        assert "class: gauge" in out

    def test_detectable_single_z(self, capsys):
        code, out, _ = run_cli(
            capsys, "classify", "--dim", "2", "--n", "3", "--error", "Z at (2,2)", "--json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["class"] == "detectable"
        assert payload["syndrome"] == {"sX": "11", "sZ": "00"}

    def test_token_string_input(self, capsys):
        code, out, _ = run_cli(
            capsys, "classify", "--dim", "2", "--n", "3", "--error", "XXXIIIIII",
        )
        assert code == 0
        assert "class: logical_x" in out

    def test_malformed_error_rejected(self, capsys):
        code, _, err = run_cli(
            capsys, "classify", "--dim", "2", "--n", "3", "--error", "Q at (1,1)",
        )
        assert code == 2
        assert "error" in err

    def test_out_of_range_coords_rejected(self, capsys):
        code, _, _ = run_cli(
            capsys, "classify", "--dim", "2", "--n", "3", "--error", "Z at (4,1)",
        )
        assert code == 2


class TestDecode:
    def test_center_z_example(self, capsys):
        code, out, _ = run_cli(
            capsys, "decode", "--dim", "2", "--n", "3", "--error", "Z at (2,2)",
        )
        assert code == 0
        assert "syndrome: sX=11 sZ=00" in out
        assert "correction: Z(2,1)" in out
        assert "residual: gauge" in out

    def test_json_payload(self, capsys):
        code, out, _ = run_cli(
            capsys, "decode", "--dim", "2", "--n", "3", "--error", "Z at (2,2)", "--json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["residual"] == "gauge"
        assert payload["inferred_f"] == "010"

    def test_logical_failure_reported(self, capsys):
        code, out, _ = run_cli(
            capsys, "decode", "--dim", "2", "--n", "3",
            "--error", "Z at (1,1); Z at (2,1)",
        )
        assert code == 0
        assert "residual: logical_z" in out


class TestThreshold:
    def test_writes_csv_and_manifest(self, capsys, tmp_path):
        out_file = tmp_path / "scan.csv"
        code, out, _ = run_cli(
            capsys, "threshold", "--dim", "2", "--n", "3,5", "--p", "0.05,0.1",
            "--trials", "200", "--seed", "7", "--out", str(out_file),
        )
        assert code == 0
        lines = out_file.read_text().strip().split("\n")
        assert lines[0].startswith("dimension,n,p_x,p_z,trials,seed")
        assert len(lines) == 5
        manifest = json.loads((tmp_path / "scan.csv.manifest.json").read_text())
        assert manifest["subcommand"] == "threshold"
        assert manifest["seed"] == 7
        assert manifest["parameters"]["n"] == [3, 5]

    def test_rerun_is_byte_identical(self, capsys, tmp_path):
        args = (
            "threshold", "--dim", "2", "--n", "3", "--p", "0.1",
            "--trials", "300", "--seed", "11",
        )
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert run_cli(capsys, *args, "--out", str(a))[0] == 0
        assert run_cli(capsys, *args, "--out", str(b))[0] == 0
        assert a.read_bytes() == b.read_bytes()

    def test_missing_seed_is_usage_error(self, capsys, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main([
                "threshold", "--dim", "2", "--n", "3", "--p", "0.1",
                "--trials", "10", "--out", str(tmp_path / "x.csv"),
            ])
        assert exc.value.code == 2

    def test_default_out_follows_results_convention(self, capsys, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        code, out, _ = run_cli(
            capsys, "threshold", "--dim", "2", "--n", "3", "--p", "0.0",
            "--trials", "10", "--seed", "3",
        )
        assert code == 0
        expected = tmp_path / "results" / "threshold" / "dim2_n3_seed3" / "scan.csv"
        assert expected.exists()


class TestDiag:
    def test_stdout_json_schema(self, capsys):
        code, out, _ = run_cli(capsys, "diag", "--dim", "2", "--n", "2")
        assert code == 0
        payload = json.loads(out)
        assert payload["n"] == 2 and payload["dimension"] == 2
        assert payload["ground_sector"] == {"s_x": [1], "s_z": [1]}
        assert all(entry["multiplicity"] % 2 == 0 for entry in payload["eigenvalues"])

    def test_infeasible_size_exit_code(self, capsys):
        code, _, err = run_cli(capsys, "diag", "--dim", "3", "--n", "3")
        assert code == 3
        assert "bound" in err

    def test_out_file_with_manifest(self, capsys, tmp_path):
        out_file = tmp_path / "spectrum.json"
        code, _, _ = run_cli(
            capsys, "diag", "--dim", "2", "--n", "2", "--out", str(out_file),
        )
        assert code == 0
        assert json.loads(out_file.read_text())["ground_multiplicity"] == 2
        assert (tmp_path / "spectrum.json.manifest.json").exists()


class TestMeanfield:
    def test_bulk_x_costs_eight(self, capsys):
        code, out, _ = run_cli(
            capsys, "meanfield", "--n", "3", "--error", "X at (2,2,2)", "--json",
        )
        assert code == 0
        assert json.loads(out)["delta_e"] == 8.0

    def test_custom_couplings(self, capsys):
        code, out, _ = run_cli(
            capsys, "meanfield", "--n", "3", "--error", "X at (2,2,2)",
            "--c-zy", "0.5", "--c-zz", "0.25", "--lambda", "2.0", "--json",
        )
        assert code == 0
        assert json.loads(out)["delta_e"] == pytest.approx(2 * 2.0 * (2 * 0.5 + 2 * 0.25))


class TestIsing:
    def test_writes_series(self, capsys, tmp_path):
        out_file = tmp_path / "m.csv"
        code, _, _ = run_cli(
            capsys, "ising", "--dim", "1", "--L", "16", "--T", "0.5",
            "--sweeps", "20", "--seed", "4", "--out", str(out_file),
        )
        assert code == 0
        lines = out_file.read_text().strip().split("\n")
        assert lines[0] == "dim,L,J,T,sweep,magnetization"
        assert len(lines) == 21


class TestBifurcation:
    def test_writes_records(self, capsys, tmp_path):
        out_file = tmp_path / "bif.csv"
        code, _, _ = run_cli(
            capsys, "bifurcation", "--n", "3", "--T", "1.0,3.0", "--sweeps", "50",
            "--equilibration", "10", "--seed", "6", "--out", str(out_file),
        )
        assert code == 0
        lines = out_file.read_text().strip().split("\n")
        assert lines[0] == "n,lambda,c_zy,c_zz,T,encoded,samples,order_parameter,stderr,seed"
        assert len(lines) == 5


class TestConfigFile:
    def test_config_supplies_missing_flags(self, capsys, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"dim": 2, "n": 3}))
        code, out, _ = run_cli(capsys, "code-info", "--config", str(config))
        assert code == 0
        assert "sites: 9" in out

    def test_explicit_flags_win(self, capsys, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"dim": 2, "n": 3}))
        code, out, _ = run_cli(
            capsys, "code-info", "--config", str(config), "--n", "4",
        )
        assert code == 0
        assert "sites: 16" in out

    def test_manifest_can_be_replayed(self, capsys, tmp_path):
        out_file = tmp_path / "scan.csv"
        run_cli(
            capsys, "threshold", "--dim", "2", "--n", "3", "--p", "0.1",
            "--trials", "100", "--seed", "9", "--out", str(out_file),
        )
        manifest = tmp_path / "scan.csv.manifest.json"
        replay = tmp_path / "replay.csv"
        code, _, _ = run_cli(
            capsys, "threshold", "--config", str(manifest), "--out", str(replay),
        )
        assert code == 0
        assert replay.read_bytes() == out_file.read_bytes()


class TestDispatcher:
    def test_unknown_subcommand(self):
        with pytest.raises(SystemExit) as exc:
            main(["spin-dryer"])
        assert exc.value.code == 2

    def test_module_entry_point(self):
        result = subprocess.run(
            [sys.executable, "-m", "latticeqec", "code-info", "--dim", "2", "--n", "2"],
            capture_output=True, text=True,
        )
        assert result.returncode == 0
        assert "sites: 4" in result.stdout
