from __future__ import annotations

import json
import shutil

import pytest

from vulnclust.cli import main


def run_cli(*argv):
    return main(list(argv))


class TestRun:
    def test_run_writes_artifact(self, data_paths, tmp_path, capsys):
        code = run_cli(
            "run",
            "--data", str(data_paths["data"]),
            "--adjacency", str(data_paths["adjacency"]),
            "--geojson", str(data_paths["geojson"]),
            "--out", str(tmp_path),
            "--domains", "physical",
            "--k-min", "2", "--k-max", "5", "--restarts", "5",
        )
        assert code == 0
        run_dir = tmp_path / capsys.readouterr().out.strip().split("/")[-1]
        assert (run_dir / "config.json").exists()
        assert (run_dir / "physical" / "clusters.json").exists()

    def test_inverted_k_range_is_config_error(self, data_paths, tmp_path):
        code = run_cli(
            "run",
            "--data", str(data_paths["data"]),
            "--adjacency", str(data_paths["adjacency"]),
            "--out", str(tmp_path),
            "--k-min", "5", "--k-max", "3",
        )
        assert code == 2

    def test_missing_file_is_data_error(self, tmp_path):
        code = run_cli(
            "run", "--data", str(tmp_path / "nope.csv"),
            "--adjacency", str(tmp_path / "nope.txt"), "--out", str(tmp_path),
        )
        assert code == 1

    def test_bad_data_is_data_error(self, data_paths, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("id,name\nA,Area\n")
        code = run_cli(
            "run", "--data", str(bad),
            "--adjacency", str(data_paths["adjacency"]), "--out", str(tmp_path),
        )
        assert code == 1

    def test_unknown_domain_is_config_error(self, data_paths, tmp_path):
        code = run_cli(
            "run", "--data", str(data_paths["data"]),
            "--adjacency", str(data_paths["adjacency"]),
            "--out", str(tmp_path), "--domains", "shoe_size",
        )
        assert code == 2


class TestValidate:
    def test_islands_warn_but_exit_zero(self, data_paths, capsys):
        code = run_cli(
            "validate", "--data", str(data_paths["data"]),
            "--adjacency", str(data_paths["adjacency"]),
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "SY057" in out and "SY058" in out
        assert "58 regions" in out

    def test_parse_error_exit_one(self, tmp_path, data_paths):
        bad = tmp_path / "bad.csv"
        bad.write_text("not,a,valid,header\n")
        assert run_cli("validate", "--data", str(bad), "--adjacency", str(data_paths["adjacency"])) == 1


class TestExport:
    def test_csv_and_json(self, golden_run_dir, tmp_path, capsys):
        # Export from a copy: the committed golden store must stay pristine.
        run_dir = tmp_path / golden_run_dir.name
        shutil.copytree(golden_run_dir, run_dir)

        assert run_cli("export", "--run", str(run_dir), "--format", "csv") == 0
        csv_paths = capsys.readouterr().out.strip().splitlines()
        assert any(p.endswith("physical_profiles.csv") for p in csv_paths)

        assert run_cli("export", "--run", str(run_dir), "--format", "json") == 0
        (json_path,) = capsys.readouterr().out.strip().splitlines()
        doc = json.loads(open(json_path).read())
        assert set(doc["domains"]) == {
            "physical", "social", "emotional", "language", "communication", "vuln1", "vuln2"
        }


class TestUsage:
    def test_no_subcommand_exits_2(self):
        with pytest.raises(SystemExit) as err:
            run_cli()
        assert err.value.code == 2

    def test_bad_flag_exits_2(self):
        with pytest.raises(SystemExit) as err:
            run_cli("run", "--nonsense")
        assert err.value.code == 2

    def test_bad_export_format_exits_2(self, golden_run_dir):
        with pytest.raises(SystemExit) as err:
            run_cli("export", "--run", str(golden_run_dir), "--format", "xml")
        assert err.value.code == 2
