from __future__ import annotations

import json
from pathlib import Path

import pytest

from vulnclust.ingest import OutOfRangeProportion
from vulnclust.pipeline import (
    ConfigError,
    PipelineConfig,
    PipelineError,
    build_artifact,
    compute_run_id,
    export_run,
    run_pipeline,
    write_artifact,
)

SMALL_CONFIG = dict(domains=("physical", "social"), k_min=2, k_max=5, restarts=8)


@pytest.fixture(scope="module")
def small_artifact(data_paths):
    return run_pipeline(
        data_paths["data"],
        data_paths["adjacency"],
        PipelineConfig(**SMALL_CONFIG),
        data_paths["geojson"],
    )


class TestConfig:
    def test_defaults_are_the_documented_ones(self):
        config = PipelineConfig()
        assert config.k_min == 3 and config.k_max == 12
        assert config.epsilon == 1e-3
        assert config.restarts == 25
        assert config.seed == 42
        assert config.max_iter == 300
        assert len(config.domains) == 7

    def test_empty_domains_rejected(self):
        with pytest.raises(ConfigError):
            PipelineConfig(domains=())

    def test_unknown_domain_rejected(self):
        with pytest.raises(ConfigError):
            PipelineConfig(domains=("physical", "height"))

    def test_bad_k_range_rejected(self):
        with pytest.raises(ConfigError):
            PipelineConfig(k_min=5, k_max=3)
        with pytest.raises(ConfigError):
            PipelineConfig(k_min=1)

    def test_bad_numerics_rejected(self):
        with pytest.raises(ConfigError):
            PipelineConfig(epsilon=0.0)
        with pytest.raises(ConfigError):
            PipelineConfig(restarts=0)
        with pytest.raises(ConfigError):
            PipelineConfig(max_iter=0)

    def test_round_trips_through_json(self):
        config = PipelineConfig(**SMALL_CONFIG)
        assert PipelineConfig.from_json(config.to_json()) == config


class TestRunId:
    def test_deterministic(self):
        config = PipelineConfig()
        assert compute_run_id(config, b"a", b"b", None) == compute_run_id(config, b"a", b"b", None)

    def test_sensitive_to_inputs_and_config(self):
        config = PipelineConfig()
        base = compute_run_id(config, b"a", b"b", None)
        assert compute_run_id(config, b"a2", b"b", None) != base
        assert compute_run_id(config, b"a", b"b2", None) != base
        assert compute_run_id(config, b"a", b"b", b"g") != base
        assert compute_run_id(PipelineConfig(seed=43), b"a", b"b", None) != base


class TestBuildArtifact:
    def test_stage_failure_names_the_stage(self, data_paths):
        bad_csv = b"id,name,child_count,physical,social,emotional,language,communication,vuln1,vuln2,preschool,indigenous,english,australia,irsd,remoteness\nA,Area,10,1.5,.1,.1,.1,.1,.1,.1,.1,.1,.1,.1,9,Remote\n"
        with pytest.raises(PipelineError) as err:
            build_artifact(bad_csv, b"", PipelineConfig(**SMALL_CONFIG))
        assert err.value.stage == "parse"
        assert isinstance(err.value.cause, OutOfRangeProportion)

    def test_artifact_contents(self, small_artifact):
        art = small_artifact
        assert art.imputation.excluded == ("SY057", "SY058")
        assert set(art.domains) == {"physical", "social"}
        for result in art.domains.values():
            k = result.selection.chosen_k
            assert len(result.profiles) == k
            assert [p.label for p in result.profiles] == [f"C{i+1}" for i in range(k)]
            labels = {f["properties"]["cluster_label"] for f in result.geojson["features"]}
            assert labels <= {f"C{i+1}" for i in range(k)}

    def test_geojson_injection_drops_unmatched(self, small_artifact):
        result = small_artifact.domains["physical"]
        ids = {f["properties"]["id"] for f in result.geojson["features"]}
        assert "SY041" not in ids  # present in results but absent from source geometry
        assert "SY057" not in ids  # excluded island never gets a label
        assert ids <= set(small_artifact.dataset.ids)
        for feature in result.geojson["features"]:
            props = feature["properties"]
            assert props["name"] == small_artifact.dataset.by_id[props["id"]].name
            assert props["domain_value"] == small_artifact.dataset.by_id[props["id"]].domain_props["physical"]

    def test_summary_covers_domains(self, small_artifact):
        metrics = [row.metric for row in small_artifact.summary]
        assert metrics == [
            "size",
            "australia_delta",
            "english_delta",
            "indigenous_delta",
            "preschool_delta",
            "very_remote",
            "irsd_low",
        ]
        for row in small_artifact.summary:
            assert set(row.values) == {"physical", "social"}


def strip_created_at(path: Path) -> str:
    doc = json.loads(path.read_text())
    doc.pop("created_at", None)
    return json.dumps(doc, sort_keys=True)


def artifact_fingerprint(run_dir: Path) -> dict:
    out = {}
    for path in sorted(run_dir.rglob("*")):
        if path.is_dir():
            continue
        rel = str(path.relative_to(run_dir))
        out[rel] = strip_created_at(path) if path.name == "config.json" else path.read_bytes()
    return out


class TestPersistence:
    def test_layout_and_schema_version(self, small_artifact, tmp_path):
        run_dir = write_artifact(small_artifact, tmp_path)
        assert run_dir.name == small_artifact.run_id
        expected = {"config.json", "imputation.json", "summary.json"}
        assert expected <= {p.name for p in run_dir.iterdir()}
        for domain in ("physical", "social"):
            names = {p.name for p in (run_dir / domain).iterdir()}
            assert names == {
                "selection.json",
                "clusters.json",
                "comparison.json",
                "silhouette.json",
                "regions.geojson",
            }
            for name in names:
                doc = json.loads((run_dir / domain / name).read_text())
                if name != "regions.geojson":
                    assert doc["schema_version"] == "1"

    def test_reruns_are_byte_identical_modulo_timestamp(self, data_paths, tmp_path):
        config = PipelineConfig(**SMALL_CONFIG)
        dirs = []
        for sub in ("one", "two"):
            artifact = run_pipeline(
                data_paths["data"], data_paths["adjacency"], config, data_paths["geojson"]
            )
            dirs.append(write_artifact(artifact, tmp_path / sub))
        assert artifact_fingerprint(dirs[0]) == artifact_fingerprint(dirs[1])


class TestRoundTrips:
    def test_profile_json_round_trip(self, small_artifact):
        from vulnclust.pipeline import _profile_from_json

        for result in small_artifact.domains.values():
            for profile in result.profiles:
                assert _profile_from_json(profile.to_json()) == profile

    def test_artifact_files_reparse_identically(self, small_artifact, tmp_path):
        run_dir = write_artifact(small_artifact, tmp_path)
        for path in run_dir.rglob("*.json"):
            doc = json.loads(path.read_text())
            assert json.loads(json.dumps(doc, sort_keys=True)) == doc


class TestExport:
    def test_csv_export(self, small_artifact, tmp_path):
        run_dir = write_artifact(small_artifact, tmp_path)
        paths = export_run(run_dir, "csv")
        names = sorted(p.name for p in paths)
        assert names == [
            "physical_comparison.csv",
            "physical_profiles.csv",
            "social_comparison.csv",
            "social_profiles.csv",
        ]
        text = (run_dir / "export" / "physical_profiles.csv").read_text()
        assert text.startswith("variable,C1 (n=")

    def test_json_export(self, small_artifact, tmp_path):
        run_dir = write_artifact(small_artifact, tmp_path)
        (path,) = export_run(run_dir, "json")
        doc = json.loads(path.read_text())
        assert set(doc["domains"]) == {"physical", "social"}
        assert doc["config"]["run_id"] == small_artifact.run_id

    def test_unknown_format(self, small_artifact, tmp_path):
        run_dir = write_artifact(small_artifact, tmp_path)
        with pytest.raises(ConfigError):
            export_run(run_dir, "xml")
