import hashlib
import json

import numpy as np
import pytest

from lagbench.cli import main as cli_main
from lagbench.discover import discovered_to_json
from lagbench.errors import ConfigurationError
from lagbench.graph import graph_from_json
from lagbench.metrics import DiscoveredGraph
from lagbench.suite import (
    SUPPORTED_SIZES,
    VARIANT_IDS,
    RunManifest,
    dataset_key,
    derive_seed,
    emit_plots,
    generate_dataset,
    generate_suite,
    load_manifest,
    read_dataset,
    resolve_variant,
    run_benchmark,
    run_evaluation,
)


def tree_hash(root):
    digest = hashlib.sha256()
    for path in sorted(p for p in root.rglob("*") if p.is_file()):
        digest.update(str(path.relative_to(root)).encode())
        digest.update(path.read_bytes())
    return digest.hexdigest()


def small_manifest(tmp_path, **kw):
    defaults = dict(
        master_seed=42,
        output_dir=tmp_path / "out",
        variants=("A1", "A1C", "D1"),
        sizes=(500,),
        graph_configs=((4, 2),),
        algorithms=("lag_pc",),
    )
    defaults.update(kw)
    return RunManifest(**defaults)


class TestResolveVariant:
    def test_baseline_linear(self):
        v = resolve_variant("A1")
        assert v.form == "linear"
        assert v.sampling.kind == "regular"
        assert v.missingness.kind == "none"
        assert not v.confounded

    def test_confounded_twin_differs_only_by_confounder(self):
        a1, a1c = resolve_variant("A1"), resolve_variant("A1C")
        assert a1c.confounded and a1c.confounder_coupling == "linear"
        assert (a1.form, a1.noise_profile, a1.sampling, a1.missingness) == (
            a1c.form, a1c.noise_profile, a1c.sampling, a1c.missingness,
        )

    def test_d2c_row(self):
        v = resolve_variant("D2C")
        assert v.form == "polynomial"
        assert v.sampling.kind == "irregular_exponential"
        assert v.missingness.kind == "block"
        assert v.confounded and v.confounder_coupling == "quadratic"

    def test_d3_combines_everything(self):
        v = resolve_variant("D3")
        assert v.form == "trig_trend_seasonal"
        assert v.noise_profile == "mixed"
        assert v.sampling.kind == "irregular_exponential"
        assert v.missingness.kind == "combined"
        assert not v.confounded

    def test_unknown_id_lists_valid_ones(self):
        with pytest.raises(ConfigurationError, match="A1, A1C"):
            resolve_variant("Z9")

    def test_all_ids_resolve(self):
        assert [resolve_variant(v).variant_id for v in VARIANT_IDS] == list(VARIANT_IDS)


class TestGenerateDataset:
    def test_reference_cell(self):
        data, graph, prov = generate_dataset("A1", 500, 4, 2, master_seed=0)
        assert data.values.shape == (500, 4)
        assert len(graph.edges) == 9
        assert prov["rows"] == 500

    def test_confounded_base_pairing(self):
        _, g_base, prov_base = generate_dataset("A1", 500, 4, 2, master_seed=3)
        _, g_conf, prov_conf = generate_dataset("A1C", 500, 4, 2, master_seed=3)
        assert g_conf.edges == g_base.edges
        assert g_conf.confounder is not None and g_base.confounder is None
        assert prov_base["dataset_seed"] == prov_conf["dataset_seed"]

    def test_irregular_variant_keeps_size_rows(self):
        data, _, prov = generate_dataset("A2", 500, 4, 2, master_seed=1)
        assert len(data) == 500
        gaps = np.diff(data.timestamps)
        assert np.all(gaps > 0)
        assert prov["grid_length"] > 500

    def test_missingness_applied(self):
        data, _, _ = generate_dataset("D1", 1000, 4, 2, master_seed=2)
        missing = 1.0 - data.mask.mean()
        assert 0.15 < missing < 0.25

    def test_seed_derivation_stable(self):
        assert derive_seed(0, "A1", 500, 4, 2) == derive_seed(0, "A1", 500, 4, 2)
        assert derive_seed(0, "A1", 500, 4, 2) != derive_seed(1, "A1", 500, 4, 2)


class TestGenerateSuite:
    def test_tree_layout_and_contents(self, tmp_path):
        manifest = small_manifest(tmp_path)
        dirs = generate_suite(manifest)
        assert len(dirs) == 3
        a1 = manifest.output_dir / dataset_key("A1", 500, 4, 2)
        assert (a1 / "data.csv").exists()
        assert (a1 / "complete.csv").exists()
        assert (a1 / "truth.json").exists()
        assert (a1 / "provenance.json").exists()
        assert not (a1 / "mask.csv").exists()  # A1 is complete
        d1 = manifest.output_dir / dataset_key("D1", 500, 4, 2)
        assert (d1 / "mask.csv").exists()
        graph, seed, variant = graph_from_json((a1 / "truth.json").read_text())
        assert len(graph.edges) == 9 and variant == "A1"
        prov = json.loads((a1 / "provenance.json").read_text())
        assert prov["dataset_seed"] == seed

    def test_grid_completeness(self, tmp_path):
        manifest = small_manifest(
            tmp_path, variants=("A1", "B1", "C1"), sizes=(500, 1000), graph_configs=((4, 2),)
        )
        assert len(generate_suite(manifest)) == 3 * 2 * 1

    def test_regeneration_byte_identical(self, tmp_path):
        m1 = small_manifest(tmp_path, output_dir=tmp_path / "run1")
        m2 = small_manifest(tmp_path, output_dir=tmp_path / "run2")
        generate_suite(m1)
        generate_suite(m2)
        assert tree_hash(m1.output_dir) == tree_hash(m2.output_dir)

    def test_observed_file_has_blank_cells(self, tmp_path):
        manifest = small_manifest(tmp_path, variants=("D1",))
        generate_suite(manifest)
        d1 = manifest.output_dir / dataset_key("D1", 500, 4, 2)
        observed = (d1 / "data.csv").read_text()
        complete = (d1 / "complete.csv").read_text()
        assert ",," in observed or observed.rstrip().endswith(",")
        assert ",," not in complete

    def test_round_trip_read(self, tmp_path):
        manifest = small_manifest(tmp_path, variants=("D1",))
        generate_suite(manifest)
        data, graph, prov = read_dataset(manifest.output_dir / dataset_key("D1", 500, 4, 2))
        fresh, fresh_graph, _ = generate_dataset("D1", 500, 4, 2, master_seed=42)
        assert graph == fresh_graph
        np.testing.assert_array_equal(data.mask, fresh.mask)
        np.testing.assert_allclose(data.values, fresh.values, rtol=0, atol=0)


class TestBenchmark:
    def test_end_to_end_baseline(self, tmp_path):
        manifest = small_manifest(tmp_path, variants=("A1",), sizes=(1000,))
        results = run_benchmark(manifest)
        assert len(results) == 1
        report, status = results[0]["lag_pc"]
        assert status == "ok"
        assert 0.0 <= report.tpr <= 1.0
        assert (manifest.output_dir / "results.csv").exists()
        a1 = manifest.output_dir / dataset_key("A1", 1000, 4, 2)
        assert (a1 / "pred_lag_pc.json").exists()
        assert (a1 / "eval_lag_pc.json").exists()

    def test_imported_perfect_prediction_scores_clean(self, tmp_path):
        manifest = small_manifest(tmp_path, variants=("A1",), algorithms=("lag_pc", "external"))
        generate_suite(manifest)
        directory = manifest.output_dir / dataset_key("A1", 500, 4, 2)
        _, truth, _ = read_dataset(directory)
        pred = DiscoveredGraph(4, 2, truth.edge_triples())
        (directory / "pred_external.json").write_text(discovered_to_json(pred))
        results = run_evaluation(manifest)
        report, status = results[0]["external"]
        assert status == "ok"
        assert (report.tpr, report.fdr, report.shd) == (1.0, 0.0, 0)
        # built-in never ran, so its column renders as missing
        assert results[0]["lag_pc"][1] == "missing"

    def test_missing_third_party_renders_dash(self, tmp_path):
        manifest = small_manifest(tmp_path, variants=("A1",), algorithms=("external",))
        generate_suite(manifest)
        run_evaluation(manifest)
        text = (manifest.output_dir / "results.csv").read_text()
        assert "--,--,--,missing" in text

    def test_no_algorithms_warns_and_succeeds(self, tmp_path):
        manifest = small_manifest(tmp_path, variants=("A1",), algorithms=())
        generate_suite(manifest)
        with pytest.warns(UserWarning, match="no algorithms"):
            results = run_evaluation(manifest)
        assert len(results) == 1


class TestManifest:
    def test_load_with_overrides(self, tmp_path):
        path = tmp_path / "m.json"
        path.write_text(
            json.dumps(
                {
                    "master_seed": 5,
                    "output_dir": str(tmp_path / "x"),
                    "variants": ["A1"],
                    "sizes": [500],
                    "graph_configs": [[4, 2]],
                    "algorithms": ["lag_pc"],
                    "pc": {"alpha": 0.01},
                }
            )
        )
        manifest = load_manifest(path, seed_override=9, out_override=tmp_path / "y")
        assert manifest.master_seed == 9
        assert manifest.output_dir == tmp_path / "y"
        assert manifest.pc_alpha == 0.01

    def test_unknown_keys_rejected(self, tmp_path):
        path = tmp_path / "m.json"
        path.write_text('{"master_sed": 1}')
        with pytest.raises(ConfigurationError, match="unknown manifest keys"):
            load_manifest(path)

    def test_unsupported_size_needs_override(self, tmp_path):
        with pytest.raises(ConfigurationError, match="supported set"):
            small_manifest(tmp_path, sizes=(123,))
        manifest = small_manifest(tmp_path, sizes=(123,), allow_custom_sizes=True)
        assert manifest.sizes == (123,)

    def test_default_grid(self, tmp_path):
        manifest = RunManifest(master_seed=0, output_dir=tmp_path)
        assert manifest.variants == VARIANT_IDS
        assert manifest.sizes == SUPPORTED_SIZES
        assert len(list(manifest.dataset_specs())) == 18 * 4


class TestPlots:
    def test_bar_charts_and_series(self, tmp_path):
        manifest = small_manifest(tmp_path, variants=("A1",), sizes=(500,))
        run_benchmark(manifest)
        files = emit_plots(manifest)
        names = {f.name for f in files}
        assert {"benchmark_tpr.svg", "benchmark_fdr.svg", "benchmark_shd.svg"} <= names
        assert any(name.endswith("_series.svg") for name in names)

    def test_empty_results_warns(self, tmp_path):
        manifest = small_manifest(tmp_path, variants=("A1",), algorithms=())
        with pytest.warns(UserWarning):
            files = emit_plots(manifest, results=[])
        assert all(not f.name.startswith("benchmark_") for f in files)


class TestCli:
    def write_manifest(self, tmp_path):
        path = tmp_path / "manifest.json"
        path.write_text(
            json.dumps(
                {
                    "master_seed": 7,
                    "output_dir": str(tmp_path / "cli_out"),
                    "variants": ["A1"],
                    "sizes": [500],
                    "graph_configs": [[4, 2]],
                    "algorithms": ["lag_pc"],
                }
            )
        )
        return path

    def test_generate_then_benchmark_and_plot(self, tmp_path, capsys):
        manifest = self.write_manifest(tmp_path)
        assert cli_main(["generate", "--manifest", str(manifest)]) == 0
        assert cli_main(["discover", "--manifest", str(manifest)]) == 0
        assert cli_main(["evaluate", "--manifest", str(manifest)]) == 0
        assert cli_main(["plot", "--manifest", str(manifest)]) == 0
        assert (tmp_path / "cli_out" / "results.csv").exists()

    def test_configuration_error_exit_code(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"variants": ["NOPE"]}')
        assert cli_main(["generate", "--manifest", str(bad)]) == 1

    def test_data_error_exit_code(self, tmp_path):
        manifest = self.write_manifest(tmp_path)
        # discover before generate: dataset tree missing
        assert cli_main(["discover", "--manifest", str(manifest)]) == 2

    def test_seed_override_changes_output(self, tmp_path):
        manifest = self.write_manifest(tmp_path)
        assert cli_main(["generate", "--manifest", str(manifest), "--out", str(tmp_path / "s1"), "--seed", "1"]) == 0
        assert cli_main(["generate", "--manifest", str(manifest), "--out", str(tmp_path / "s2"), "--seed", "2"]) == 0
        assert tree_hash(tmp_path / "s1") != tree_hash(tmp_path / "s2")
