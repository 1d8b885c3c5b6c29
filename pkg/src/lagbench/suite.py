"""Benchmark orchestration: the 18-variant grid, dataset materialization,
scoring runs, and the on-disk CSV/JSON formats.

Every dataset is regenerable in isolation: its seed is a stable digest of
(master seed, base variant, size, graph shape). Confounded variants share the
digest of their base variant, so an *C dataset reuses the base graph and noise
streams and differs only by the latent confounder term.

Datasets, discovery, and evaluation are independent work units; this module
runs them sequentially so output bytes are trivially reproducible.
"""

from __future__ import annotations

import hashlib
import json
import math
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corrupt import (
    BlockSpec,
    MissingnessSpec,
    SamplingScheme,
    apply_missingness,
    resample_irregular,
)
from .discover import PcConfig, discovered_from_json, discovered_to_json, pc_discover
from .errors import BenchmarkError, ConfigurationError, DataError
from .graph import (
    ConfounderSpec,
    GraphConfig,
    TemporalCausalGraph,
    add_confounder,
    default_edge_count,
    format_real,
    generate_graph,
    graph_from_json,
    graph_to_json,
)
from .metrics import evaluate, report_to_json
from .simulate import Dataset, NoiseModel, ScmSpec, TrendSeason, simulate

VARIANT_IDS = (
    "A1", "A1C", "A2", "A2C",
    "B1", "B1C", "B2", "B2C",
    "C1", "C1C", "C2", "C2C",
    "D1", "D1C", "D2", "D2C", "D3", "D3C",
)

SUPPORTED_SIZES = (500, 1000, 3000, 5000)

BUILTIN_ALGORITHMS = ("lag_pc",)

# Shared generation defaults. The noise scale follows the additive-noise
# convention N(0, 0.1^2); Student-t innovations use 3 degrees of freedom.
NOISE_SCALE = 0.1
STUDENT_T_DOF = 3.0
MIX_RATIO = 0.5
IRREGULAR_RATE = 1.0
MCAR_RATE = 0.2
D2_BLOCK = BlockSpec(mean_length=10.0, trigger="nmar", threshold=0.0, rate=0.02)
D3_BLOCK = BlockSpec(mean_length=10.0, trigger="mar", threshold=0.0, rate=0.02)
D3_MCAR_RATE = 0.1
TREND_SEASON = TrendSeason(
    trend_slope=0.001,
    season_period=12,
    harmonics=((0.5, 1, 0.0), (0.2, 2, 0.9)),
)
CONFOUNDER_AR = 0.7
CONFOUNDER_SCALE = 0.3

_REGULAR = SamplingScheme("regular")
_IRREGULAR = SamplingScheme("irregular_exponential", rate=IRREGULAR_RATE)
_NO_MISSING = MissingnessSpec("none")

# Base family table: functional form, noise profile, sampling, missingness.
_FAMILY = {
    "A1": ("linear", "gaussian_t", _REGULAR, _NO_MISSING),
    "A2": ("linear", "gaussian_t", _IRREGULAR, _NO_MISSING),
    "B1": ("polynomial", "gaussian_t", _REGULAR, _NO_MISSING),
    "B2": ("polynomial", "mixed", _IRREGULAR, _NO_MISSING),
    "C1": ("trig_trend_seasonal", "gaussian_t", _REGULAR, _NO_MISSING),
    "C2": ("trig_trend_seasonal", "gaussian_t", _IRREGULAR, _NO_MISSING),
    "D1": ("linear", "gaussian_t", _REGULAR, MissingnessSpec("mcar", mcar_rate=MCAR_RATE)),
    "D2": ("polynomial", "gaussian_t", _IRREGULAR, MissingnessSpec("block", block=D2_BLOCK)),
    "D3": (
        "trig_trend_seasonal",
        "mixed",
        _IRREGULAR,
        MissingnessSpec("combined", mcar_rate=D3_MCAR_RATE, block=D3_BLOCK),
    ),
}

# Confounder coupling per base family: linear families couple linearly,
# nonlinear families through quadratic terms.
_COUPLING = {
    "A1": "linear", "A2": "linear", "D1": "linear",
    "B1": "quadratic", "B2": "quadratic",
    "C1": "quadratic", "C2": "quadratic",
    "D2": "quadratic", "D3": "quadratic",
}


@dataclass(frozen=True)
class VariantSpec:
    """One resolved row of the variant grid."""

    variant_id: str
    form: str
    noise_profile: str
    sampling: SamplingScheme
    missingness: MissingnessSpec
    confounded: bool
    confounder_coupling: str | None


def resolve_variant(variant_id: str) -> VariantSpec:
    """Map a variant id to its fully resolved specification."""
    if variant_id not in VARIANT_IDS:
        raise ConfigurationError(
            f"unknown variant {variant_id!r}; valid ids: {', '.join(VARIANT_IDS)}"
        )
    confounded = len(variant_id) == 3
    base = variant_id[:2]
    form, noise_profile, sampling, missingness = _FAMILY[base]
    return VariantSpec(
        variant_id=variant_id,
        form=form,
        noise_profile=noise_profile,
        sampling=sampling,
        missingness=missingness,
        confounded=confounded,
        confounder_coupling=_COUPLING[base] if confounded else None,
    )


def noise_models(profile: str, num_variables: int) -> tuple[NoiseModel, ...]:
    """Per-variable innovations: gaussian_t alternates Gaussian (even index)
    and Student-t (odd index); mixed uses the Gaussian-Laplace mixture."""
    if profile == "gaussian_t":
        gaussian = NoiseModel(kind="gaussian", scale=NOISE_SCALE)
        student = NoiseModel(kind="student_t", scale=NOISE_SCALE, dof=STUDENT_T_DOF)
        return tuple(gaussian if j % 2 == 0 else student for j in range(num_variables))
    if profile == "mixed":
        mixed = NoiseModel(kind="mixed", scale=NOISE_SCALE, mix_ratio=MIX_RATIO)
        return (mixed,) * num_variables
    raise ConfigurationError(f"unknown noise profile {profile!r}")


def confounder_spec(coupling: str, num_variables: int) -> ConfounderSpec:
    """Latent confounder aimed at X1 and X3 (X0/X1 on tiny graphs)."""
    if num_variables >= 4:
        targets = ((1, coupling), (3, coupling))
    elif num_variables >= 2:
        targets = ((0, coupling), (1, coupling))
    else:
        raise ConfigurationError("a confounded variant needs at least 2 variables")
    return ConfounderSpec(targets=targets, ar_coeff=CONFOUNDER_AR, noise_scale=CONFOUNDER_SCALE)


def build_scm(variant: VariantSpec, graph: TemporalCausalGraph) -> ScmSpec:
    """Attach the variant's functional form and noise to a ground-truth graph."""
    noise = noise_models(variant.noise_profile, graph.num_variables)
    if variant.form == "polynomial":
        # quadratic and cubic edge terms, alternating by edge index
        degrees = tuple(2 + (i % 2) for i in range(len(graph.edges)))
        return ScmSpec(graph=graph, form="polynomial", noise=noise, poly_degrees=degrees)
    if variant.form == "trig_trend_seasonal":
        return ScmSpec(graph=graph, form=variant.form, noise=noise, trend_season=TREND_SEASON)
    return ScmSpec(graph=graph, form="linear", noise=noise)


def derive_seed(master_seed: int, *parts) -> int:
    """Stable 64-bit digest of (master seed, *parts)."""
    key = ":".join([str(int(master_seed)), *map(str, parts)]).encode()
    return int.from_bytes(hashlib.sha256(key).digest()[:8], "big")


def dataset_key(variant_id: str, size: int, num_variables: int, max_lag: int) -> str:
    return f"{variant_id}_n{size}_v{num_variables}_l{max_lag}"


def generate_dataset(
    variant_id: str,
    size: int,
    num_variables: int,
    max_lag: int,
    master_seed: int,
    num_edges: int | None = None,
) -> tuple[Dataset, TemporalCausalGraph, dict]:
    """Materialize one dataset of the grid.

    Returns the (possibly masked) dataset with complete values retained under
    the mask, the ground-truth graph, and the provenance record. Irregular
    variants simulate a longer unit grid and keep the first ``size`` arrival
    rows, so ``size`` always means observation count.
    """
    variant = resolve_variant(variant_id)
    if num_edges is None:
        num_edges = default_edge_count(num_variables)
    base = variant_id[:2]
    shape = (base, size, num_variables, max_lag)
    dataset_seed = derive_seed(master_seed, *shape)

    graph = generate_graph(
        GraphConfig(num_variables, max_lag, num_edges, derive_seed(master_seed, *shape, "graph"))
    )
    if variant.confounded:
        graph = add_confounder(graph, confounder_spec(variant.confounder_coupling, num_variables))

    if variant.sampling.kind == "regular":
        grid_length = size
    else:
        grid_length = math.ceil(size / variant.sampling.rate * 1.25) + 64

    data = simulate(build_scm(variant, graph), grid_length, derive_seed(master_seed, *shape, "sim"))
    if variant.sampling.kind != "regular":
        data = resample_irregular(
            data, variant.sampling, derive_seed(master_seed, *shape, "sampling")
        )
        if len(data) < size:
            raise DataError(
                f"irregular sampling of {variant_id} kept {len(data)} rows, need {size}"
            )
        data = Dataset(
            timestamps=data.timestamps[:size],
            values=data.values[:size],
            mask=None if data.mask is None else data.mask[:size],
            meta=data.meta,
        )
    data = apply_missingness(
        data, variant.missingness, derive_seed(master_seed, *shape, "missingness")
    )
    data.meta["variant_id"] = variant_id

    block = variant.missingness.block
    provenance = {
        "variant_id": variant_id,
        "base_variant": base,
        "size": size,
        "num_variables": num_variables,
        "max_lag": max_lag,
        "num_edges": num_edges,
        "master_seed": int(master_seed),
        "dataset_seed": dataset_seed,
        "form": variant.form,
        "noise_profile": variant.noise_profile,
        "noise_scale": NOISE_SCALE,
        "sampling": variant.sampling.kind,
        "sampling_rate": variant.sampling.rate,
        "missingness": variant.missingness.kind,
        "mcar_rate": variant.missingness.mcar_rate,
        "block": None
        if block is None
        else {
            "mean_length": block.mean_length,
            "trigger": block.trigger,
            "threshold": block.threshold,
            "rate": block.rate,
        },
        "confounded": variant.confounded,
        "confounder_coupling": variant.confounder_coupling,
        "grid_length": grid_length,
        "rows": len(data),
    }
    return data, graph, provenance


@dataclass(frozen=True)
class RunManifest:
    """Declarative description of a full benchmark run."""

    master_seed: int
    output_dir: Path
    variants: tuple[str, ...] = VARIANT_IDS
    sizes: tuple[int, ...] = SUPPORTED_SIZES
    graph_configs: tuple[tuple[int, int], ...] = ((4, 2),)
    algorithms: tuple[str, ...] = ("lag_pc",)
    pc_alpha: float = 0.05
    pc_max_condition_set: int = 3
    allow_custom_sizes: bool = False

    def __post_init__(self):
        object.__setattr__(self, "output_dir", Path(self.output_dir))
        object.__setattr__(self, "variants", tuple(self.variants))
        object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))
        object.__setattr__(
            self, "graph_configs", tuple((int(v), int(l)) for v, l in self.graph_configs)
        )
        object.__setattr__(self, "algorithms", tuple(self.algorithms))
        if not self.variants or not self.sizes or not self.graph_configs:
            raise ConfigurationError("variants, sizes, and graph_configs must be non-empty")
        for vid in self.variants:
            resolve_variant(vid)
        if not self.allow_custom_sizes:
            bad = [s for s in self.sizes if s not in SUPPORTED_SIZES]
            if bad:
                raise ConfigurationError(
                    f"sizes {bad} outside the supported set {SUPPORTED_SIZES}; "
                    "set allow_custom_sizes to override"
                )
        for size in self.sizes:
            if size < 1:
                raise ConfigurationError("sizes must be positive")

    def dataset_specs(self):
        """Deterministic enumeration of (variant, size, (vars, lag)) cells."""
        for variant_id in self.variants:
            for num_variables, max_lag in self.graph_configs:
                for size in self.sizes:
                    yield variant_id, size, num_variables, max_lag

    def dataset_dirs(self) -> list[Path]:
        return [
            self.output_dir / dataset_key(v, s, nv, ml)
            for v, s, nv, ml in self.dataset_specs()
        ]


_MANIFEST_KEYS = {
    "master_seed", "output_dir", "variants", "sizes", "graph_configs",
    "algorithms", "pc", "allow_custom_sizes",
}


def load_manifest(path, *, seed_override=None, out_override=None) -> RunManifest:
    """Read a manifest JSON file, applying optional CLI overrides."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigurationError(f"cannot read manifest {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"manifest {path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigurationError("manifest must be a JSON object")
    unknown = set(doc) - _MANIFEST_KEYS
    if unknown:
        raise ConfigurationError(f"unknown manifest keys: {sorted(unknown)}")
    pc = doc.get("pc", {})
    kwargs = dict(
        master_seed=doc.get("master_seed", 0),
        output_dir=doc.get("output_dir", "benchmark_out"),
        pc_alpha=pc.get("alpha", 0.05),
        pc_max_condition_set=pc.get("max_condition_set", 3),
        allow_custom_sizes=doc.get("allow_custom_sizes", False),
    )
    for key in ("variants", "sizes", "graph_configs", "algorithms"):
        if key in doc:
            kwargs[key] = doc[key]
    if seed_override is not None:
        kwargs["master_seed"] = seed_override
    if out_override is not None:
        kwargs["output_dir"] = out_override
    return RunManifest(**kwargs)


def default_manifest(seed=None, out=None) -> RunManifest:
    return RunManifest(
        master_seed=0 if seed is None else seed,
        output_dir=Path("benchmark_out") if out is None else Path(out),
    )


# ---------------------------------------------------------------------------
# On-disk formats


def _write_data_csv(path: Path, data: Dataset, observed: bool):
    """Data CSV: header time,X0,...; missing cells empty in the observed file."""
    n = data.num_variables
    lines = ["time," + ",".join(f"X{j}" for j in range(n))]
    blank = observed and data.mask is not None
    for i in range(len(data)):
        cells = [format_real(data.timestamps[i])]
        for j in range(n):
            if blank and not data.mask[i, j]:
                cells.append("")
            else:
                cells.append(format_real(data.values[i, j]))
        lines.append(",".join(cells))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _write_mask_csv(path: Path, data: Dataset):
    """Mask CSV mirrors the data CSV shape; 1 = observed."""
    n = data.num_variables
    lines = ["time," + ",".join(f"X{j}" for j in range(n))]
    for i in range(len(data)):
        cells = [format_real(data.timestamps[i])]
        cells.extend("1" if data.mask[i, j] else "0" for j in range(n))
        lines.append(",".join(cells))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _read_csv(path: Path) -> tuple[np.ndarray, np.ndarray]:
    lines = path.read_text(encoding="utf-8").splitlines()
    rows = [line.split(",") for line in lines[1:] if line]
    timestamps = np.array([float(r[0]) for r in rows])
    values = np.array(
        [[float(c) if c else math.nan for c in r[1:]] for r in rows]
    )
    return timestamps, values


def write_dataset(directory: Path, data: Dataset, graph: TemporalCausalGraph, provenance: dict):
    directory.mkdir(parents=True, exist_ok=True)
    _write_data_csv(directory / "complete.csv", data, observed=False)
    _write_data_csv(directory / "data.csv", data, observed=True)
    if data.mask is not None:
        _write_mask_csv(directory / "mask.csv", data)
    (directory / "truth.json").write_text(
        graph_to_json(graph, seed=provenance["dataset_seed"], variant_id=provenance["variant_id"]),
        encoding="utf-8",
    )
    (directory / "provenance.json").write_text(
        json.dumps(provenance, indent=2) + "\n", encoding="utf-8"
    )


def read_dataset(directory: Path) -> tuple[Dataset, TemporalCausalGraph, dict]:
    """Load a dataset directory: complete values, mask, truth, provenance."""
    directory = Path(directory)
    try:
        timestamps, values = _read_csv(directory / "complete.csv")
        mask = None
        if (directory / "mask.csv").exists():
            _, mask_values = _read_csv(directory / "mask.csv")
            mask = mask_values.astype(bool)
        graph, _, variant_id = graph_from_json((directory / "truth.json").read_text())
        provenance = json.loads((directory / "provenance.json").read_text())
    except OSError as exc:
        raise DataError(f"cannot read dataset directory {directory}: {exc}") from exc
    data = Dataset(
        timestamps=timestamps,
        values=values,
        mask=mask,
        meta={
            "variant_id": variant_id,
            "max_lag": provenance["max_lag"],
            "seed": provenance["dataset_seed"],
        },
    )
    return data, graph, provenance


# ---------------------------------------------------------------------------
# Pipeline stages


def generate_suite(manifest: RunManifest) -> list[Path]:
    """Materialize every grid cell; idempotent (re-runs overwrite identically)."""
    written = []
    for variant_id, size, num_variables, max_lag in manifest.dataset_specs():
        data, graph, provenance = generate_dataset(
            variant_id, size, num_variables, max_lag, manifest.master_seed
        )
        directory = manifest.output_dir / dataset_key(variant_id, size, num_variables, max_lag)
        try:
            write_dataset(directory, data, graph, provenance)
        except OSError as exc:
            raise DataError(
                f"I/O failure after writing {len(written)} of "
                f"{len(manifest.dataset_dirs())} datasets: {exc}"
            ) from exc
        written.append(directory)
    return written


def run_discovery(manifest: RunManifest) -> None:
    """Run built-in algorithms over the generated tree, one prediction file per
    dataset. Failures are recorded as .error markers and do not abort the run."""
    builtin = [a for a in manifest.algorithms if a in BUILTIN_ALGORITHMS]
    for directory in manifest.dataset_dirs():
        if not directory.is_dir():
            raise DataError(f"dataset directory {directory} missing; run generate first")
        if not builtin:
            continue
        data, _, provenance = read_dataset(directory)
        for algorithm in builtin:
            pred_path = directory / f"pred_{algorithm}.json"
            error_path = directory / f"pred_{algorithm}.error"
            try:
                cfg = PcConfig(
                    max_lag=provenance["max_lag"],
                    alpha=manifest.pc_alpha,
                    max_condition_set=manifest.pc_max_condition_set,
                )
                pred = pc_discover(data, cfg)
            except BenchmarkError as exc:
                error_path.write_text(f"{type(exc).__name__}: {exc}\n", encoding="utf-8")
                if pred_path.exists():
                    pred_path.unlink()
                continue
            pred_path.write_text(discovered_to_json(pred, algorithm=algorithm), encoding="utf-8")
            if error_path.exists():
                error_path.unlink()


def run_evaluation(manifest: RunManifest) -> list[dict]:
    """Score available predictions against ground truth.

    Produces one eval JSON per (dataset, algorithm) pair and the aggregate
    results.csv shaped like a variants-by-algorithms table. Missing
    third-party predictions render as dashes.
    """
    results = []
    for (variant_id, size, num_variables, max_lag), directory in zip(
        manifest.dataset_specs(), manifest.dataset_dirs()
    ):
        if not directory.is_dir():
            raise DataError(f"dataset directory {directory} missing; run generate first")
        _, truth, _ = read_dataset(directory)
        row = {
            "variant": variant_id,
            "size": size,
            "num_variables": num_variables,
            "max_lag": max_lag,
        }
        for algorithm in manifest.algorithms:
            pred_path = directory / f"pred_{algorithm}.json"
            error_path = directory / f"pred_{algorithm}.error"
            report = None
            if pred_path.exists():
                try:
                    pred = discovered_from_json(pred_path.read_text(encoding="utf-8"))
                    report = evaluate(truth, pred)
                    status = "ok"
                except BenchmarkError as exc:
                    status = f"error: {exc}"
            elif error_path.exists():
                status = f"error: {error_path.read_text(encoding='utf-8').strip()}"
            else:
                status = "missing"
            if report is not None:
                (directory / f"eval_{algorithm}.json").write_text(
                    report_to_json(report, variant_id=variant_id, algorithm=algorithm),
                    encoding="utf-8",
                )
            row[algorithm] = (report, status)
        results.append(row)

    if manifest.algorithms:
        _write_results_csv(manifest.output_dir / "results.csv", results, manifest.algorithms)
    else:
        warnings.warn("no algorithms configured; results table is empty")
    return results


def _write_results_csv(path: Path, results: list[dict], algorithms):
    header = ["variant", "size", "num_variables", "max_lag"]
    for algorithm in algorithms:
        header.extend(
            [f"{algorithm}_tpr", f"{algorithm}_fdr", f"{algorithm}_shd", f"{algorithm}_status"]
        )
    lines = [",".join(header)]
    for row in results:
        cells = [row["variant"], str(row["size"]), str(row["num_variables"]), str(row["max_lag"])]
        for algorithm in algorithms:
            report, status = row[algorithm]
            if report is None:
                cells.extend(["--", "--", "--", status.replace(",", ";")])
            else:
                cells.extend(
                    [f"{report.tpr:.2f}", f"{report.fdr:.2f}", str(report.shd), status]
                )
        lines.append(",".join(cells))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def run_benchmark(manifest: RunManifest) -> list[dict]:
    """generate -> discover -> evaluate, end to end."""
    generate_suite(manifest)
    run_discovery(manifest)
    return run_evaluation(manifest)


# ---------------------------------------------------------------------------
# Figures


def emit_plots(manifest: RunManifest, results: list[dict] | None = None) -> list[Path]:
    """Static report figures: one grouped bar chart per metric and one line
    plot per dataset. Returns the written paths; empty results produce none."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    if results is None:
        results = _read_results_csv(manifest)
    written = []
    if not results or not manifest.algorithms:
        warnings.warn("no results to plot")
    else:
        labels = [f"{r['variant']}/n={r['size']}" for r in results]
        x = np.arange(len(labels))
        width = 0.8 / len(manifest.algorithms)
        for metric in ("tpr", "fdr", "shd"):
            fig, ax = plt.subplots(figsize=(max(8, 0.45 * len(labels)), 4))
            for a_idx, algorithm in enumerate(manifest.algorithms):
                heights = [
                    getattr(r[algorithm][0], metric) if r[algorithm][0] is not None else np.nan
                    for r in results
                ]
                ax.bar(x + a_idx * width, heights, width, label=algorithm)
            ax.set_xticks(x + 0.4 - width / 2)
            ax.set_xticklabels(labels, rotation=75, fontsize=7)
            ax.set_ylabel(metric.upper())
            ax.set_title(f"{metric.upper()} by variant")
            ax.legend()
            fig.tight_layout()
            out = manifest.output_dir / f"benchmark_{metric}.svg"
            fig.savefig(out)
            plt.close(fig)
            written.append(out)

    for directory in manifest.dataset_dirs():
        if not directory.is_dir():
            continue
        data, _, provenance = read_dataset(directory)
        fig, ax = plt.subplots(figsize=(9, 3.2))
        for j in range(data.num_variables):
            ax.plot(data.timestamps, data.values[:, j], linewidth=0.7, label=f"X{j}")
        ax.set_xlabel("time")
        ax.set_title(directory.name)
        ax.legend(fontsize=7, ncol=data.num_variables)
        fig.tight_layout()
        out = manifest.output_dir / f"{directory.name}_series.svg"
        fig.savefig(out)
        plt.close(fig)
        written.append(out)
    return written


def _read_results_csv(manifest: RunManifest) -> list[dict]:
    """Rebuild a results list (for plotting) from results.csv."""
    path = manifest.output_dir / "results.csv"
    if not path.exists():
        raise DataError(f"{path} not found; run evaluate or benchmark first")
    from .metrics import EvalReport

    lines = path.read_text(encoding="utf-8").splitlines()
    if len(lines) <= 1:
        return []
    header = lines[0].split(",")
    results = []
    for line in lines[1:]:
        cells = dict(zip(header, line.split(",")))
        row = {
            "variant": cells["variant"],
            "size": int(cells["size"]),
            "num_variables": int(cells["num_variables"]),
            "max_lag": int(cells["max_lag"]),
        }
        for algorithm in manifest.algorithms:
            tpr = cells.get(f"{algorithm}_tpr", "--")
            if tpr == "--":
                row[algorithm] = (None, cells.get(f"{algorithm}_status", "missing"))
            else:
                report = EvalReport(
                    tpr=float(tpr),
                    fdr=float(cells[f"{algorithm}_fdr"]),
                    shd=int(cells[f"{algorithm}_shd"]),
                    true_positives=0,
                    false_positives=0,
                    false_negatives=0,
                    reversals=0,
                )
                row[algorithm] = (report, cells[f"{algorithm}_status"])
        results.append(row)
    return results
