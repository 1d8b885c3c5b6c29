"""Synthetic time-series benchmarks with known lagged causal ground truth."""

from .corrupt import (
    BlockSpec,
    MissingnessSpec,
    SamplingScheme,
    apply_block,
    apply_mcar,
    apply_missingness,
    resample_irregular,
)
from .discover import PcConfig, fisher_z_test, lag_expand, pc_discover
from .graph import (
    ConfounderSpec,
    GraphConfig,
    LaggedEdge,
    TemporalCausalGraph,
    add_confounder,
    default_edge_count,
    generate_graph,
    unroll,
)
from .metrics import DiscoveredGraph, EvalReport, evaluate, shd_oracle
from .simulate import (
    Dataset,
    NoiseModel,
    ScmSpec,
    TrendSeason,
    sample_noise,
    simulate,
    stability_check,
)
from .suite import (
    VARIANT_IDS,
    RunManifest,
    VariantSpec,
    emit_plots,
    generate_dataset,
    generate_suite,
    load_manifest,
    resolve_variant,
    run_benchmark,
)

__all__ = [
    "BlockSpec",
    "ConfounderSpec",
    "Dataset",
    "DiscoveredGraph",
    "EvalReport",
    "GraphConfig",
    "LaggedEdge",
    "MissingnessSpec",
    "NoiseModel",
    "PcConfig",
    "RunManifest",
    "SamplingScheme",
    "ScmSpec",
    "TemporalCausalGraph",
    "TrendSeason",
    "VARIANT_IDS",
    "VariantSpec",
    "add_confounder",
    "apply_block",
    "apply_mcar",
    "apply_missingness",
    "default_edge_count",
    "emit_plots",
    "evaluate",
    "fisher_z_test",
    "generate_dataset",
    "generate_graph",
    "generate_suite",
    "lag_expand",
    "load_manifest",
    "pc_discover",
    "resample_irregular",
    "resolve_variant",
    "run_benchmark",
    "sample_noise",
    "shd_oracle",
    "simulate",
    "stability_check",
    "unroll",
]

__version__ = "0.1.0"
