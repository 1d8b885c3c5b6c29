"""Lag-resolved temporal causal graphs: random generation, latent confounder
attachment, lag-unrolling, and the ground-truth JSON format.

All edges point strictly backward in time (lag >= 1), so the unrolled graph
over (variable, lag) nodes is acyclic by construction.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigurationError

# Coefficients are sign * magnitude with magnitude uniform in this range:
# small enough to keep the linear system stable, large enough to be detectable.
COEFF_MAGNITUDE = (0.1, 0.5)

# A linear system is accepted only if its companion matrix has spectral
# radius below this bound.
STABILITY_BOUND = 0.98

_MAX_COEFF_REDRAWS = 200

COUPLINGS = ("linear", "quadratic")


@dataclass(frozen=True)
class LaggedEdge:
    """Directed influence of ``src`` at time t - lag onto ``dst`` at time t."""

    src: int
    dst: int
    lag: int
    coeff: float

    def __post_init__(self):
        if self.lag < 1:
            raise ConfigurationError(f"edge lag must be >= 1, got {self.lag}")
        if self.src < 0 or self.dst < 0:
            raise ConfigurationError("variable indices must be non-negative")
        if self.coeff == 0 or not math.isfinite(self.coeff):
            raise ConfigurationError("edge coefficient must be nonzero and finite")


@dataclass(frozen=True)
class ConfounderSpec:
    """Latent AR(1) process influencing two or more observed variables.

    ``targets`` pairs a variable index with a coupling tag ("linear" or
    "quadratic"). The latent process never appears in the observed edge set.
    """

    targets: tuple[tuple[int, str], ...]
    ar_coeff: float
    noise_scale: float

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple((int(v), str(c)) for v, c in self.targets))
        if len(self.targets) < 2:
            raise ConfigurationError(
                f"a confounder needs at least 2 targets, got {len(self.targets)}"
            )
        if len({v for v, _ in self.targets}) < 2:
            raise ConfigurationError("confounder targets must cover >= 2 distinct variables")
        for var, coupling in self.targets:
            if var < 0:
                raise ConfigurationError("confounder target indices must be non-negative")
            if coupling not in COUPLINGS:
                raise ConfigurationError(
                    f"unknown coupling {coupling!r}, expected one of {COUPLINGS}"
                )
        if not abs(self.ar_coeff) < 1:
            raise ConfigurationError(
                f"confounder ar_coeff must satisfy |a| < 1, got {self.ar_coeff}"
            )
        if not self.noise_scale > 0:
            raise ConfigurationError("confounder noise_scale must be positive")


@dataclass(frozen=True)
class TemporalCausalGraph:
    """Ground-truth graph over lagged variable pairs.

    Structural validity (lags in range, no duplicate (src, dst, lag) triples,
    valid indices) is enforced here. The guarantee that every variable carries
    an autoregressive edge holds for graphs produced by :func:`generate_graph`;
    hand-built graphs (e.g. scoring fixtures) may omit it.
    """

    num_variables: int
    max_lag: int
    edges: tuple[LaggedEdge, ...] = ()
    confounder: ConfounderSpec | None = None

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        if self.num_variables < 1:
            raise ConfigurationError("num_variables must be >= 1")
        if self.max_lag < 1:
            raise ConfigurationError("max_lag must be >= 1")
        seen = set()
        for e in self.edges:
            if e.src >= self.num_variables or e.dst >= self.num_variables:
                raise ConfigurationError(
                    f"edge {e} references a variable outside 0..{self.num_variables - 1}"
                )
            if e.lag > self.max_lag:
                raise ConfigurationError(f"edge {e} exceeds max_lag {self.max_lag}")
            triple = (e.src, e.dst, e.lag)
            if triple in seen:
                raise ConfigurationError(f"duplicate edge triple {triple}")
            seen.add(triple)
        if self.confounder is not None:
            for var, _ in self.confounder.targets:
                if var >= self.num_variables:
                    raise ConfigurationError(
                        f"confounder target X{var} outside 0..{self.num_variables - 1}"
                    )

    def edge_triples(self) -> frozenset[tuple[int, int, int]]:
        """Edges as (src, dst, lag) triples, coefficients dropped."""
        return frozenset((e.src, e.dst, e.lag) for e in self.edges)


@dataclass(frozen=True)
class GraphConfig:
    """Parameters for random ground-truth generation."""

    num_variables: int
    max_lag: int
    num_edges: int
    seed: int

    def __post_init__(self):
        if self.num_variables < 1:
            raise ConfigurationError("num_variables must be >= 1")
        if self.max_lag < 1:
            raise ConfigurationError("max_lag must be >= 1")
        if self.num_edges < self.num_variables:
            raise ConfigurationError(
                f"num_edges ({self.num_edges}) must be >= num_variables "
                f"({self.num_variables}) to fit the mandatory autoregressive edges"
            )
        cap = self.num_variables**2 * self.max_lag
        if self.num_edges > cap:
            raise ConfigurationError(
                f"num_edges ({self.num_edges}) exceeds the {cap} distinct "
                f"(src, dst, lag) triples available"
            )


def default_edge_count(num_variables: int) -> int:
    """Default graph density: ceil(2.25 * N) edges (9 for the 4-variable case)."""
    return math.ceil(2.25 * num_variables)


def generate_graph(config: GraphConfig) -> TemporalCausalGraph:
    """Draw a random ground-truth graph, deterministic in ``config.seed``.

    One lag-1 autoregressive edge per variable is placed first; the remaining
    edges are drawn uniformly without replacement from all other
    (src, dst, lag) triples. Coefficients are random-sign magnitudes in
    ``COEFF_MAGNITUDE`` and are redrawn (structure kept) until the implied
    linear system has companion spectral radius below ``STABILITY_BOUND``.
    """
    n, max_lag = config.num_variables, config.max_lag
    rng = np.random.default_rng(config.seed)

    structure = [(j, j, 1) for j in range(n)]
    pool = [
        (src, dst, lag)
        for src in range(n)
        for dst in range(n)
        for lag in range(1, max_lag + 1)
        if not (src == dst and lag == 1)
    ]
    extra = config.num_edges - n
    if extra > 0:
        picks = rng.choice(len(pool), size=extra, replace=False)
        structure.extend(pool[i] for i in sorted(picks))

    for _ in range(_MAX_COEFF_REDRAWS):
        magnitudes = rng.uniform(*COEFF_MAGNITUDE, size=len(structure))
        signs = rng.choice([-1.0, 1.0], size=len(structure))
        edges = tuple(
            LaggedEdge(src, dst, lag, float(s * m))
            for (src, dst, lag), s, m in zip(structure, signs, magnitudes)
        )
        graph = TemporalCausalGraph(n, max_lag, edges)
        if spectral_radius(graph) < STABILITY_BOUND:
            return graph
    raise ConfigurationError(
        f"could not draw a stable coefficient set in {_MAX_COEFF_REDRAWS} attempts "
        f"for {config}"
    )


def add_confounder(graph: TemporalCausalGraph, spec: ConfounderSpec) -> TemporalCausalGraph:
    """Attach a latent confounder; the observed edge set is unchanged."""
    for var, _ in spec.targets:
        if var >= graph.num_variables:
            raise ConfigurationError(
                f"confounder target X{var} outside 0..{graph.num_variables - 1}"
            )
    return replace(graph, confounder=spec)


def unroll(graph: TemporalCausalGraph):
    """Expand to nodes (variable, lag) for lag 0..max_lag and replicated edges.

    Each lagged edge produces one unrolled edge
    ``(src, offset + lag) -> (dst, offset)`` per window offset that fits, so
    the result is acyclic (every edge points from an older node to a newer one).

    Returns
    -------
    (nodes, edges) : list of (var, lag) pairs and list of node pairs.
    """
    nodes = [(v, lag) for lag in range(graph.max_lag + 1) for v in range(graph.num_variables)]
    edges = []
    for e in graph.edges:
        for offset in range(graph.max_lag - e.lag + 1):
            edges.append(((e.src, offset + e.lag), (e.dst, offset)))
    return nodes, edges


def companion_matrix(graph: TemporalCausalGraph) -> np.ndarray:
    """Companion matrix of the VAR(max_lag) system implied by the edge weights."""
    n, p = graph.num_variables, graph.max_lag
    comp = np.zeros((n * p, n * p))
    for e in graph.edges:
        comp[e.dst, (e.lag - 1) * n + e.src] = e.coeff
    if p > 1:
        comp[n:, :-n] = np.eye(n * (p - 1))
    return comp


def spectral_radius(graph: TemporalCausalGraph) -> float:
    """Largest eigenvalue magnitude of the companion matrix."""
    if not graph.edges:
        return 0.0
    return float(np.max(np.abs(np.linalg.eigvals(companion_matrix(graph)))))


def format_real(value: float) -> str:
    """Render a real with 17 significant digits (exact float64 round-trip)."""
    if not math.isfinite(value):
        raise ConfigurationError(f"cannot serialize non-finite real {value!r}")
    return format(float(value), ".17g")


def graph_to_json(graph: TemporalCausalGraph, *, seed: int, variant_id: str) -> str:
    """Ground-truth JSON with fixed field order and 17-digit reals."""
    lines = ["{"]
    lines.append(f'  "num_variables": {graph.num_variables},')
    lines.append(f'  "max_lag": {graph.max_lag},')
    if graph.edges:
        rows = ",\n".join(
            f'    {{"src": {e.src}, "dst": {e.dst}, "lag": {e.lag}, '
            f'"coeff": {format_real(e.coeff)}}}'
            for e in graph.edges
        )
        lines.append('  "edges": [')
        lines.append(rows)
        lines.append("  ],")
    else:
        lines.append('  "edges": [],')
    if graph.confounder is None:
        lines.append('  "confounder": null,')
    else:
        c = graph.confounder
        targets = ", ".join(f'{{"var": {v}, "coupling": "{k}"}}' for v, k in c.targets)
        lines.append('  "confounder": {')
        lines.append(f'    "targets": [{targets}],')
        lines.append(f'    "ar_coeff": {format_real(c.ar_coeff)},')
        lines.append(f'    "noise_scale": {format_real(c.noise_scale)}')
        lines.append("  },")
    lines.append(f'  "seed": {int(seed)},')
    lines.append(f'  "variant_id": {json.dumps(str(variant_id))}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_from_json(text: str) -> tuple[TemporalCausalGraph, int, str]:
    """Parse ground-truth JSON back into (graph, seed, variant_id)."""
    doc = json.loads(text)
    edges = tuple(
        LaggedEdge(int(e["src"]), int(e["dst"]), int(e["lag"]), float(e["coeff"]))
        for e in doc["edges"]
    )
    confounder = None
    if doc.get("confounder") is not None:
        c = doc["confounder"]
        confounder = ConfounderSpec(
            targets=tuple((int(t["var"]), str(t["coupling"])) for t in c["targets"]),
            ar_coeff=float(c["ar_coeff"]),
            noise_scale=float(c["noise_scale"]),
        )
    graph = TemporalCausalGraph(
        num_variables=int(doc["num_variables"]),
        max_lag=int(doc["max_lag"]),
        edges=edges,
        confounder=confounder,
    )
    return graph, int(doc["seed"]), str(doc["variant_id"])
