"""Built-in baseline: PC-style skeleton search on lag-expanded variables.

The design matrix stacks every variable at lags 0..max_lag; candidate causes
are the lagged columns only, so temporal orientation is free and no separate
orientation phase is needed. Conditional independence is tested with partial
correlation and the Fisher z-transform. Rows touching any masked cell are
dropped (listwise deletion), which also defines the baseline's missing-data
policy. Row order, not timestamps, defines the lag: on irregularly sampled
data consecutive retained rows are treated as one step apart.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .errors import (
    ConfigurationError,
    InsufficientDataError,
    InsufficientSampleError,
    NumericalDegeneracyError,
)
from .metrics import DiscoveredGraph
from .simulate import Dataset

_CORR_CLIP = 1.0 - 1e-7


@dataclass(frozen=True)
class PcConfig:
    max_lag: int
    alpha: float = 0.05
    max_condition_set: int = 3

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise ConfigurationError("alpha must be in (0, 1)")
        if self.max_lag < 1:
            raise ConfigurationError("max_lag must be >= 1")
        if self.max_condition_set < 0:
            raise ConfigurationError("max_condition_set must be >= 0")


def lag_expand(data: Dataset, max_lag: int) -> tuple[np.ndarray, int]:
    """Design matrix over (variable, lag) columns with listwise deletion.

    Row t holds x_j(t - lag) for every variable j and lag 0..max_lag; column
    ``lag * N + j`` is variable j at that lag. Rows containing any masked cell
    in their window are dropped. Returns the matrix and its surviving row
    count.
    """
    values = data.values
    n_rows, n_vars = values.shape
    usable = n_rows - max_lag
    if usable < 2:
        raise InsufficientDataError(
            f"need at least max_lag + 2 = {max_lag + 2} rows, got {n_rows}"
        )
    blocks = [values[max_lag - lag : n_rows - lag] for lag in range(max_lag + 1)]
    design = np.hstack(blocks)
    if data.mask is not None:
        mask_blocks = [data.mask[max_lag - lag : n_rows - lag] for lag in range(max_lag + 1)]
        complete = np.hstack(mask_blocks).all(axis=1)
        design = design[complete]
    surviving = len(design)
    if surviving < 2:
        raise InsufficientDataError(
            f"only {surviving} complete rows survive listwise deletion"
        )
    return design, surviving


def fisher_z_test(r: float, n_eff: int, k: int) -> float:
    """Two-sided p-value for a (partial) correlation of order ``k``.

    z = sqrt(n_eff - k - 3) * atanh(r), referred to the standard normal.
    """
    if n_eff <= k + 3:
        raise InsufficientSampleError(
            f"need n_eff > k + 3 for the Fisher z-test, got n_eff={n_eff}, k={k}"
        )
    if not abs(r) < 1:
        raise ConfigurationError(f"|r| must be < 1, got {r}")
    z = math.sqrt(n_eff - k - 3) * math.atanh(r)
    return float(2.0 * stats.norm.sf(abs(z)))


def _partial_corr(corr: np.ndarray, i: int, j: int, given: tuple[int, ...]) -> float:
    """Partial correlation of columns i and j given ``given``, from the
    correlation matrix (precision-submatrix method)."""
    if not given:
        r = corr[i, j]
    else:
        idx = [i, j, *given]
        precision = np.linalg.pinv(corr[np.ix_(idx, idx)])
        denom = precision[0, 0] * precision[1, 1]
        if denom <= 0 or not np.isfinite(denom):
            raise NumericalDegeneracyError(columns=idx)
        r = -precision[0, 1] / math.sqrt(denom)
    if not np.isfinite(r):
        raise NumericalDegeneracyError(columns=(i, j, *given))
    return float(min(_CORR_CLIP, max(-_CORR_CLIP, r)))


def pc_discover(data: Dataset, cfg: PcConfig) -> DiscoveredGraph:
    """Skeleton search from lagged columns into time-t columns.

    Starts from the fully connected candidate set per target and removes an
    edge as soon as some conditioning set (drawn from the target's remaining
    candidate parents, level-stable snapshots, sizes 0..max_condition_set)
    renders it independent at level ``alpha``. Deterministic given the data;
    no randomness is involved.
    """
    design, n_eff = lag_expand(data, cfg.max_lag)
    n_vars = data.values.shape[1]

    stds = design.std(axis=0)
    degenerate = np.where(stds == 0)[0]
    if degenerate.size:
        raise NumericalDegeneracyError(
            columns=degenerate.tolist(), message="constant design columns"
        )
    corr = np.corrcoef(design, rowvar=False)
    if not np.all(np.isfinite(corr)):
        raise NumericalDegeneracyError(
            columns=np.where(~np.isfinite(corr).all(axis=0))[0].tolist(),
            message="non-finite correlation entries",
        )

    lagged_cols = list(range(n_vars, (cfg.max_lag + 1) * n_vars))
    edges = set()
    for target in range(n_vars):
        parents = set(lagged_cols)
        for level in range(cfg.max_condition_set + 1):
            snapshot = sorted(parents)
            if len(snapshot) - 1 < level:
                break
            for col in snapshot:
                if col not in parents:
                    continue
                pool = [c for c in snapshot if c != col]
                for subset in itertools.combinations(pool, level):
                    r = _partial_corr(corr, target, col, subset)
                    if fisher_z_test(r, n_eff, level) >= cfg.alpha:
                        parents.discard(col)
                        break
        for col in sorted(parents):
            lag, src = divmod(col, n_vars)
            edges.add((src, target, lag))

    return DiscoveredGraph(num_variables=n_vars, max_lag=cfg.max_lag, edges=frozenset(edges))


def discovered_to_json(graph: DiscoveredGraph, *, algorithm: str | None = None) -> str:
    """DiscoveredGraph JSON: the ground-truth edge schema minus coefficients."""
    doc = {
        "num_variables": graph.num_variables,
        "max_lag": graph.max_lag,
        "edges": [
            {"src": s, "dst": d, "lag": l} for s, d, l in sorted(graph.edges)
        ],
    }
    if algorithm is not None:
        doc["algorithm"] = algorithm
    return json.dumps(doc, indent=2) + "\n"


def discovered_from_json(text: str) -> DiscoveredGraph:
    """Parse a DiscoveredGraph from JSON; the adapter for third-party outputs."""
    doc = json.loads(text)
    try:
        edges = frozenset(
            (int(e["src"]), int(e["dst"]), int(e["lag"])) for e in doc["edges"]
        )
        return DiscoveredGraph(
            num_variables=int(doc["num_variables"]),
            max_lag=int(doc["max_lag"]),
            edges=edges,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigurationError(f"malformed discovered-graph JSON: {exc}") from exc
