"""Post-simulation realism: irregular observation times and missingness.

Both transformations leave the underlying complete values and the ground-truth
graph untouched: irregular sampling only subsamples rows, missingness only
flips mask bits. Lags keep their unit-grid meaning throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigurationError, InsufficientDataError
from .simulate import Dataset

SAMPLING_KINDS = ("regular", "irregular_exponential")
MISSINGNESS_KINDS = ("none", "mcar", "block", "combined")
BLOCK_TRIGGERS = ("mar", "nmar")


@dataclass(frozen=True)
class SamplingScheme:
    """Observation-time model; ``rate`` is events per time unit (irregular only)."""

    kind: str = "regular"
    rate: float | None = None

    def __post_init__(self):
        if self.kind not in SAMPLING_KINDS:
            raise ConfigurationError(f"unknown sampling kind {self.kind!r}")
        if self.kind == "irregular_exponential" and (self.rate is None or not self.rate > 0):
            raise ConfigurationError("irregular sampling requires rate > 0")


@dataclass(frozen=True)
class BlockSpec:
    """Contiguous-outage model: geometric lengths, value-gated starts.

    A block can start at step t only when the trigger variable exceeds
    ``threshold`` there; MAR triggers read a designated *other* variable,
    NMAR triggers read the variable's own (possibly unobserved) value.
    """

    mean_length: float
    trigger: str
    threshold: float
    rate: float

    def __post_init__(self):
        if not self.mean_length >= 1:
            raise ConfigurationError("block mean_length must be >= 1")
        if self.trigger not in BLOCK_TRIGGERS:
            raise ConfigurationError(f"unknown block trigger {self.trigger!r}")
        if not 0 <= self.rate < 1:
            raise ConfigurationError("block start rate must be in [0, 1)")


@dataclass(frozen=True)
class MissingnessSpec:
    kind: str = "none"
    mcar_rate: float | None = None
    block: BlockSpec | None = None

    def __post_init__(self):
        if self.kind not in MISSINGNESS_KINDS:
            raise ConfigurationError(f"unknown missingness kind {self.kind!r}")
        wants_mcar = self.kind in ("mcar", "combined")
        if wants_mcar != (self.mcar_rate is not None):
            raise ConfigurationError("mcar_rate must be set iff kind is mcar/combined")
        if self.mcar_rate is not None and not 0 <= self.mcar_rate <= 0.5:
            raise ConfigurationError("mcar_rate must be in [0, 0.5]")
        wants_block = self.kind in ("block", "combined")
        if wants_block != (self.block is not None):
            raise ConfigurationError("block spec must be set iff kind is block/combined")


def resample_irregular(data: Dataset, scheme: SamplingScheme, seed) -> Dataset:
    """Subsample a unit-grid dataset at exponential arrival times.

    Cumulative Exp(rate) arrivals are drawn over the series span; each arrival
    keeps the row at the nearest grid index not already taken (ties toward the
    earlier row). Arrivals after every row is taken are dropped, so the kept
    timestamps remain an i.i.d. exponential arrival sequence. Timestamps in
    the result are the real-valued arrival times.
    """
    if scheme.kind == "regular":
        return data

    rng = np.random.default_rng(seed)
    n_rows = len(data)
    t0 = float(data.timestamps[0])
    span = float(data.timestamps[-1]) - t0

    taken = np.zeros(n_rows, dtype=bool)
    kept_times: list[float] = []
    kept_rows: list[int] = []
    t = 0.0
    while True:
        t += rng.exponential(1.0 / scheme.rate)
        if t > span:
            break
        idx = _nearest_free(taken, int(round(t)))
        if idx is None:
            break
        taken[idx] = True
        kept_times.append(t0 + t)
        kept_rows.append(idx)

    min_rows = int(data.meta.get("max_lag", 1)) + 2
    if len(kept_rows) < min_rows:
        raise InsufficientDataError(
            f"irregular sampling kept {len(kept_rows)} rows; need at least {min_rows}"
        )

    rows = np.asarray(kept_rows)
    return Dataset(
        timestamps=np.asarray(kept_times),
        values=data.values[rows],
        mask=None if data.mask is None else data.mask[rows],
        meta={**data.meta, "sampling": scheme.kind, "sampling_rate": scheme.rate},
    )


def _nearest_free(taken: np.ndarray, idx: int) -> int | None:
    n = len(taken)
    idx = min(max(idx, 0), n - 1)
    if not taken[idx]:
        return idx
    for d in range(1, n):
        lo, hi = idx - d, idx + d
        if lo >= 0 and not taken[lo]:
            return lo
        if hi < n and not taken[hi]:
            return hi
    return None


def apply_mcar(data: Dataset, rate: float, seed) -> Dataset:
    """Mask each cell independently with probability ``rate``; values kept."""
    if not 0 <= rate <= 0.5:
        raise ConfigurationError(f"mcar rate must be in [0, 0.5], got {rate}")
    rng = np.random.default_rng(seed)
    mask = np.ones_like(data.values, dtype=bool) if data.mask is None else data.mask.copy()
    mask &= rng.random(data.values.shape) >= rate
    return replace(data, mask=mask, meta={**data.meta, "mcar_rate": rate})


def apply_block(data: Dataset, spec: MissingnessSpec, seed) -> Dataset:
    """Mask contiguous per-variable segments with geometric lengths.

    Scanning is per variable in index order; once a block starts the scan
    resumes after it, so adjacent blocks only merge when a fresh trigger fires
    immediately. Triggers read the underlying complete series.
    """
    if spec.kind not in ("block", "combined"):
        raise ConfigurationError(f"apply_block needs kind block/combined, got {spec.kind!r}")
    block = spec.block
    rng = np.random.default_rng(seed)
    values = data.values
    n_rows, n_vars = values.shape
    mask = np.ones_like(values, dtype=bool) if data.mask is None else data.mask.copy()

    for j in range(n_vars):
        trigger_col = j if block.trigger == "nmar" else (j + 1) % n_vars
        trigger = values[:, trigger_col]
        t = 0
        while t < n_rows:
            if trigger[t] > block.threshold and rng.random() < block.rate:
                length = int(rng.geometric(1.0 / block.mean_length))
                mask[t : t + length, j] = False
                t += length
            else:
                t += 1

    return replace(
        data,
        mask=mask,
        meta={
            **data.meta,
            "block_trigger": block.trigger,
            "block_rate": block.rate,
            "block_mean_length": block.mean_length,
        },
    )


def apply_missingness(data: Dataset, spec: MissingnessSpec, seed) -> Dataset:
    """Dispatch a MissingnessSpec; ``combined`` composes block then MCAR."""
    if spec.kind == "none":
        return data
    if spec.kind == "mcar":
        return apply_mcar(data, spec.mcar_rate, seed)
    if spec.kind == "block":
        return apply_block(data, spec, seed)
    block_seed, mcar_seed = np.random.SeedSequence(seed).spawn(2)
    masked = apply_block(data, spec, block_seed)
    return apply_mcar(masked, spec.mcar_rate, mcar_seed)
