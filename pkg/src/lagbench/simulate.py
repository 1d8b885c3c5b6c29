"""Structural-equation simulation of multivariate time series.

Turns a :class:`~lagbench.graph.TemporalCausalGraph` plus a functional-form and
noise specification into a complete, regularly indexed dataset. Three forms are
supported: linear, polynomial (monomial edge terms, inputs clipped before
exponentiation), and trigonometric with deterministic trend and seasonality.

A fixed burn-in prefix is simulated on negative time indices and discarded, so
row i of the output sits at t = i and the trend/seasonal phase is aligned with
the returned grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, InstabilityError, UnsupportedFormError
from .graph import TemporalCausalGraph, spectral_radius

BURN_IN = 200

# |x| beyond this aborts the simulation instead of returning garbage.
OVERFLOW_GUARD = 1.0e6

# Monomial inputs are clipped to this interval before exponentiation so cubic
# terms cannot blow up; the clip is part of the generative model.
POLY_CLIP = 10.0

# Coupling strength of the latent confounder per coupling kind.
CONFOUNDER_COUPLING = {"linear": 0.4, "quadratic": 0.2}

NOISE_KINDS = ("gaussian", "student_t", "laplace", "mixed")
FORMS = ("linear", "polynomial", "trig_trend_seasonal")


@dataclass(frozen=True)
class NoiseModel:
    """Zero-mean innovation distribution, normalized so std = ``scale``.

    ``student_t`` draws are rescaled by scale / sqrt(dof / (dof - 2));
    ``mixed`` picks the Gaussian component with probability ``mix_ratio`` and
    a variance-matched Laplace otherwise.
    """

    kind: str
    scale: float
    dof: float | None = None
    mix_ratio: float | None = None

    def __post_init__(self):
        if self.kind not in NOISE_KINDS:
            raise ConfigurationError(f"unknown noise kind {self.kind!r}, expected {NOISE_KINDS}")
        if not self.scale > 0:
            raise ConfigurationError("noise scale must be positive")
        if self.kind == "student_t":
            if self.dof is None or not self.dof > 2:
                raise ConfigurationError("student_t noise requires dof > 2 (finite variance)")
        if self.kind == "mixed":
            if self.mix_ratio is None or not 0 <= self.mix_ratio <= 1:
                raise ConfigurationError("mixed noise requires mix_ratio in [0, 1]")


@dataclass(frozen=True)
class TrendSeason:
    """Deterministic trend and seasonal component shared by all variables.

    ``harmonics`` lists (amplitude, harmonic index, phase) terms of the form
    a * sin(2*pi*k*t / season_period + phase).
    """

    trend_slope: float = 0.0
    season_period: int = 12
    harmonics: tuple[tuple[float, int, float], ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "harmonics", tuple((float(a), int(k), float(p)) for a, k, p in self.harmonics)
        )
        if self.season_period < 2:
            raise ConfigurationError("season_period must be >= 2")
        for a, k, _ in self.harmonics:
            if not math.isfinite(a):
                raise ConfigurationError("harmonic amplitudes must be finite")
            if k < 1:
                raise ConfigurationError("harmonic index must be >= 1")


@dataclass(frozen=True)
class ScmSpec:
    """Full generative specification for one dataset family."""

    graph: TemporalCausalGraph
    form: str
    noise: tuple[NoiseModel, ...]
    trend_season: TrendSeason | None = None
    poly_degrees: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "noise", tuple(self.noise))
        if self.form not in FORMS:
            raise ConfigurationError(f"unknown form {self.form!r}, expected {FORMS}")
        if len(self.noise) != self.graph.num_variables:
            raise ConfigurationError(
                f"need one NoiseModel per variable "
                f"({self.graph.num_variables}), got {len(self.noise)}"
            )
        if self.form == "trig_trend_seasonal" and self.trend_season is None:
            raise ConfigurationError("trig_trend_seasonal form requires trend_season")
        if self.form != "trig_trend_seasonal" and self.trend_season is not None:
            raise ConfigurationError(f"trend_season is not used by the {self.form} form")
        if self.form == "polynomial":
            if self.poly_degrees is None:
                raise ConfigurationError("polynomial form requires poly_degrees")
            object.__setattr__(self, "poly_degrees", tuple(int(d) for d in self.poly_degrees))
            if len(self.poly_degrees) != len(self.graph.edges):
                raise ConfigurationError(
                    f"need one degree per edge ({len(self.graph.edges)}), "
                    f"got {len(self.poly_degrees)}"
                )
            if any(d not in (1, 2, 3) for d in self.poly_degrees):
                raise ConfigurationError("poly degrees must be in {1, 2, 3}")
        elif self.poly_degrees is not None:
            raise ConfigurationError(f"poly_degrees is not used by the {self.form} form")


@dataclass
class Dataset:
    """Timestamps, value matrix, optional observation mask, and provenance.

    ``mask`` entries are True where the cell is observed. Values are kept even
    under the mask so evaluations can run on both complete and observed data;
    unobserved cells may be NaN only in datasets read back from observed files.
    """

    timestamps: np.ndarray
    values: np.ndarray
    mask: np.ndarray | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.timestamps = np.asarray(self.timestamps, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.timestamps.ndim != 1 or self.values.ndim != 2:
            raise ConfigurationError("timestamps must be 1-D and values 2-D")
        if len(self.timestamps) != len(self.values):
            raise ConfigurationError("timestamps and values disagree on row count")
        if len(self.timestamps) > 1 and not np.all(np.diff(self.timestamps) > 0):
            raise ConfigurationError("timestamps must be strictly increasing")
        if self.mask is not None:
            self.mask = np.asarray(self.mask, dtype=bool)
            if self.mask.shape != self.values.shape:
                raise ConfigurationError("mask shape must match values")
            observed = self.values[self.mask]
        else:
            observed = self.values
        if not np.all(np.isfinite(observed)):
            raise ConfigurationError("observed values must be finite")

    @property
    def num_variables(self) -> int:
        return self.values.shape[1]

    def __len__(self) -> int:
        return len(self.timestamps)


@dataclass(frozen=True)
class StabilityResult:
    passed: bool
    spectral_radius: float


def sample_noise(model: NoiseModel, n: int, seed) -> np.ndarray:
    """Draw ``n`` i.i.d. innovations with standard deviation ``model.scale``.

    ``seed`` may be an int or a numpy Generator. The mixed model draws its
    Gaussian component first, so mix_ratio = 1 reproduces the pure-Gaussian
    stream bit for bit under the same seed.
    """
    rng = np.random.default_rng(seed)
    scale = model.scale
    if model.kind == "gaussian":
        return rng.normal(0.0, scale, size=n)
    if model.kind == "student_t":
        std_t = math.sqrt(model.dof / (model.dof - 2.0))
        return rng.standard_t(model.dof, size=n) * (scale / std_t)
    if model.kind == "laplace":
        return rng.laplace(0.0, scale / math.sqrt(2.0), size=n)
    gaussian = rng.normal(0.0, scale, size=n)
    laplace = rng.laplace(0.0, scale / math.sqrt(2.0), size=n)
    pick_gaussian = rng.random(n) < model.mix_ratio
    return np.where(pick_gaussian, gaussian, laplace)


def _confounder_path(spec, length: int, rng) -> np.ndarray:
    """Latent AR(1) trajectory, zero-initialized (burn-in removes the start)."""
    innovations = rng.normal(0.0, spec.noise_scale, size=length)
    u = np.empty(length)
    prev = 0.0
    for t in range(length):
        prev = spec.ar_coeff * prev + innovations[t]
        u[t] = prev
    return u


def simulate(spec: ScmSpec, length: int, seed: int) -> Dataset:
    """Simulate ``length`` rows on the unit grid t = 0, 1, ...

    Each variable is the sum of its lagged parent terms, the deterministic
    trend/seasonal component (trig form only), the latent confounder coupling
    (when the graph carries one), and its innovation. A ``BURN_IN`` prefix on
    negative time is simulated and discarded; the pre-burn-in lag window is
    zero-filled. Deterministic in ``seed``.

    Raises
    ------
    InstabilityError
        If any |x| exceeds ``OVERFLOW_GUARD`` during the recursion.
    """
    if length < 1:
        raise ConfigurationError("length must be >= 1")
    graph = spec.graph
    n = graph.num_variables
    total = BURN_IN + length

    streams = np.random.SeedSequence(seed).spawn(n + 1)
    eps = np.column_stack(
        [sample_noise(spec.noise[j], total, np.random.default_rng(streams[j])) for j in range(n)]
    )

    u = None
    couplings: list[tuple[int, str, float]] = []
    if graph.confounder is not None:
        u = _confounder_path(graph.confounder, total, np.random.default_rng(streams[n]))
        couplings = [
            (var, kind, CONFOUNDER_COUPLING[kind]) for var, kind in graph.confounder.targets
        ]

    tgrid = np.arange(-BURN_IN, length, dtype=float)
    deterministic = None
    if spec.form == "trig_trend_seasonal":
        ts = spec.trend_season
        deterministic = ts.trend_slope * tgrid
        for amplitude, harmonic, phase in ts.harmonics:
            deterministic = deterministic + amplitude * np.sin(
                2.0 * math.pi * harmonic * tgrid / ts.season_period + phase
            )

    # Edge terms, resolved once: (src, dst, lag, callable(value) -> contribution).
    terms = []
    for idx, e in enumerate(graph.edges):
        if spec.form == "linear":
            fn = _linear_term(e.coeff)
        elif spec.form == "polynomial":
            fn = _poly_term(e.coeff, spec.poly_degrees[idx])
        else:  # trig form alternates sin/cos by edge index
            fn = _trig_term(e.coeff, use_sin=(idx % 2 == 0))
        terms.append((e.src, e.dst, e.lag, fn))

    x = np.zeros((total, n))
    for t in range(total):
        row = eps[t].copy()
        if deterministic is not None:
            row += deterministic[t]
        for var, kind, strength in couplings:
            row[var] += strength * (u[t] if kind == "linear" else u[t] * u[t])
        for src, dst, lag, fn in terms:
            if t >= lag:
                row[dst] += fn(x[t - lag, src])
        x[t] = row
        bad = np.abs(row) > OVERFLOW_GUARD
        if bad.any():
            j = int(np.argmax(bad))
            raise InstabilityError(variable=j, step=t - BURN_IN, value=float(row[j]))

    return Dataset(
        timestamps=np.arange(length, dtype=float),
        values=x[BURN_IN:],
        mask=None,
        meta={
            "seed": int(seed),
            "form": spec.form,
            "burn_in": BURN_IN,
            "max_lag": graph.max_lag,
            "num_variables": n,
            "confounded": graph.confounder is not None,
        },
    )


def _linear_term(coeff):
    return lambda v: coeff * v


def _poly_term(coeff, degree):
    return lambda v: coeff * min(max(v, -POLY_CLIP), POLY_CLIP) ** degree


def _trig_term(coeff, use_sin):
    trig = math.sin if use_sin else math.cos
    return lambda v: coeff * trig(v)


def stability_check(spec: ScmSpec) -> StabilityResult:
    """Spectral radius of the VAR companion matrix; pass iff below 0.98.

    Only meaningful for the linear form, where edge coefficients are the VAR
    weights.
    """
    if spec.form != "linear":
        raise UnsupportedFormError(f"stability_check supports the linear form, got {spec.form!r}")
    radius = spectral_radius(spec.graph)
    return StabilityResult(passed=radius < 0.98, spectral_radius=radius)
