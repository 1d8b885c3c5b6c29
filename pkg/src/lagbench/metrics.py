"""Scoring of discovered lagged graphs against ground truth.

Matching is lag-exact by default: a predicted edge counts as recovered only if
its (src, dst, lag) triple appears in the truth. A reversal is an unmatched
predicted edge whose mirrored triple is an unmatched true edge; it contributes
one unit to SHD, counts against FDR, and is excluded from the plain FP/FN
tallies. All ratio conventions are total: 0/0 yields 0.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

from .errors import ConfigurationError, EvaluationError, OracleCapacityError
from .graph import TemporalCausalGraph, format_real

Triple = tuple[int, int, int]

ORACLE_MAX_EDGES = 6


@dataclass(frozen=True)
class DiscoveredGraph:
    """Algorithm output: directed lagged edges without coefficients."""

    num_variables: int
    max_lag: int
    edges: frozenset[Triple]

    def __post_init__(self):
        object.__setattr__(
            self, "edges", frozenset((int(s), int(d), int(l)) for s, d, l in self.edges)
        )
        if self.num_variables < 1 or self.max_lag < 1:
            raise ConfigurationError("num_variables and max_lag must be >= 1")
        for src, dst, lag in self.edges:
            if not 0 <= src < self.num_variables or not 0 <= dst < self.num_variables:
                raise ConfigurationError(f"edge ({src}, {dst}, {lag}) has an invalid variable")
            if not 1 <= lag <= self.max_lag:
                raise ConfigurationError(f"edge ({src}, {dst}, {lag}) has lag outside [1, max_lag]")


@dataclass(frozen=True)
class EvalReport:
    """TPR/FDR/SHD plus the edge-level confusion breakdown."""

    tpr: float
    fdr: float
    shd: int
    true_positives: int
    false_positives: int
    false_negatives: int
    reversals: int


def _truth_triples(truth) -> frozenset[Triple]:
    if isinstance(truth, TemporalCausalGraph):
        return truth.edge_triples()
    return frozenset(truth.edges)


def evaluate(truth, pred: DiscoveredGraph, mode: str = "lagged") -> EvalReport:
    """Score ``pred`` against ``truth`` (a TemporalCausalGraph or DiscoveredGraph).

    ``mode="lagged"`` matches full (src, dst, lag) triples; ``mode="summary"``
    collapses lags to (src, dst) pairs first. Lag-exact matching is the
    default because the ground truth is lag-resolved.
    """
    if truth.num_variables != pred.num_variables:
        raise EvaluationError(
            f"variable count mismatch: truth has {truth.num_variables}, "
            f"prediction has {pred.num_variables}"
        )
    if mode not in ("lagged", "summary"):
        raise ConfigurationError(f"unknown evaluation mode {mode!r}")

    true_edges = _truth_triples(truth)
    pred_edges = frozenset(pred.edges)
    if mode == "summary":
        true_edges = frozenset((s, d) for s, d, _ in true_edges)
        pred_edges = frozenset((s, d) for s, d, _ in pred_edges)

    tp = len(true_edges & pred_edges)
    missed = true_edges - pred_edges
    spurious = pred_edges - true_edges
    reversals = sum(1 for e in spurious if _mirror(e) in missed and _mirror(e) != e)

    fp = len(spurious) - reversals
    fn = len(missed) - reversals
    tpr = tp / len(true_edges) if true_edges else 0.0
    fdr = (len(pred_edges) - tp) / len(pred_edges) if pred_edges else 0.0
    return EvalReport(
        tpr=tpr,
        fdr=fdr,
        shd=fp + fn + reversals,
        true_positives=tp,
        false_positives=fp,
        false_negatives=fn,
        reversals=reversals,
    )


def _mirror(edge):
    if len(edge) == 3:
        src, dst, lag = edge
        return (dst, src, lag)
    src, dst = edge
    return (dst, src)


def shd_oracle(truth, pred: DiscoveredGraph) -> int:
    """Minimum number of single-edge additions, deletions, or reversals
    transforming ``pred`` into ``truth``, found by breadth-first search over
    edit states. Exhaustive and slow; intended for tests on small graphs.

    Additions are restricted to true edges: any sequence that adds an edge
    outside the target graph must later remove or re-reverse it, so dropping
    the pair never lengthens the sequence.
    """
    true_edges = _truth_triples(truth)
    pred_edges = frozenset(pred.edges)
    if len(true_edges) > ORACLE_MAX_EDGES or len(pred_edges) > ORACLE_MAX_EDGES:
        raise OracleCapacityError(
            f"oracle handles at most {ORACLE_MAX_EDGES} edges per graph, "
            f"got {len(true_edges)} true / {len(pred_edges)} predicted"
        )

    start, goal = pred_edges, true_edges
    if start == goal:
        return 0
    seen = {start}
    queue = deque([(start, 0)])
    while queue:
        state, dist = queue.popleft()
        for nxt in _edit_neighbors(state, goal):
            if nxt in seen:
                continue
            if nxt == goal:
                return dist + 1
            seen.add(nxt)
            queue.append((nxt, dist + 1))
    raise AssertionError("edit search exhausted without reaching the target graph")


def _edit_neighbors(state: frozenset, goal: frozenset):
    for edge in state:
        yield state - {edge}
        mirrored = _mirror(edge)
        if mirrored != edge and mirrored not in state:
            yield (state - {edge}) | {mirrored}
    for edge in goal - state:
        yield state | {edge}


def report_to_json(report: EvalReport, *, variant_id: str, algorithm: str) -> str:
    """EvalReport JSON with fixed field order."""
    lines = [
        "{",
        f'  "variant_id": {json.dumps(str(variant_id))},',
        f'  "algorithm": {json.dumps(str(algorithm))},',
        f'  "tpr": {format_real(report.tpr)},',
        f'  "fdr": {format_real(report.fdr)},',
        f'  "shd": {report.shd},',
        f'  "tp": {report.true_positives},',
        f'  "fp": {report.false_positives},',
        f'  "fn": {report.false_negatives},',
        f'  "reversals": {report.reversals}',
        "}",
    ]
    return "\n".join(lines) + "\n"


def report_from_json(text: str) -> tuple[EvalReport, str, str]:
    doc = json.loads(text)
    report = EvalReport(
        tpr=float(doc["tpr"]),
        fdr=float(doc["fdr"]),
        shd=int(doc["shd"]),
        true_positives=int(doc["tp"]),
        false_positives=int(doc["fp"]),
        false_negatives=int(doc["fn"]),
        reversals=int(doc["reversals"]),
    )
    return report, str(doc["variant_id"]), str(doc["algorithm"])
