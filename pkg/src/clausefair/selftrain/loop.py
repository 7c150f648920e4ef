"""Iterative teacher/student self-training with confidence gating.

Each iteration fits a model on the labeled pool, scores the monitor
split, pseudo-labels the unlabeled pool, and freezes every prediction
whose confidence strictly exceeds the per-class threshold into the
labeled pool. The student then replaces the teacher. The loop stops
when the monitored accuracy has not improved for `patience` consecutive
iterations, when `max_iterations` is reached, or when an iteration
started with nothing left to pseudo-label.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

from clausefair.annotation.models import LabeledExample, Provenance
from clausefair.classifier.backend import ClassifierBackend
from clausefair.classifier.metrics import MetricsReport, evaluate
from clausefair.classifier.types import (
    ClassDistribution,
    Prediction,
    TrainConfig,
    TrainingExample,
)
from clausefair.errors import DataError, UnverifiedSynthetic
from clausefair.labels import LABELS, Label

HISTOGRAM_BINS = 10


@dataclass(frozen=True)
class ThresholdConfig:
    """Per-class confidence thresholds, indexed like a distribution.

    Defaults sit inside the documented tuning range [0.6, 0.85]."""

    tau: tuple[float, float, float] = (0.75, 0.75, 0.75)

    def __post_init__(self):
        if len(self.tau) != 3 or any(not 0 < t < 1 for t in self.tau):
            raise DataError(f"thresholds must be three reals in (0,1): {self.tau}")

    def __getitem__(self, label: Label) -> float:
        return self.tau[label.severity]

    def to_dict(self) -> dict:
        return {"tau": list(self.tau)}

    @classmethod
    def from_dict(cls, d: dict) -> "ThresholdConfig":
        return cls(tau=tuple(d["tau"]))


@dataclass(frozen=True)
class StoppingPolicy:
    patience: int = 1
    monitor_split: str = "validation"
    max_iterations: int = 10

    def __post_init__(self):
        if self.patience < 1:
            raise DataError("patience must be >= 1")
        if self.monitor_split not in ("validation", "test"):
            raise DataError(
                f"monitor_split must be 'validation' or 'test': {self.monitor_split!r}"
            )
        if self.max_iterations < 1:
            raise DataError("max_iterations must be >= 1")

    def to_dict(self) -> dict:
        return {
            "patience": self.patience,
            "monitor_split": self.monitor_split,
            "max_iterations": self.max_iterations,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "StoppingPolicy":
        return cls(**d)


@dataclass
class IterationRecord:
    iteration: int
    labeled_size: int
    unlabeled_size: int
    accepted: int
    accepted_per_class: dict[str, int]
    metrics: MetricsReport
    confidence_histogram: list[int]
    labeled_size_after: int
    unlabeled_size_after: int

    def to_dict(self) -> dict:
        return {
            "event": "iteration",
            "iteration": self.iteration,
            "labeled_size": self.labeled_size,
            "unlabeled_size": self.unlabeled_size,
            "accepted": self.accepted,
            "accepted_per_class": dict(self.accepted_per_class),
            "metrics": self.metrics.to_dict(),
            "confidence_histogram": list(self.confidence_histogram),
            "labeled_size_after": self.labeled_size_after,
            "unlabeled_size_after": self.unlabeled_size_after,
        }


@dataclass
class SelfTrainState:
    iteration: int = 0
    labeled_pool: list[LabeledExample] = field(default_factory=list)
    unlabeled_pool: list[str] = field(default_factory=list)
    history: list[IterationRecord] = field(default_factory=list)
    injections: list[dict] = field(default_factory=list)
    best_iteration: int = 0
    best_accuracy: float = float("-inf")

    def labeled_ids(self) -> set[str]:
        return {ex.sentence_id for ex in self.labeled_pool}

    def check_disjoint(self):
        overlap = self.labeled_ids() & set(self.unlabeled_pool)
        if overlap:
            raise DataError(f"labeled and unlabeled pools overlap: {sorted(overlap)[:5]}")

    def class_counts(self) -> dict[str, int]:
        counts = {l.value: 0 for l in LABELS}
        for ex in self.labeled_pool:
            counts[ex.label.value] += 1
        return counts


def new_state(
    labeled: Sequence[LabeledExample], unlabeled_ids: Sequence[str]
) -> SelfTrainState:
    state = SelfTrainState(
        labeled_pool=list(labeled), unlabeled_pool=list(unlabeled_ids)
    )
    state.check_disjoint()
    return state


def filter_by_confidence(
    predictions: Sequence[Prediction], tau: ThresholdConfig
) -> tuple[list[Prediction], list[Prediction]]:
    """Partition predictions by the strict confidence criterion.

    Accepted means confidence strictly exceeds the threshold of the
    predicted class; boundary equality is rejected. Order is preserved
    within both outputs.
    """
    accepted, rejected = [], []
    for p in predictions:
        (accepted if p.confidence > tau[p.predicted] else rejected).append(p)
    return accepted, rejected


def inject_synthetic(
    state: SelfTrainState, examples: Sequence[LabeledExample]
) -> SelfTrainState:
    """Add verified synthetic examples to the labeled pool (pre-iteration 1)."""
    if not examples:
        return state
    if state.iteration != 0:
        raise DataError("synthetic injection is only allowed before iteration 1")
    for ex in examples:
        if ex.provenance is not Provenance.SYNTHETIC or not ex.verified:
            raise UnverifiedSynthetic(
                f"example {ex.sentence_id!r} is not a verified synthetic"
            )
    known = state.labeled_ids() | set(state.unlabeled_pool)
    for ex in examples:
        if ex.sentence_id in known:
            raise DataError(f"synthetic id {ex.sentence_id!r} already pooled")
        known.add(ex.sentence_id)
    per_class = {l.value: 0 for l in LABELS}
    for ex in examples:
        per_class[ex.label.value] += 1
        state.labeled_pool.append(ex)
    state.injections.append({"event": "injection", "count": len(examples),
                             "per_class": per_class})
    return state


def _to_training(
    pool: Sequence[LabeledExample], texts: Mapping[str, str]
) -> list[TrainingExample]:
    out = []
    for ex in pool:
        text = texts.get(ex.sentence_id)
        if text is None:
            raise DataError(f"no text available for sentence {ex.sentence_id!r}")
        out.append(TrainingExample(ex.sentence_id, text, ex.label))
    return out


def _predict_ids(
    model: ClassifierBackend, ids: Sequence[str], texts: Mapping[str, str]
) -> list[Prediction]:
    if not ids:
        return []
    missing = [sid for sid in ids if sid not in texts]
    if missing:
        raise DataError(f"no text available for sentences {missing[:5]}")
    probs = model.predict_distribution([texts[sid] for sid in ids])
    return [
        Prediction.from_distribution(
            sid, ClassDistribution(p=(float(r[0]), float(r[1]), float(r[2])))
        )
        for sid, r in zip(ids, probs)
    ]


def confidence_histogram(predictions: Sequence[Prediction]) -> list[int]:
    bins = [0] * HISTOGRAM_BINS
    for p in predictions:
        bins[min(int(p.confidence * HISTOGRAM_BINS), HISTOGRAM_BINS - 1)] += 1
    return bins


def self_train(
    backend: ClassifierBackend,
    labeled: Sequence[LabeledExample] | None,
    unlabeled_ids: Sequence[str] | None,
    texts: Mapping[str, str],
    tau: ThresholdConfig,
    stopping: StoppingPolicy,
    cfg: TrainConfig,
    monitor: Sequence[LabeledExample],
    *,
    state: SelfTrainState | None = None,
    warm_start: bool = False,
) -> tuple[ClassifierBackend, SelfTrainState]:
    """Run the self-training loop; returns the best model and full state.

    `monitor` holds the gold labels of the monitored split. Pass a
    prepared `state` instead of (labeled, unlabeled_ids) to start from
    a pool that already received synthetic injections.
    """
    if state is None:
        state = new_state(labeled or [], unlabeled_ids or [])
    state.check_disjoint()
    if not monitor:
        raise DataError("self_train needs a non-empty monitor split")
    monitor_ids = [ex.sentence_id for ex in monitor]
    monitor_gold = [ex.label for ex in monitor]

    best_snapshot = None
    streak = 0

    while state.iteration < stopping.max_iterations:
        iteration = state.iteration + 1
        pool_was_empty = not state.unlabeled_pool
        labeled_size = len(state.labeled_pool)
        unlabeled_size = len(state.unlabeled_pool)

        backend.fit(
            _to_training(state.labeled_pool, texts),
            cfg,
            warm_start=warm_start and iteration > 1,
        )
        report = evaluate(_predict_ids(backend, monitor_ids, texts), monitor_gold)

        predictions = _predict_ids(backend, state.unlabeled_pool, texts)
        accepted, _ = filter_by_confidence(predictions, tau)
        accepted_per_class = {l.value: 0 for l in LABELS}
        for p in accepted:
            accepted_per_class[p.predicted.value] += 1
            state.labeled_pool.append(
                LabeledExample(
                    sentence_id=p.sentence_id,
                    label=p.predicted,
                    provenance=Provenance.PSEUDO,
                    confidence=p.confidence,
                )
            )
        accepted_ids = {p.sentence_id for p in accepted}
        state.unlabeled_pool = [
            sid for sid in state.unlabeled_pool if sid not in accepted_ids
        ]

        state.history.append(
            IterationRecord(
                iteration=iteration,
                labeled_size=labeled_size,
                unlabeled_size=unlabeled_size,
                accepted=len(accepted),
                accepted_per_class=accepted_per_class,
                metrics=report,
                confidence_histogram=confidence_histogram(predictions),
                labeled_size_after=len(state.labeled_pool),
                unlabeled_size_after=len(state.unlabeled_pool),
            )
        )
        state.iteration = iteration

        if report.accuracy > state.best_accuracy:
            state.best_accuracy = report.accuracy
            state.best_iteration = iteration
            best_snapshot = backend.clone_state()
            streak = 0
        else:
            streak += 1

        if streak >= stopping.patience:
            break
        if pool_was_empty:
            break

    if best_snapshot is not None:
        backend.restore_state(best_snapshot)
    return backend, state


def export_history(state: SelfTrainState, path: str | Path) -> int:
    """Write injection events and iteration records as JSON lines."""
    records = list(state.injections) + [r.to_dict() for r in state.history]
    with Path(path).open("w", encoding="utf-8") as f:
        for record in records:
            f.write(json.dumps(record, ensure_ascii=False) + "\n")
    return len(records)
