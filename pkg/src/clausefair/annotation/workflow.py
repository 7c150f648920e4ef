"""Dual-annotation assignment, resolution, and adjudication queue."""

from __future__ import annotations

import csv
import threading
from dataclasses import dataclass
from pathlib import Path

from clausefair.annotation.models import (
    AdjudicationRecord,
    Annotation,
    LabeledExample,
    Provenance,
)
from clausefair.errors import (
    MissingAnnotations,
    NotPending,
    PoolTooSmall,
    SelfAdjudication,
)


def assign_batch(
    sentence_ids: list[str], annotator_pool: list[str]
) -> dict[str, tuple[str, str]]:
    """Assign two distinct primary annotators to every sentence.

    The pool must keep at least one annotator free per sentence to act
    as adjudicator, so it needs three members or more. Assignment is
    greedy least-loaded, which keeps per-annotator load within +/-1.
    """
    if sentence_ids and len(set(annotator_pool)) < 3:
        raise PoolTooSmall(
            f"need >= 3 annotators (two primaries + adjudicator reserve), "
            f"got {len(set(annotator_pool))}"
        )
    pool = list(dict.fromkeys(annotator_pool))  # dedupe, keep order
    load = {a: 0 for a in pool}
    assignment: dict[str, tuple[str, str]] = {}
    for sid in sentence_ids:
        first, second = sorted(pool, key=lambda a: (load[a], pool.index(a)))[:2]
        load[first] += 1
        load[second] += 1
        assignment[sid] = (first, second)
    return assignment


@dataclass(frozen=True)
class AdjudicationRequired:
    """Signal that two primaries disagreed and a third label is needed."""

    sentence_id: str
    labels: tuple  # (Label, Label) in annotator order
    annotators: tuple[str, str]


def resolve(sentence_id: str, annotations: list[Annotation]):
    """Combine the two primary annotations for one sentence.

    Returns a LabeledExample on agreement, an AdjudicationRequired
    signal on disagreement.
    """
    relevant = [a for a in annotations if a.sentence_id == sentence_id]
    if len(relevant) != 2:
        raise MissingAnnotations(
            f"sentence {sentence_id!r} needs exactly two primary annotations, "
            f"got {len(relevant)}"
        )
    a, b = relevant
    if a.annotator_id == b.annotator_id:
        raise MissingAnnotations(
            f"sentence {sentence_id!r} has two annotations from the same annotator"
        )
    if a.label == b.label:
        return LabeledExample(
            sentence_id=sentence_id,
            label=a.label,
            provenance=Provenance.HUMAN_AGREED,
        )
    return AdjudicationRequired(
        sentence_id=sentence_id,
        labels=(a.label, b.label),
        annotators=(a.annotator_id, b.annotator_id),
    )


class AdjudicationQueue:
    """Open disagreements awaiting a third label.

    Mutations are linearizable: on a race, a single adjudication wins.
    """

    def __init__(self):
        self._pending: dict[str, AdjudicationRequired] = {}
        self._lock = threading.Lock()

    def add(self, request: AdjudicationRequired):
        with self._lock:
            self._pending[request.sentence_id] = request

    def pending(self) -> list[AdjudicationRequired]:
        return list(self._pending.values())

    def __len__(self) -> int:
        return len(self._pending)

    def adjudicate(
        self,
        sentence_id: str,
        adjudicator_id: str,
        final,
        timestamp: str = "",
    ) -> tuple[LabeledExample, AdjudicationRecord]:
        """Close an open disagreement with the adjudicator's final label."""
        with self._lock:
            request = self._pending.get(sentence_id)
            if request is None:
                raise NotPending(f"sentence {sentence_id!r} has no open adjudication")
            if adjudicator_id in request.annotators:
                raise SelfAdjudication(
                    f"adjudicator {adjudicator_id!r} was a primary annotator "
                    f"for sentence {sentence_id!r}"
                )
            del self._pending[sentence_id]
        record = AdjudicationRecord(
            sentence_id=sentence_id,
            first_two_labels=request.labels,
            adjudicator_id=adjudicator_id,
            final_label=final,
            timestamp=timestamp,
        )
        example = LabeledExample(
            sentence_id=sentence_id,
            label=final,
            provenance=Provenance.ADJUDICATED,
        )
        return example, record


def export_annotations_csv(annotations: list[Annotation], path: str | Path):
    with Path(path).open("w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["sentence_id", "annotator_id", "label", "timestamp"])
        for a in annotations:
            writer.writerow([a.sentence_id, a.annotator_id, a.label.value, a.timestamp])


def export_adjudications_csv(records: list[AdjudicationRecord], path: str | Path):
    with Path(path).open("w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(
            ["sentence_id", "first_label", "second_label", "adjudicator_id",
             "final_label", "timestamp"]
        )
        for r in records:
            writer.writerow(
                [r.sentence_id, r.first_two_labels[0].value, r.first_two_labels[1].value,
                 r.adjudicator_id, r.final_label.value, r.timestamp]
            )
