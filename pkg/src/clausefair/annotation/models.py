"""Record types produced by the labeling workflow."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from clausefair.errors import DataError
from clausefair.labels import Label


class Provenance(enum.Enum):
    HUMAN_AGREED = "human_agreed"
    ADJUDICATED = "adjudicated"
    PSEUDO = "pseudo"
    SYNTHETIC = "synthetic"


@dataclass(frozen=True)
class Annotation:
    """One annotator's label for one sentence."""

    sentence_id: str
    annotator_id: str
    label: Label
    timestamp: str = ""
    guideline_trace: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "sentence_id": self.sentence_id,
            "annotator_id": self.annotator_id,
            "label": self.label.value,
            "timestamp": self.timestamp,
            "guideline_trace": list(self.guideline_trace),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Annotation":
        return cls(
            sentence_id=d["sentence_id"],
            annotator_id=d["annotator_id"],
            label=Label(d["label"]),
            timestamp=d.get("timestamp", ""),
            guideline_trace=tuple(d.get("guideline_trace", ())),
        )


@dataclass(frozen=True)
class AdjudicationRecord:
    """Third-annotator resolution of a primary disagreement."""

    sentence_id: str
    first_two_labels: tuple[Label, Label]
    adjudicator_id: str
    final_label: Label
    timestamp: str = ""

    def __post_init__(self):
        a, b = self.first_two_labels
        if a == b:
            raise DataError(
                f"adjudication record for {self.sentence_id!r} requires disagreeing primaries"
            )

    def to_dict(self) -> dict:
        return {
            "sentence_id": self.sentence_id,
            "first_two_labels": [l.value for l in self.first_two_labels],
            "adjudicator_id": self.adjudicator_id,
            "final_label": self.final_label.value,
            "timestamp": self.timestamp,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AdjudicationRecord":
        a, b = d["first_two_labels"]
        return cls(
            sentence_id=d["sentence_id"],
            first_two_labels=(Label(a), Label(b)),
            adjudicator_id=d["adjudicator_id"],
            final_label=Label(d["final_label"]),
            timestamp=d.get("timestamp", ""),
        )


@dataclass(frozen=True)
class LabeledExample:
    """Final (sentence, label) pair with its origin.

    `confidence` is set only for PSEUDO examples (the model confidence at
    acceptance time); `verified` only for SYNTHETIC ones (two-reviewer
    sign-off from the augmentation review).
    """

    sentence_id: str
    label: Label
    provenance: Provenance
    confidence: float | None = None
    verified: bool = field(default=False, compare=False)

    def to_dict(self) -> dict:
        d = {
            "sentence_id": self.sentence_id,
            "label": self.label.value,
            "provenance": self.provenance.value,
        }
        if self.confidence is not None:
            d["confidence"] = self.confidence
        if self.provenance is Provenance.SYNTHETIC:
            d["verified"] = self.verified
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "LabeledExample":
        return cls(
            sentence_id=d["sentence_id"],
            label=Label(d["label"]),
            provenance=Provenance(d["provenance"]),
            confidence=d.get("confidence"),
            verified=bool(d.get("verified", False)),
        )
