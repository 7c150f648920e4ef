"""Classifier-facing value types: distributions, predictions, train config."""

from __future__ import annotations

from dataclasses import dataclass

from clausefair.errors import DataError
from clausefair.labels import LABELS, Label


@dataclass(frozen=True)
class ClassDistribution:
    """Probability vector over the three classes, in severity order."""

    p: tuple[float, float, float]

    def __post_init__(self):
        if len(self.p) != 3:
            raise DataError(f"distribution needs 3 components, got {len(self.p)}")
        if any(x < -1e-9 or x > 1 + 1e-9 for x in self.p):
            raise DataError(f"distribution components outside [0,1]: {self.p}")
        if abs(sum(self.p) - 1.0) > 1e-6:
            raise DataError(f"distribution does not sum to 1: {self.p}")

    def __getitem__(self, label: Label) -> float:
        return self.p[label.severity]

    def to_list(self) -> list[float]:
        return list(self.p)


def decode(distribution: ClassDistribution) -> Label:
    """Argmax label; exact ties go to the more severe class."""
    best = LABELS[0]
    for label in LABELS:
        if distribution[label] >= distribution[best]:
            best = label
    return best


@dataclass(frozen=True)
class Prediction:
    sentence_id: str
    distribution: ClassDistribution
    predicted: Label
    confidence: float

    @classmethod
    def from_distribution(
        cls, sentence_id: str, distribution: ClassDistribution
    ) -> "Prediction":
        predicted = decode(distribution)
        return cls(
            sentence_id=sentence_id,
            distribution=distribution,
            predicted=predicted,
            confidence=distribution[predicted],
        )

    def to_dict(self) -> dict:
        return {
            "sentence_id": self.sentence_id,
            "distribution": self.distribution.to_list(),
            "predicted": self.predicted.value,
            "confidence": self.confidence,
        }


@dataclass(frozen=True)
class TrainConfig:
    """Training hyperparameters.

    Defaults mirror the documented transformer fine-tuning settings
    (batch 16, 12 epochs, 200 warmup steps, weight decay 0.08, max
    length 256, learning rate and dropout taken from the documented
    ranges [1e-6, 5e-6] and [0.2, 0.45]). The reference backend wants a
    far larger learning rate; see its `suggested_config`.
    """

    batch_size: int = 16
    learning_rate: float = 5e-6
    epochs: int = 12
    warmup_steps: int = 200
    weight_decay: float = 0.08
    dropout: float = 0.2
    max_sequence_length: int = 256
    seed: int = 0

    def __post_init__(self):
        if self.batch_size < 1:
            raise DataError("batch_size must be positive")
        if self.learning_rate <= 0:
            raise DataError("learning_rate must be positive")
        if self.epochs < 1:
            raise DataError("epochs must be positive")
        if self.warmup_steps < 0:
            raise DataError("warmup_steps must be non-negative")
        if self.weight_decay < 0:
            raise DataError("weight_decay must be non-negative")
        if not 0 <= self.dropout < 1:
            raise DataError("dropout must be in [0, 1)")
        if self.max_sequence_length < 1:
            raise DataError("max_sequence_length must be positive")

    def to_dict(self) -> dict:
        return {
            "batch_size": self.batch_size,
            "learning_rate": self.learning_rate,
            "epochs": self.epochs,
            "warmup_steps": self.warmup_steps,
            "weight_decay": self.weight_decay,
            "dropout": self.dropout,
            "max_sequence_length": self.max_sequence_length,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TrainConfig":
        return cls(**d)


@dataclass(frozen=True)
class TrainingExample:
    """What a backend actually trains on: resolved text plus label."""

    sentence_id: str
    text: str
    label: Label
