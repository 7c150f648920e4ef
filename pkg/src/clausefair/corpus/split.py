"""Deterministic stratified train/validation/test splitting."""

from __future__ import annotations

import random
from dataclasses import dataclass

from clausefair.annotation.models import LabeledExample
from clausefair.errors import DataError, InsufficientClass
from clausefair.labels import Label

BUCKETS = ("train", "validation", "test")


@dataclass(frozen=True)
class SplitConfig:
    ratios: tuple[float, float, float] = (0.5, 0.2, 0.3)
    seed: int = 0

    def __post_init__(self):
        if len(self.ratios) != 3 or any(r < 0 for r in self.ratios):
            raise DataError(f"ratios must be three non-negative reals: {self.ratios}")
        if abs(sum(self.ratios) - 1.0) > 1e-9:
            raise DataError(f"ratios must sum to 1: {self.ratios}")

    def to_dict(self) -> dict:
        return {"ratios": list(self.ratios), "seed": self.seed}

    @classmethod
    def from_dict(cls, d: dict) -> "SplitConfig":
        return cls(ratios=tuple(d["ratios"]), seed=int(d["seed"]))


@dataclass(frozen=True)
class DatasetSplit:
    train: frozenset[str]
    validation: frozenset[str]
    test: frozenset[str]

    def bucket(self, name: str) -> frozenset[str]:
        if name not in BUCKETS:
            raise DataError(f"unknown split bucket {name!r}")
        return getattr(self, name)

    def to_dict(self) -> dict:
        return {b: sorted(self.bucket(b)) for b in BUCKETS}

    @classmethod
    def from_dict(cls, d: dict) -> "DatasetSplit":
        return cls(
            train=frozenset(d["train"]),
            validation=frozenset(d["validation"]),
            test=frozenset(d["test"]),
        )


def largest_remainder_counts(total: int, ratios: tuple[float, float, float]) -> list[int]:
    """Apportion `total` into three buckets by largest-remainder rounding.

    Ties in the fractional remainders go to the earlier bucket.
    """
    quotas = [total * r for r in ratios]
    counts = [int(q) for q in quotas]
    leftover = total - sum(counts)
    remainders = sorted(
        range(3), key=lambda b: (-(quotas[b] - counts[b]), b)
    )
    for b in remainders[:leftover]:
        counts[b] += 1
    return counts


def stratified_split(examples: list[LabeledExample], cfg: SplitConfig) -> DatasetSplit:
    """Split labeled examples into train/validation/test, stratified by class.

    Per-class bucket sizes come from largest-remainder rounding of
    ratio*count; assignment within a class is a seeded shuffle, so the
    result is deterministic given the input order and seed.
    """
    by_class: dict[Label, list[str]] = {}
    seen: set[str] = set()
    for ex in examples:
        if ex.sentence_id in seen:
            raise DataError(f"duplicate sentence_id in split input: {ex.sentence_id!r}")
        seen.add(ex.sentence_id)
        by_class.setdefault(ex.label, []).append(ex.sentence_id)

    nonzero_buckets = sum(1 for r in cfg.ratios if r > 0)
    for label, ids in by_class.items():
        if len(ids) < nonzero_buckets:
            raise InsufficientClass(
                f"class {label.value!r} has {len(ids)} examples, "
                f"fewer than the {nonzero_buckets} nonzero split buckets"
            )

    buckets: dict[str, set[str]] = {b: set() for b in BUCKETS}
    for label in sorted(by_class, key=lambda l: l.severity):
        ids = list(by_class[label])
        rng = random.Random(f"{cfg.seed}|{label.value}")
        rng.shuffle(ids)
        n_train, n_val, _ = largest_remainder_counts(len(ids), cfg.ratios)
        buckets["train"].update(ids[:n_train])
        buckets["validation"].update(ids[n_train : n_train + n_val])
        buckets["test"].update(ids[n_train + n_val :])

    return DatasetSplit(
        train=frozenset(buckets["train"]),
        validation=frozenset(buckets["validation"]),
        test=frozenset(buckets["test"]),
    )
