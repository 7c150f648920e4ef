"""Synthetic-sentence generation batches and their two-reviewer gate."""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Iterable

from clausefair.annotation.models import LabeledExample, Provenance
from clausefair.errors import DataError, DuplicateReview
from clausefair.gateway.client import LlmClient, LlmSettings, with_retries
from clausefair.gateway.parsing import parse_sentence_list
from clausefair.gateway.prompts import PromptKind, PromptTemplate, render
from clausefair.labels import Label


def _normalize(text: str) -> str:
    return " ".join(text.split()).casefold()


@dataclass
class Candidate:
    text: str
    verified: bool = False
    dropped: bool = False
    reviews: list[tuple[str, bool]] = field(default_factory=list)

    def reviewer_ids(self) -> set[str]:
        return {r for r, _ in self.reviews}

    def to_dict(self) -> dict:
        return {
            "text": self.text,
            "verified": self.verified,
            "dropped": self.dropped,
            "reviews": [list(r) for r in self.reviews],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Candidate":
        return cls(
            text=d["text"],
            verified=bool(d.get("verified", False)),
            dropped=bool(d.get("dropped", False)),
            reviews=[tuple(r) for r in d.get("reviews", [])],
        )


@dataclass
class AugmentationBatch:
    batch_id: str
    template_id: str
    scenario: str
    candidates: list[Candidate] = field(default_factory=list)
    requested: int = 0
    duplicates_dropped: int = 0
    _lock: threading.Lock = field(
        default_factory=threading.Lock, repr=False, compare=False
    )

    def pending(self) -> list[Candidate]:
        return [c for c in self.candidates if not c.verified and not c.dropped]

    def verified_candidates(self) -> list[Candidate]:
        return [c for c in self.candidates if c.verified and not c.dropped]

    def stats(self) -> dict:
        return {
            "batch_id": self.batch_id,
            "scenario": self.scenario,
            "requested": self.requested,
            "candidates": len(self.candidates),
            "duplicates_dropped": self.duplicates_dropped,
            "verified": len(self.verified_candidates()),
            "dropped": sum(1 for c in self.candidates if c.dropped),
            "pending": len(self.pending()),
        }

    def to_dict(self) -> dict:
        return {
            "batch_id": self.batch_id,
            "template_id": self.template_id,
            "scenario": self.scenario,
            "requested": self.requested,
            "duplicates_dropped": self.duplicates_dropped,
            "candidates": [c.to_dict() for c in self.candidates],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AugmentationBatch":
        return cls(
            batch_id=d["batch_id"],
            template_id=d["template_id"],
            scenario=d.get("scenario", ""),
            candidates=[Candidate.from_dict(c) for c in d.get("candidates", [])],
            requested=int(d.get("requested", 0)),
            duplicates_dropped=int(d.get("duplicates_dropped", 0)),
        )


def generate_candidates(
    client: LlmClient,
    template: PromptTemplate,
    n: int = 25,
    *,
    batch_id: str = "",
    existing_texts: Iterable[str] = (),
    settings: LlmSettings = LlmSettings(),
) -> AugmentationBatch:
    """Ask the service for synthetic sentences and open a review batch.

    Generated sentences are deduplicated (case- and whitespace-
    insensitively) against `existing_texts` and within the batch; every
    surviving candidate starts unverified.
    """
    if template.kind is not PromptKind.AUGMENT:
        raise DataError(
            f"template {template.template_id!r} is not an augmentation template"
        )
    prompt = render(template)
    response = with_retries(lambda: client.complete(prompt, settings))
    sentences = parse_sentence_list(response)

    seen = {_normalize(t) for t in existing_texts}
    batch = AugmentationBatch(
        batch_id=batch_id or f"batch-{template.template_id}",
        template_id=template.template_id,
        scenario=template.scenario,
        requested=n,
    )
    for sentence in sentences:
        key = _normalize(sentence)
        if key in seen:
            batch.duplicates_dropped += 1
            continue
        seen.add(key)
        batch.candidates.append(Candidate(text=sentence))
    return batch


def review_candidate(
    batch: AugmentationBatch,
    index: int,
    reviewer_id: str,
    accept: bool,
) -> AugmentationBatch:
    """Record one reviewer's verdict on a candidate.

    A candidate becomes verified after two distinct reviewers accept
    it; any single reject drops it outright.
    """
    if not 0 <= index < len(batch.candidates):
        raise DataError(
            f"candidate index {index} out of range for batch {batch.batch_id!r}"
        )
    with batch._lock:
        candidate = batch.candidates[index]
        if candidate.dropped:
            raise DataError(f"candidate {index} was already dropped")
        if reviewer_id in candidate.reviewer_ids():
            raise DuplicateReview(
                f"reviewer {reviewer_id!r} already reviewed candidate {index}"
            )
        candidate.reviews.append((reviewer_id, accept))
        if not accept:
            candidate.dropped = True
            candidate.verified = False
        elif sum(1 for _, ok in candidate.reviews if ok) >= 2:
            candidate.verified = True
    return batch


def batch_to_examples(
    batch: AugmentationBatch,
    label: Label = Label.CLEARLY_UNFAIR,
) -> list[tuple[str, str, LabeledExample]]:
    """Turn verified candidates into (sentence_id, text, example) triples.

    Only verified candidates convert; the synthetic ids embed the batch
    id so they cannot collide with corpus sentences.
    """
    out = []
    for i, candidate in enumerate(batch.candidates):
        if not candidate.verified or candidate.dropped:
            continue
        sid = f"synthetic/{batch.batch_id}/{i}"
        example = LabeledExample(
            sentence_id=sid,
            label=label,
            provenance=Provenance.SYNTHETIC,
            verified=True,
        )
        out.append((sid, candidate.text, example))
    return out
