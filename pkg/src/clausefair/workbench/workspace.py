"""File-backed workspace tying the corpus store to the labeling workflow.

Everything lives under one root directory; every mutation is appended
to its JSONL log (or rewritten for batch/run documents) before the
call returns, so a restart reconstructs the exact same state.
"""

from __future__ import annotations

import json
import threading
from pathlib import Path

from clausefair.annotation.models import (
    AdjudicationRecord,
    Annotation,
    LabeledExample,
)
from clausefair.annotation.workflow import (
    AdjudicationQueue,
    AdjudicationRequired,
    resolve,
)
from clausefair.annotation.agreement import cohen_kappa
from clausefair.corpus.split import DatasetSplit, SplitConfig
from clausefair.corpus.store import DatasetStore, _append_jsonl, _read_jsonl
from clausefair.errors import ConflictError, DataError, EmptyInput
from clausefair.gateway.augment import AugmentationBatch

ANNOTATIONS_FILE = "annotations.jsonl"
ADJUDICATIONS_FILE = "adjudications.jsonl"
BATCHES_DIR = "batches"
SPLITS_DIR = "splits"
RUNS_DIR = "runs"
MODELS_DIR = "models"
HISTORY_DIR = "history"
PREDICTIONS_DIR = "predictions"


class Workspace:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.store = DatasetStore(self.root)
        self._lock = threading.RLock()
        self.annotations: dict[tuple[str, str], Annotation] = {}
        self.adjudications: list[AdjudicationRecord] = []
        self.queue = AdjudicationQueue()
        self._load()

    def _load(self):
        for d in _read_jsonl(self.root / ANNOTATIONS_FILE):
            a = Annotation.from_dict(d)
            self.annotations[(a.sentence_id, a.annotator_id)] = a
        for d in _read_jsonl(self.root / ADJUDICATIONS_FILE):
            self.adjudications.append(AdjudicationRecord.from_dict(d))
        adjudicated = {r.sentence_id for r in self.adjudications}
        for sid, pair in self._primary_pairs().items():
            if sid in adjudicated:
                continue
            outcome = resolve(sid, pair)
            if isinstance(outcome, AdjudicationRequired):
                self.queue.add(outcome)

    def _primary_pairs(self) -> dict[str, list[Annotation]]:
        by_sentence: dict[str, list[Annotation]] = {}
        for ann in self.annotations.values():
            by_sentence.setdefault(ann.sentence_id, []).append(ann)
        return {sid: anns[:2] for sid, anns in by_sentence.items() if len(anns) >= 2}

    # -- annotations ----------------------------------------------------

    def add_annotation(self, annotation: Annotation) -> dict:
        """Record one annotation; resolve the sentence once two exist."""
        with self._lock:
            if not self.store.has_sentence(annotation.sentence_id):
                raise DataError(f"unknown sentence {annotation.sentence_id!r}")
            key = (annotation.sentence_id, annotation.annotator_id)
            if key in self.annotations:
                raise ConflictError(
                    f"annotator {annotation.annotator_id!r} already labeled "
                    f"sentence {annotation.sentence_id!r}"
                )
            existing = [
                a for a in self.annotations.values()
                if a.sentence_id == annotation.sentence_id
            ]
            if len(existing) >= 2:
                raise ConflictError(
                    f"sentence {annotation.sentence_id!r} already has two "
                    "primary annotations"
                )
            self.annotations[key] = annotation
            _append_jsonl(self.root / ANNOTATIONS_FILE, annotation.to_dict())

            if len(existing) + 1 < 2:
                return {"status": "recorded"}
            outcome = resolve(annotation.sentence_id, existing + [annotation])
            if isinstance(outcome, AdjudicationRequired):
                self.queue.add(outcome)
                return {"status": "adjudication_required"}
            self.store.put_label(outcome)
            return {"status": "agreed", "label": outcome.label.value}

    def adjudicate(
        self, sentence_id: str, adjudicator_id: str, final, timestamp: str = ""
    ) -> LabeledExample:
        with self._lock:
            example, record = self.queue.adjudicate(
                sentence_id, adjudicator_id, final, timestamp
            )
            self.adjudications.append(record)
            _append_jsonl(self.root / ADJUDICATIONS_FILE, record.to_dict())
            self.store.put_label(example)
            return example

    def kappa(self) -> tuple[float, int]:
        """Cohen's kappa over the (first, second) primary annotation pairs."""
        pairs = [
            (anns[0].label, anns[1].label)
            for anns in self._primary_pairs().values()
        ]
        if not pairs:
            raise EmptyInput("no doubly-annotated sentences yet")
        return cohen_kappa(pairs), len(pairs)

    # -- augmentation batches --------------------------------------------

    def _batch_path(self, batch_id: str) -> Path:
        safe = batch_id.replace("/", "_")
        return self.root / BATCHES_DIR / f"{safe}.json"

    def save_batch(self, batch: AugmentationBatch):
        path = self._batch_path(batch.batch_id)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(
            json.dumps(batch.to_dict(), ensure_ascii=False, indent=2),
            encoding="utf-8",
        )

    def load_batch(self, batch_id: str) -> AugmentationBatch:
        path = self._batch_path(batch_id)
        if not path.exists():
            raise DataError(f"unknown augmentation batch {batch_id!r}")
        return AugmentationBatch.from_dict(
            json.loads(path.read_text(encoding="utf-8"))
        )

    def list_batches(self) -> list[str]:
        directory = self.root / BATCHES_DIR
        if not directory.exists():
            return []
        return sorted(
            json.loads(p.read_text(encoding="utf-8"))["batch_id"]
            for p in directory.glob("*.json")
        )

    # -- splits -----------------------------------------------------------

    def save_split(self, name: str, cfg: SplitConfig, split: DatasetSplit):
        path = self.root / SPLITS_DIR / f"{name}.json"
        path.parent.mkdir(parents=True, exist_ok=True)
        payload = {"config": cfg.to_dict(), **split.to_dict()}
        path.write_text(json.dumps(payload, indent=2), encoding="utf-8")

    def load_split(self, name: str) -> DatasetSplit:
        path = self.root / SPLITS_DIR / f"{name}.json"
        if not path.exists():
            raise DataError(f"no split named {name!r}; run the split command first")
        return DatasetSplit.from_dict(json.loads(path.read_text(encoding="utf-8")))

    # -- run records --------------------------------------------------------

    def run_path(self, name: str) -> Path:
        return self.root / RUNS_DIR / f"{name}.json"

    def save_run(self, name: str, record: dict):
        path = self.run_path(name)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(record, indent=2, sort_keys=True), encoding="utf-8")

    def load_run(self, name: str) -> dict:
        path = self.run_path(name)
        if not path.exists():
            raise DataError(f"no experiment run named {name!r}")
        return json.loads(path.read_text(encoding="utf-8"))

    def list_runs(self) -> list[str]:
        directory = self.root / RUNS_DIR
        if not directory.exists():
            return []
        return sorted(p.stem for p in directory.glob("*.json"))
