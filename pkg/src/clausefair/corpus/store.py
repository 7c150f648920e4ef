"""File-backed sentence/label store with JSONL and CSV dataset export.

Writes are serialized behind a single lock and land on disk before the
call returns; reads work off in-memory snapshots.
"""

from __future__ import annotations

import csv
import json
import threading
from pathlib import Path

from clausefair.annotation.models import LabeledExample
from clausefair.corpus.html_ingest import ContractDocument
from clausefair.corpus.sentences import Sentence
from clausefair.errors import ConflictError, DataError

SENTENCES_FILE = "sentences.jsonl"
LABELS_FILE = "labels.jsonl"
DOCUMENTS_FILE = "documents.jsonl"

CSV_COLUMNS = ["sentence_id", "doc_id", "section_path", "text", "label", "provenance"]


def _append_jsonl(path: Path, record: dict):
    with path.open("a", encoding="utf-8") as f:
        f.write(json.dumps(record, ensure_ascii=False) + "\n")


def _read_jsonl(path: Path) -> list[dict]:
    if not path.exists():
        return []
    records = []
    with path.open("r", encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if line:
                records.append(json.loads(line))
    return records


class DatasetStore:
    """Sentences, final labels, and ingested documents under one root."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._lock = threading.RLock()
        self._sentences: dict[str, Sentence] = {}
        self._labels: dict[str, LabeledExample] = {}
        self._documents: dict[str, ContractDocument] = {}
        self._load()

    def _load(self):
        for d in _read_jsonl(self.root / DOCUMENTS_FILE):
            doc = ContractDocument.from_dict(d)
            self._documents[doc.doc_id] = doc
        for d in _read_jsonl(self.root / SENTENCES_FILE):
            s = Sentence.from_dict(d)
            self._sentences[s.sentence_id] = s
        for d in _read_jsonl(self.root / LABELS_FILE):
            ex = LabeledExample.from_dict(d)
            self._labels[ex.sentence_id] = ex

    # -- documents ----------------------------------------------------

    def put_document(self, doc: ContractDocument):
        with self._lock:
            if doc.doc_id in self._documents:
                raise ConflictError(f"document {doc.doc_id!r} already ingested")
            self._documents[doc.doc_id] = doc
            _append_jsonl(self.root / DOCUMENTS_FILE, doc.to_dict())

    def get_document(self, doc_id: str) -> ContractDocument:
        doc = self._documents.get(doc_id)
        if doc is None:
            raise DataError(f"unknown document {doc_id!r}")
        return doc

    def documents(self) -> list[ContractDocument]:
        return list(self._documents.values())

    # -- sentences ----------------------------------------------------

    def put_sentence(self, sentence: Sentence):
        with self._lock:
            existing = self._sentences.get(sentence.sentence_id)
            if existing is not None:
                if existing.text != sentence.text:
                    raise ConflictError(
                        f"sentence {sentence.sentence_id!r} already stored with different text"
                    )
                return  # idempotent re-put
            self._sentences[sentence.sentence_id] = sentence
            _append_jsonl(self.root / SENTENCES_FILE, sentence.to_dict())

    def put_sentences(self, sentences: list[Sentence]) -> int:
        for s in sentences:
            self.put_sentence(s)
        return len(sentences)

    def get_sentence(self, sentence_id: str) -> Sentence:
        s = self._sentences.get(sentence_id)
        if s is None:
            raise DataError(f"unknown sentence {sentence_id!r}")
        return s

    def has_sentence(self, sentence_id: str) -> bool:
        return sentence_id in self._sentences

    def sentences(self, *, include_redacted: bool = True) -> list[Sentence]:
        out = list(self._sentences.values())
        if not include_redacted:
            out = [s for s in out if not s.redacted]
        return out

    def texts(self) -> dict[str, str]:
        return {sid: s.text for sid, s in self._sentences.items()}

    # -- labels -------------------------------------------------------

    def put_label(self, example: LabeledExample):
        with self._lock:
            if example.sentence_id not in self._sentences:
                raise DataError(
                    f"label refers to unknown sentence {example.sentence_id!r}"
                )
            self._labels[example.sentence_id] = example
            _append_jsonl(self.root / LABELS_FILE, example.to_dict())

    def get_label(self, sentence_id: str) -> LabeledExample | None:
        return self._labels.get(sentence_id)

    def labels(self) -> list[LabeledExample]:
        return list(self._labels.values())

    def labeled_examples(self) -> list[LabeledExample]:
        """Final labels for non-redacted sentences, in insertion order."""
        return [
            ex
            for sid, ex in self._labels.items()
            if not self._sentences[sid].redacted
        ]

    # -- dataset export / import --------------------------------------

    def export(self, path: str | Path, format: str = "jsonl") -> int:
        """Write the dataset (never any redacted sentence) to `path`.

        Returns the number of records written.
        """
        path = Path(path)
        rows = []
        for sid in self._sentences:
            s = self._sentences[sid]
            if s.redacted:
                continue
            record = s.to_dict()
            label = self._labels.get(sid)
            if label is not None:
                record.update(label.to_dict())
            rows.append(record)
        if format == "jsonl":
            with path.open("w", encoding="utf-8") as f:
                for record in rows:
                    f.write(json.dumps(record, ensure_ascii=False) + "\n")
        elif format == "csv":
            with path.open("w", encoding="utf-8", newline="") as f:
                writer = csv.DictWriter(f, fieldnames=CSV_COLUMNS, extrasaction="ignore")
                writer.writeheader()
                for record in rows:
                    writer.writerow({c: record.get(c, "") for c in CSV_COLUMNS})
        else:
            raise DataError(f"unknown export format {format!r}")
        return len(rows)

    def import_jsonl(self, path: str | Path) -> int:
        """Load an exported JSONL dataset back into this store."""
        count = 0
        for record in _read_jsonl(Path(path)):
            self.put_sentence(Sentence.from_dict(record))
            if "label" in record:
                self.put_label(LabeledExample.from_dict(record))
            count += 1
        return count
