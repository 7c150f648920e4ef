import csv

import pytest

from clausefair.annotation import LabeledExample, Provenance
from clausefair.corpus import DatasetStore, Sentence
from clausefair.errors import ConflictError, DataError
from clausefair.labels import Label


def sent(i, text="Some clause text.", redacted=False):
    return Sentence(
        sentence_id=f"d/s0/c0/p{i}", doc_id="d", section_path="s0[T]/c0",
        position=i, text=text, redacted=redacted,
    )


def test_roundtrip_export_import(tmp_path):
    store = DatasetStore(tmp_path / "a")
    sentences = [sent(0), sent(1, "Another clause."), sent(2, "Third clause.")]
    store.put_sentences(sentences)
    store.put_label(LabeledExample("d/s0/c0/p0", Label.FAIR, Provenance.HUMAN_AGREED))
    out = tmp_path / "export.jsonl"
    assert store.export(out) == 3

    other = DatasetStore(tmp_path / "b")
    assert other.import_jsonl(out) == 3
    assert sorted(s.sentence_id for s in other.sentences()) == sorted(
        s.sentence_id for s in store.sentences()
    )
    assert other.get_sentence("d/s0/c0/p1") == store.get_sentence("d/s0/c0/p1")
    roundtrip = other.get_label("d/s0/c0/p0")
    assert roundtrip == store.get_label("d/s0/c0/p0")


def test_duplicate_same_text_idempotent(tmp_path):
    store = DatasetStore(tmp_path)
    store.put_sentence(sent(0))
    store.put_sentence(sent(0))
    assert len(store.sentences()) == 1


def test_duplicate_different_text_conflicts(tmp_path):
    store = DatasetStore(tmp_path)
    store.put_sentence(sent(0))
    with pytest.raises(ConflictError):
        store.put_sentence(sent(0, text="Changed text."))


def test_redacted_never_exported(tmp_path):
    store = DatasetStore(tmp_path)
    store.put_sentence(sent(0))
    store.put_sentence(sent(1, "Exhibit [***] applies.", redacted=True))
    out = tmp_path / "data.jsonl"
    assert store.export(out) == 1
    assert "[***]" not in out.read_text(encoding="utf-8")

    csv_out = tmp_path / "data.csv"
    store.export(csv_out, format="csv")
    rows = list(csv.DictReader(csv_out.open()))
    assert len(rows) == 1
    assert rows[0]["sentence_id"] == "d/s0/c0/p0"


def test_csv_columns(tmp_path):
    store = DatasetStore(tmp_path)
    store.put_sentence(sent(0))
    store.put_label(LabeledExample("d/s0/c0/p0", Label.CLEARLY_UNFAIR, Provenance.ADJUDICATED))
    out = tmp_path / "data.csv"
    store.export(out, format="csv")
    rows = list(csv.DictReader(out.open()))
    assert list(rows[0].keys()) == [
        "sentence_id", "doc_id", "section_path", "text", "label", "provenance",
    ]
    assert rows[0]["label"] == "clearly_unfair"
    assert rows[0]["provenance"] == "adjudicated"


def test_durability_across_reopen(tmp_path):
    store = DatasetStore(tmp_path)
    store.put_sentence(sent(0))
    store.put_label(LabeledExample("d/s0/c0/p0", Label.FAIR, Provenance.HUMAN_AGREED))
    reopened = DatasetStore(tmp_path)
    assert reopened.get_sentence("d/s0/c0/p0").text == "Some clause text."
    assert reopened.get_label("d/s0/c0/p0").label is Label.FAIR


def test_label_requires_known_sentence(tmp_path):
    store = DatasetStore(tmp_path)
    with pytest.raises(DataError):
        store.put_label(LabeledExample("ghost", Label.FAIR, Provenance.HUMAN_AGREED))


def test_unknown_export_format(tmp_path):
    store = DatasetStore(tmp_path)
    store.put_sentence(sent(0))
    with pytest.raises(DataError):
        store.export(tmp_path / "x.bin", format="parquet")
