"""Sentence records and the rule-based splitter used on clause text."""

from __future__ import annotations

import re
from dataclasses import dataclass

from clausefair.corpus.html_ingest import ContractDocument, normalize_whitespace
from clausefair.errors import DataError

# Tokens that end with a period without ending a sentence. Matched
# case-insensitively against the whitespace-delimited token that the
# candidate period closes.
DEFAULT_ABBREVIATIONS = frozenset(
    {
        "e.g.", "i.e.", "etc.", "cf.", "vs.", "v.",
        "no.", "nos.", "sec.", "art.", "para.", "cl.",
        "mr.", "mrs.", "ms.", "dr.", "st.",
        "inc.", "ltd.", "llc.", "corp.", "co.",
    }
)

# Masked/redacted content markers; a sentence matching any of these is
# flagged and kept out of every exported dataset.
DEFAULT_REDACTION_PATTERNS: tuple[re.Pattern, ...] = (
    re.compile(r"\[\s*\*+\s*\]"),
    re.compile(r"\[\s*redact(?:ed|ion)?\s*\]", re.IGNORECASE),
    re.compile(r"\bX{4,}\b"),
)

_OPENERS = "([{"
_CLOSERS = ")]}"


@dataclass(frozen=True)
class Sentence:
    """One contractual sentence with its document provenance."""

    sentence_id: str
    doc_id: str
    section_path: str
    position: int
    text: str
    redacted: bool = False

    def __post_init__(self):
        if not self.text.strip():
            raise DataError(f"sentence {self.sentence_id!r} has empty text")

    def to_dict(self) -> dict:
        return {
            "sentence_id": self.sentence_id,
            "doc_id": self.doc_id,
            "section_path": self.section_path,
            "position": self.position,
            "text": self.text,
            "redacted": self.redacted,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Sentence":
        return cls(
            sentence_id=d["sentence_id"],
            doc_id=d["doc_id"],
            section_path=d["section_path"],
            position=int(d["position"]),
            text=d["text"],
            redacted=bool(d.get("redacted", False)),
        )


def _token_before(text: str, end: int) -> str:
    """Whitespace-delimited token ending at index `end` (inclusive)."""
    start = end
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    return text[start : end + 1].lstrip("([{\"'")


def split_sentences(
    text: str,
    abbreviations: frozenset[str] = DEFAULT_ABBREVIATIONS,
) -> list[str]:
    """Split one clause into sentences.

    A '.', '!' or '?' ends a sentence when it sits at parenthesis depth
    zero, is followed by whitespace (or the end of the clause), does not
    close a known abbreviation, and the next non-space character looks
    like a sentence opener (uppercase, digit, quote, or bracket).
    """
    text = normalize_whitespace(text)
    if not text:
        return []
    boundaries: list[int] = []
    depth = 0
    n = len(text)
    for i, ch in enumerate(text):
        if ch in _OPENERS:
            depth += 1
            continue
        if ch in _CLOSERS:
            depth = max(0, depth - 1)
            continue
        if ch not in ".!?":
            continue
        if depth > 0:
            continue
        if i + 1 < n and not text[i + 1].isspace():
            continue
        if ch == "." and _token_before(text, i).lower() in abbreviations:
            continue
        j = i + 1
        while j < n and text[j].isspace():
            j += 1
        if j < n and not (text[j].isupper() or text[j].isdigit() or text[j] in "\"'(["):
            continue
        boundaries.append(i + 1)
    pieces = []
    start = 0
    for b in boundaries:
        piece = text[start:b].strip()
        if piece:
            pieces.append(piece)
        start = b
    tail = text[start:].strip()
    if tail:
        pieces.append(tail)
    return pieces


def is_redacted(
    text: str,
    patterns: tuple[re.Pattern, ...] = DEFAULT_REDACTION_PATTERNS,
) -> bool:
    return any(p.search(text) for p in patterns)


def extract_sentences(
    doc: ContractDocument,
    *,
    abbreviations: frozenset[str] = DEFAULT_ABBREVIATIONS,
    redaction_patterns: tuple[re.Pattern, ...] = DEFAULT_REDACTION_PATTERNS,
) -> list[Sentence]:
    """Segment every clause of `doc` into Sentence records.

    Redacted sentences are returned with `redacted=True`; the dataset
    store refuses to export them.
    """
    out: list[Sentence] = []
    for si, section in enumerate(doc.sections):
        for ci, clause in enumerate(section.clauses):
            section_path = f"s{si}[{section.heading}]/c{ci}"
            for pos, piece in enumerate(split_sentences(clause, abbreviations)):
                out.append(
                    Sentence(
                        sentence_id=f"{doc.doc_id}/s{si}/c{ci}/p{pos}",
                        doc_id=doc.doc_id,
                        section_path=section_path,
                        position=pos,
                        text=piece,
                        redacted=is_redacted(piece, redaction_patterns),
                    )
                )
    return out
