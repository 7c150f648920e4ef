"""Parsers that map raw LLM responses onto labels and sentence lists."""

from __future__ import annotations

import json
import re

from clausefair.errors import ParseError
from clausefair.labels import Label

# Longer phrases first; a bare "fair" match must not sit inside
# "unfair" (the lookbehind blocks any preceding letter).
_LABEL_PATTERNS = (
    (re.compile(r"(?<![a-z])potentially\s+unfair(?![a-z])"), Label.POTENTIALLY_UNFAIR),
    (re.compile(r"(?<![a-z])clearly\s+unfair(?![a-z])"), Label.CLEARLY_UNFAIR),
    (re.compile(r"(?<![a-z])fair(?![a-z])"), Label.FAIR),
)

_LIST_MARKER = re.compile(r"<\s*list of sentences\s*>\s*:?", re.IGNORECASE)
_ITEM_PREFIX = re.compile(r"^\s*(?:\d+[.)]\s*|[-*]\s+)")


def parse_label(response: str) -> Label:
    """Map a response onto a label: last class phrase mentioned wins.

    Reasoned responses restate the candidate classes before concluding,
    so the final occurrence carries the verdict. Raises ParseError when
    no class phrase occurs at all.
    """
    text = response.lower()
    best_pos = -1
    best_label: Label | None = None
    for pattern, label in _LABEL_PATTERNS:
        for match in pattern.finditer(text):
            if match.start() > best_pos:
                best_pos = match.start()
                best_label = label
    if best_label is None:
        raise ParseError(f"no class phrase found in response: {response[:120]!r}")
    return best_label


def _split_items(block: str) -> list[str]:
    if "\n" in block.strip():
        raw_items = block.splitlines()
    else:
        # Single-line list: sentences end with terminal punctuation, so
        # split on the commas that follow it.
        raw_items = re.split(r"(?<=[.!?])\s*,\s*", block)
    items = []
    for raw in raw_items:
        item = _ITEM_PREFIX.sub("", raw).strip().strip(",").strip()
        item = item.strip('"').strip()
        if item:
            items.append(item)
    return items


def parse_sentence_list(response: str) -> list[str]:
    """Extract the generated sentences from a declared-list response.

    Accepts a JSON array, or a bracketed block (optionally introduced
    by the '<List of Sentences>:' marker) holding newline- or
    comma-separated sentences. Plain prose raises ParseError.
    """
    text = _LIST_MARKER.sub("", response, count=1).strip()
    start = text.find("[")
    end = text.rfind("]")
    if start == -1 or end == -1 or end <= start:
        raise ParseError(
            f"response does not contain a sentence list: {response[:120]!r}"
        )
    bracketed = text[start : end + 1]
    try:
        data = json.loads(bracketed)
    except ValueError:
        data = None
    if isinstance(data, list) and all(isinstance(x, str) for x in data):
        items = [x.strip() for x in data if x.strip()]
    else:
        items = _split_items(bracketed[1:-1])
    if not items:
        raise ParseError(f"sentence list is empty: {response[:120]!r}")
    return items
