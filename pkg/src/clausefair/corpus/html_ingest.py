"""Lenient HTML ingestion of digitized contracts.

Heading tags (h1..h6) open a new section; block-level tags delimit the
raw text clauses inside it. Anything that appears before the first
heading lands in a synthetic "(untitled)" section.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from html.parser import HTMLParser

from clausefair.errors import EmptyDocument

UNTITLED = "(untitled)"

_HEADING_TAGS = {"h1", "h2", "h3", "h4", "h5", "h6"}
# Tags whose open or close ends the current raw text block.
_BLOCK_TAGS = {
    "p", "div", "li", "tr", "td", "th", "table", "ul", "ol", "dl", "dd", "dt",
    "section", "article", "blockquote", "pre", "br", "hr", "header", "footer",
    "main", "aside", "figure", "figcaption", "address",
}
_SKIP_TAGS = {"script", "style", "head", "title", "noscript"}

_WS = re.compile(r"\s+")


def normalize_whitespace(text: str) -> str:
    return _WS.sub(" ", text).strip()


@dataclass
class Section:
    heading: str
    clauses: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"heading": self.heading, "clauses": list(self.clauses)}

    @classmethod
    def from_dict(cls, d: dict) -> "Section":
        return cls(heading=d["heading"], clauses=list(d["clauses"]))


@dataclass
class ContractDocument:
    doc_id: str
    domain_tag: str = ""
    source_uri: str = ""
    sections: list[Section] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "doc_id": self.doc_id,
            "domain_tag": self.domain_tag,
            "source_uri": self.source_uri,
            "sections": [s.to_dict() for s in self.sections],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ContractDocument":
        return cls(
            doc_id=d["doc_id"],
            domain_tag=d.get("domain_tag", ""),
            source_uri=d.get("source_uri", ""),
            sections=[Section.from_dict(s) for s in d["sections"]],
        )


class _ContractHTMLParser(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.sections: list[Section] = []
        self._clause_buf: list[str] = []
        self._heading_buf: list[str] | None = None
        self._skip_depth = 0

    def _current_section(self) -> Section:
        if not self.sections:
            self.sections.append(Section(heading=UNTITLED))
        return self.sections[-1]

    def _flush_clause(self):
        text = normalize_whitespace("".join(self._clause_buf))
        self._clause_buf = []
        if text:
            self._current_section().clauses.append(text)

    def _close_open_heading(self):
        # Tag soup: a block tag opening inside an unclosed heading ends it.
        if self._heading_buf is not None:
            heading = normalize_whitespace("".join(self._heading_buf)) or UNTITLED
            self._heading_buf = None
            self.sections.append(Section(heading=heading))

    def handle_starttag(self, tag, attrs):
        tag = tag.lower()
        if tag in _SKIP_TAGS:
            self._skip_depth += 1
            return
        if tag in _HEADING_TAGS:
            self._flush_clause()
            self._close_open_heading()
            self._heading_buf = []
        elif tag in _BLOCK_TAGS:
            self._close_open_heading()
            self._flush_clause()

    def handle_endtag(self, tag):
        tag = tag.lower()
        if tag in _SKIP_TAGS:
            self._skip_depth = max(0, self._skip_depth - 1)
            return
        if tag in _HEADING_TAGS and self._heading_buf is not None:
            heading = normalize_whitespace("".join(self._heading_buf)) or UNTITLED
            self._heading_buf = None
            self.sections.append(Section(heading=heading))
        elif tag in _BLOCK_TAGS:
            self._flush_clause()

    def handle_data(self, data):
        if self._skip_depth:
            return
        if self._heading_buf is not None:
            self._heading_buf.append(data)
        else:
            self._clause_buf.append(data)

    def finish(self) -> list[Section]:
        self._close_open_heading()
        self._flush_clause()
        return self.sections


def ingest_html(
    raw_html: str,
    doc_id: str,
    *,
    domain_tag: str = "",
    source_uri: str = "",
) -> ContractDocument:
    """Parse one HTML contract into its section/clause structure.

    Raises EmptyDocument when nothing textual could be extracted.
    """
    parser = _ContractHTMLParser()
    parser.feed(raw_html or "")
    parser.close()
    sections = parser.finish()
    # Drop heading-only artifacts that carry no text at all.
    sections = [s for s in sections if s.heading != UNTITLED or s.clauses]
    if not any(s.clauses or s.heading != UNTITLED for s in sections):
        raise EmptyDocument(f"no extractable text in document {doc_id!r}")
    return ContractDocument(
        doc_id=doc_id,
        domain_tag=domain_tag,
        source_uri=source_uri,
        sections=sections,
    )
