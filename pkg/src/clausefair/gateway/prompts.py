"""Prompt templates: structured sections rendered byte-exactly.

Templates ship as plain-text assets with a small front-matter header
(template_id, kind, scenario) followed by the labeled sections. Render
order is fixed: System Behavior, Context, Examples, Task, then either
the Output Format line (augmentation) or the Input Sentence line
(classification).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from pathlib import Path

from clausefair.errors import DataError, MissingInput

PROMPTS_DIR = Path(__file__).parent / "prompts"

#: The clear-unfairness scenarios that have a generation template each.
SCENARIOS = (
    "jurisdiction",
    "choice_of_law",
    "unilateral_change",
    "unilateral_termination",
    "indemnity",
    "arbitration",
)

OUTPUT_FORMAT_MARKER = "Output Format should be as follows:"
INPUT_MARKER = "Input Sentence:"


class PromptKind(enum.Enum):
    AUGMENT = "augment"
    DIRECT = "direct"
    COT = "cot"


@dataclass(frozen=True)
class PromptTemplate:
    template_id: str
    kind: PromptKind
    system_behavior: str
    context: str
    examples: tuple[tuple[str, str], ...] = ()
    task: str = ""
    output_format: str | None = None
    scenario: str = ""

    def __post_init__(self):
        if self.kind is PromptKind.AUGMENT:
            if not self.output_format:
                raise DataError(
                    f"augment template {self.template_id!r} needs an output format"
                )
            if self.scenario and self.scenario not in SCENARIOS:
                raise DataError(
                    f"unknown augmentation scenario {self.scenario!r}; "
                    f"known: {list(SCENARIOS)}"
                )
        elif self.output_format:
            raise DataError(
                f"classification template {self.template_id!r} must not carry "
                "an output format section"
            )


def render(template: PromptTemplate, input: str | None = None) -> str:
    """Assemble the prompt text. Pure: same inputs, identical bytes."""
    if template.kind in (PromptKind.DIRECT, PromptKind.COT):
        if input is None:
            raise MissingInput(
                f"template {template.template_id!r} needs an input sentence"
            )
    elif input is not None:
        raise DataError(
            f"augment template {template.template_id!r} takes no input sentence"
        )

    parts = [
        f"System Behavior: {template.system_behavior}",
        f"Context: {template.context}",
    ]
    for i, (text, answer) in enumerate(template.examples, start=1):
        block = f"Example {i}: {text}"
        if answer:
            block += f"\nAnswer: {answer}"
        parts.append(block)
    parts.append(f"Task: {template.task}")
    if template.kind is PromptKind.AUGMENT:
        parts.append(f"{OUTPUT_FORMAT_MARKER} {template.output_format}")
    else:
        parts.append(f"{INPUT_MARKER} {input}")
    return "\n\n".join(parts) + "\n"


# -- asset files -------------------------------------------------------

_SECTION_MARKERS = (
    "System Behavior:",
    "Context:",
    "Task:",
    OUTPUT_FORMAT_MARKER,
    INPUT_MARKER,
    "Answer:",
)


def _is_marker_line(line: str) -> str | None:
    for marker in _SECTION_MARKERS:
        if line.startswith(marker):
            return marker
    if line.startswith("Example ") and ":" in line:
        head = line.split(":", 1)[0]
        if head.removeprefix("Example ").strip().isdigit():
            return head + ":"
    return None


def parse_template_text(raw: str) -> PromptTemplate:
    """Parse one asset file (front-matter + labeled sections)."""
    lines = raw.splitlines()
    if not lines or lines[0].strip() != "---":
        raise DataError("template asset must start with a '---' front-matter block")
    try:
        end = lines.index("---", 1)
    except ValueError:
        raise DataError("unterminated front-matter block") from None
    meta: dict[str, str] = {}
    for line in lines[1:end]:
        if not line.strip():
            continue
        if ":" not in line:
            raise DataError(f"bad front-matter line: {line!r}")
        key, value = line.split(":", 1)
        meta[key.strip()] = value.strip()
    for required in ("template_id", "kind"):
        if required not in meta:
            raise DataError(f"front-matter missing {required!r}")

    sections: dict[str, str] = {}
    examples: list[list[str]] = []  # [text, answer]
    current_marker: str | None = None
    buffer: list[str] = []

    def flush():
        nonlocal buffer, current_marker
        if current_marker is None:
            buffer = []
            return
        content = "\n".join(buffer).strip()
        if current_marker.startswith("Example "):
            examples.append([content, ""])
        elif current_marker == "Answer:":
            if not examples:
                raise DataError("'Answer:' before any 'Example N:' section")
            examples[-1][1] = content
        else:
            sections[current_marker] = content
        buffer = []

    for line in lines[end + 1 :]:
        marker = _is_marker_line(line)
        if marker is not None:
            flush()
            current_marker = marker
            buffer = [line[len(marker) :].lstrip()]
        elif current_marker is not None:
            buffer.append(line)
    flush()

    kind = PromptKind(meta["kind"])
    return PromptTemplate(
        template_id=meta["template_id"],
        kind=kind,
        system_behavior=sections.get("System Behavior:", ""),
        context=sections.get("Context:", ""),
        examples=tuple((t, a) for t, a in examples),
        task=sections.get("Task:", ""),
        output_format=sections.get(OUTPUT_FORMAT_MARKER) or None,
        scenario=meta.get("scenario", ""),
    )


def load_template(path: str | Path) -> PromptTemplate:
    return parse_template_text(Path(path).read_text(encoding="utf-8"))


def load_builtin_templates(
    directory: str | Path = PROMPTS_DIR,
) -> dict[str, PromptTemplate]:
    """All shipped templates, keyed by template_id."""
    templates: dict[str, PromptTemplate] = {}
    for path in sorted(Path(directory).glob("*.txt")):
        template = load_template(path)
        if template.template_id in templates:
            raise DataError(f"duplicate template_id {template.template_id!r}")
        templates[template.template_id] = template
    return templates


@dataclass
class _TemplateCache:
    loaded: dict[str, PromptTemplate] = field(default_factory=dict)


_cache = _TemplateCache()


def builtin_template(template_id: str) -> PromptTemplate:
    if not _cache.loaded:
        _cache.loaded = load_builtin_templates()
    if template_id not in _cache.loaded:
        raise DataError(
            f"unknown template {template_id!r}; shipped: {sorted(_cache.loaded)}"
        )
    return _cache.loaded[template_id]
