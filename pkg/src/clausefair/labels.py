"""The three-class fairness label space shared by every module."""

from __future__ import annotations

import enum


class Label(enum.Enum):
    """Fairness class of a contractual sentence, ordered by severity."""

    FAIR = "fair"
    POTENTIALLY_UNFAIR = "potentially_unfair"
    CLEARLY_UNFAIR = "clearly_unfair"

    @property
    def severity(self) -> int:
        return _SEVERITY[self]

    @property
    def display(self) -> str:
        return _DISPLAY[self]

    @classmethod
    def from_string(cls, value: str) -> "Label":
        """Accept enum values, display names, or common light variants."""
        key = value.strip().lower().replace("-", " ").replace("_", " ")
        for label in cls:
            if key in (label.value.replace("_", " "), label.display.lower()):
                return label
        raise ValueError(f"unknown label: {value!r}")


_SEVERITY = {
    Label.FAIR: 0,
    Label.POTENTIALLY_UNFAIR: 1,
    Label.CLEARLY_UNFAIR: 2,
}

_DISPLAY = {
    Label.FAIR: "Fair",
    Label.POTENTIALLY_UNFAIR: "Potentially Unfair",
    Label.CLEARLY_UNFAIR: "Clearly Unfair",
}

#: Labels in canonical index order (also the class-vector order everywhere).
LABELS: tuple[Label, Label, Label] = (
    Label.FAIR,
    Label.POTENTIALLY_UNFAIR,
    Label.CLEARLY_UNFAIR,
)

LABEL_INDEX = {label: i for i, label in enumerate(LABELS)}
