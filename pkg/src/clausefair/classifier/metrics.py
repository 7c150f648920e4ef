"""Per-class precision/recall/F1, macro aggregates, and result tables."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from clausefair.classifier.types import Prediction
from clausefair.errors import EmptyInput, LengthMismatch
from clausefair.labels import LABELS, Label


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    support: int

    def to_dict(self) -> dict:
        return {
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "support": self.support,
        }


@dataclass(frozen=True)
class MetricsReport:
    per_class: dict[Label, ClassMetrics]
    macro_precision: float
    macro_recall: float
    macro_f1: float
    accuracy: float
    total: int
    zero_division: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "per_class": {l.value: m.to_dict() for l, m in self.per_class.items()},
            "macro_precision": self.macro_precision,
            "macro_recall": self.macro_recall,
            "macro_f1": self.macro_f1,
            "accuracy": self.accuracy,
            "total": self.total,
            "zero_division": list(self.zero_division),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "MetricsReport":
        return cls(
            per_class={
                Label(k): ClassMetrics(**v) for k, v in d["per_class"].items()
            },
            macro_precision=d["macro_precision"],
            macro_recall=d["macro_recall"],
            macro_f1=d["macro_f1"],
            accuracy=d["accuracy"],
            total=d["total"],
            zero_division=tuple(d.get("zero_division", ())),
        )


def _as_labels(predictions: Sequence) -> list[Label]:
    out = []
    for p in predictions:
        out.append(p.predicted if isinstance(p, Prediction) else p)
    return out


def evaluate(predictions: Sequence, gold: Sequence[Label]) -> MetricsReport:
    """Score predictions against gold labels.

    One-vs-rest precision/recall/F1 per class; macro values are the
    unweighted means; any 0/0 is defined as 0 and the affected class is
    listed in `zero_division`.
    """
    pred_labels = _as_labels(predictions)
    if len(pred_labels) != len(gold):
        raise LengthMismatch(
            f"{len(pred_labels)} predictions vs {len(gold)} gold labels"
        )
    if not gold:
        raise EmptyInput("evaluate needs at least one example")

    per_class: dict[Label, ClassMetrics] = {}
    zero_division: list[str] = []
    correct = sum(1 for p, g in zip(pred_labels, gold) if p == g)
    for label in LABELS:
        tp = sum(1 for p, g in zip(pred_labels, gold) if p == label and g == label)
        fp = sum(1 for p, g in zip(pred_labels, gold) if p == label and g != label)
        fn = sum(1 for p, g in zip(pred_labels, gold) if p != label and g == label)
        degenerate = False
        if tp + fp == 0:
            precision, degenerate = 0.0, True
        else:
            precision = tp / (tp + fp)
        if tp + fn == 0:
            recall, degenerate = 0.0, True
        else:
            recall = tp / (tp + fn)
        if precision + recall == 0:
            f1, degenerate = 0.0, True
        else:
            f1 = 2 * precision * recall / (precision + recall)
        if degenerate:
            zero_division.append(label.value)
        per_class[label] = ClassMetrics(
            precision=precision, recall=recall, f1=f1, support=tp + fn
        )

    n_classes = len(LABELS)
    return MetricsReport(
        per_class=per_class,
        macro_precision=sum(m.precision for m in per_class.values()) / n_classes,
        macro_recall=sum(m.recall for m in per_class.values()) / n_classes,
        macro_f1=sum(m.f1 for m in per_class.values()) / n_classes,
        accuracy=correct / len(gold),
        total=len(gold),
        zero_division=tuple(zero_division),
    )


RESULT_COLUMNS = [
    "Model", "Technique", "Fair F1", "Potentially Unfair F1",
    "Clearly Unfair F1", "Macro F1", "Accuracy",
]

EXTENDED_GROUPS = ["Fair", "Potentially Unfair", "Clearly Unfair", "Macro"]


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _fmt_pct(x: float) -> str:
    return f"{x * 100:.1f}%"


def results_rows(
    entries: Sequence[tuple[str, str, MetricsReport]], extended: bool = False
) -> list[list[str]]:
    rows = []
    for model, technique, report in entries:
        if extended:
            row = [model, technique]
            for label in LABELS:
                m = report.per_class[label]
                row += [_fmt(m.precision), _fmt(m.recall), _fmt(m.f1)]
            row += [
                _fmt(report.macro_precision),
                _fmt(report.macro_recall),
                _fmt(report.macro_f1),
            ]
        else:
            row = [
                model,
                technique,
                _fmt(report.per_class[Label.FAIR].f1),
                _fmt(report.per_class[Label.POTENTIALLY_UNFAIR].f1),
                _fmt(report.per_class[Label.CLEARLY_UNFAIR].f1),
                _fmt(report.macro_f1),
                _fmt_pct(report.accuracy),
            ]
        rows.append(row)
    return rows


def render_results_table(
    entries: Sequence[tuple[str, str, MetricsReport]], extended: bool = False
) -> str:
    """Plain-text results table (classwise F1 + macro F1 + accuracy columns;
    extended mode adds per-class and macro precision/recall)."""
    if extended:
        header = ["Model", "Technique"]
        for group in EXTENDED_GROUPS:
            header += [f"{group} P", f"{group} R", f"{group} F1"]
    else:
        header = list(RESULT_COLUMNS)
    rows = [header] + results_rows(entries, extended=extended)
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    lines = []
    for ri, row in enumerate(rows):
        lines.append(" | ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)))
        if ri == 0:
            lines.append("-+-".join("-" * w for w in widths))
    return "\n".join(lines)
