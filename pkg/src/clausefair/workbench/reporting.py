"""Result tables across runs, with duplicate-name disambiguation."""

from __future__ import annotations

import json
from typing import Sequence

from clausefair.classifier.metrics import render_results_table, results_rows
from clausefair.workbench.experiments import RunRecord


def _disambiguate(records: Sequence[RunRecord]) -> list[tuple[str, RunRecord]]:
    seen: dict[str, int] = {}
    out = []
    for record in records:
        count = seen.get(record.name, 0) + 1
        seen[record.name] = count
        display = record.name if count == 1 else f"{record.name}-{count}"
        out.append((display, record))
    return out


def report_text(records: Sequence[RunRecord], extended: bool = False) -> str:
    entries = [
        (r.model, r.technique, r.metrics) for _, r in _disambiguate(records)
    ]
    return render_results_table(entries, extended=extended)


def report_json(records: Sequence[RunRecord], extended: bool = False) -> str:
    named = _disambiguate(records)
    entries = [(r.model, r.technique, r.metrics) for _, r in named]
    rows = results_rows(entries, extended=extended)
    payload = []
    for (display, record), row in zip(named, rows):
        payload.append(
            {
                "name": display,
                "model": record.model,
                "technique": record.technique,
                "row": row,
                "metrics": record.metrics.to_dict(),
                "config_hash": record.config_hash,
            }
        )
    return json.dumps(payload, indent=2, sort_keys=True)
