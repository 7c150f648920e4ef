/**
 * Work-queue construction: context snippets around each sentence, and
 * the triage ordering/filter rules.
 */

import { asLabel, severity, type Label } from "./labels.js";
import type { PredictionRecord, SentenceRecord } from "./api.js";

export type Mode = "annotate" | "adjudicate" | "triage";

export interface WorkQueueItem {
  sentenceId: string;
  text: string;
  /** Neighboring sentences from the same clause, when they exist. */
  contextBefore: string | null;
  contextAfter: string | null;
  mode: Mode;
  existingLabels: Label[];
  confidence: number | null;
}

function neighborText(
  all: SentenceRecord[],
  record: SentenceRecord,
  offset: number,
): string | null {
  const neighbor = all.find(
    (s) =>
      s.doc_id === record.doc_id &&
      s.section_path === record.section_path &&
      s.position === record.position + offset,
  );
  return neighbor ? neighbor.text : null;
}

/** Annotation queue: unlabeled sentences with their surrounding text. */
export function buildAnnotateQueue(all: SentenceRecord[]): WorkQueueItem[] {
  return all
    .filter((s) => !s.label)
    .map((s) => ({
      sentenceId: s.sentence_id,
      text: s.text,
      contextBefore: neighborText(all, s, -1),
      contextAfter: neighborText(all, s, +1),
      mode: "annotate" as const,
      existingLabels: [],
      confidence: null,
    }));
}

export interface TriageItem extends WorkQueueItem {
  predicted: Label;
  rationale: string | null;
}

/**
 * Triage list: flags sorted by severity of the predicted class
 * (severe first), then by descending confidence within equal severity.
 */
export function buildTriageQueue(
  predictions: PredictionRecord[],
  rationales: Record<string, string> = {},
): TriageItem[] {
  const items = predictions.map((p) => {
    const predicted = asLabel(p.predicted);
    return {
      sentenceId: p.sentence_id,
      text: p.text ?? "",
      contextBefore: null,
      contextAfter: null,
      mode: "triage" as const,
      existingLabels: [predicted],
      confidence: p.confidence ?? null,
      predicted,
      rationale: rationales[p.sentence_id] ?? null,
    };
  });
  return items.sort((a, b) => {
    const bySeverity = severity(b.predicted) - severity(a.predicted);
    if (bySeverity !== 0) return bySeverity;
    return (b.confidence ?? 0) - (a.confidence ?? 0);
  });
}

export function filterTriage(items: TriageItem[], label: Label | "all"): TriageItem[] {
  if (label === "all") return items;
  return items.filter((item) => item.predicted === asLabel(label));
}
