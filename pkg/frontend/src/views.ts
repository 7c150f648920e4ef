/**
 * Pure HTML renderers for the three views. They return markup strings;
 * app.ts injects them and wires events. Labels pass through
 * labelDisplay, so nothing outside the three-class space can render.
 */

import { CHECKLIST_RULES, type ChecklistAnswers } from "./checklist.js";
import { LABELS, labelDisplay, type Label } from "./labels.js";
import type { PendingAdjudication } from "./api.js";
import type { TriageItem, WorkQueueItem } from "./queue.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

export function labelBadge(label: unknown): string {
  const display = labelDisplay(label);
  return `<span class="badge badge-${escapeHtml(String(label))}">${escapeHtml(display)}</span>`;
}

function labelOptions(selected: Label | null): string {
  return LABELS.map(
    (label) =>
      `<option value="${label}"${label === selected ? " selected" : ""}>` +
      `${escapeHtml(labelDisplay(label))}</option>`,
  ).join("");
}

function contextBlock(item: WorkQueueItem): string {
  const parts: string[] = [];
  if (item.contextBefore) {
    parts.push(`<p class="context before">${escapeHtml(item.contextBefore)}</p>`);
  }
  parts.push(`<p class="sentence">${escapeHtml(item.text)}</p>`);
  if (item.contextAfter) {
    parts.push(`<p class="context after">${escapeHtml(item.contextAfter)}</p>`);
  }
  return parts.join("\n");
}

export function renderAnnotateView(
  item: WorkQueueItem | null,
  answers: ChecklistAnswers,
  suggested: Label,
  selected: Label | null,
  remaining: number,
): string {
  if (!item) {
    return `<div class="empty-state">No sentences waiting for annotation.</div>`;
  }
  const checklist = CHECKLIST_RULES.map(
    (rule) => `
    <li>
      <label>
        <input type="checkbox" data-rule="${rule.ruleId}"${answers[rule.ruleId] ? " checked" : ""}>
        ${escapeHtml(rule.question)}
      </label>
    </li>`,
  ).join("");
  return `
  <section class="annotate" data-sentence-id="${escapeHtml(item.sentenceId)}">
    <header>Annotate <small>(${remaining} in queue)</small></header>
    ${contextBlock(item)}
    <ol class="checklist">${checklist}</ol>
    <p class="suggestion">Checklist suggestion: ${labelBadge(suggested)} (advisory; your selection below is what gets submitted)</p>
    <label>Your label:
      <select id="annotate-label">
        <option value=""${selected === null ? " selected" : ""}>choose…</option>
        ${labelOptions(selected)}
      </select>
    </label>
    <button id="annotate-submit">Submit</button>
    <div id="annotate-error" class="error" role="alert"></div>
  </section>`;
}

export function renderAdjudicateView(items: PendingAdjudication[]): string {
  if (items.length === 0) {
    return `<div class="empty-state">No disagreements waiting for adjudication.</div>`;
  }
  const [first, ...rest] = items;
  const [labelA, labelB] = first.labels;
  return `
  <section class="adjudicate" data-sentence-id="${escapeHtml(first.sentence_id)}">
    <header>Adjudicate <small>(${items.length} pending)</small></header>
    <p class="sentence">${escapeHtml(first.text ?? first.sentence_id)}</p>
    <table class="primaries">
      <tr><th>${escapeHtml(first.annotators[0])}</th><th>${escapeHtml(first.annotators[1])}</th></tr>
      <tr><td>${labelBadge(labelA)}</td><td>${labelBadge(labelB)}</td></tr>
    </table>
    <label>Final label:
      <select id="adjudicate-label">${labelOptions(null)}</select>
    </label>
    <button id="adjudicate-submit">Resolve</button>
    <div id="adjudicate-error" class="error" role="alert"></div>
    ${rest.length ? `<p class="note">${rest.length} more after this one.</p>` : ""}
  </section>`;
}

export function renderTriageView(
  items: TriageItem[],
  filter: Label | "all",
): string {
  const options = ["all", ...LABELS]
    .map(
      (value) =>
        `<option value="${value}"${value === filter ? " selected" : ""}>` +
        `${value === "all" ? "All classes" : escapeHtml(labelDisplay(value))}</option>`,
    )
    .join("");
  const rows = items
    .map(
      (item, index) => `
    <tr data-sentence-id="${escapeHtml(item.sentenceId)}">
      <td>${index + 1}</td>
      <td>${escapeHtml(item.text)}</td>
      <td>${labelBadge(item.predicted)}</td>
      <td>${item.confidence === null ? "–" : item.confidence.toFixed(3)}</td>
      <td>${item.rationale ? `<details><summary>rationale</summary>${escapeHtml(item.rationale)}</details>` : ""}</td>
      <td><button class="send-to-annotation" data-sentence-id="${escapeHtml(item.sentenceId)}">send to annotation</button></td>
    </tr>`,
    )
    .join("");
  const body = items.length
    ? `<table class="triage-list">
        <tr><th>#</th><th>Sentence</th><th>Flag</th><th>Confidence</th><th></th><th></th></tr>
        ${rows}
      </table>`
    : `<div class="empty-state">No classifier flags for this filter.</div>`;
  return `
  <section class="triage">
    <header>Triage</header>
    <label>Filter: <select id="triage-filter">${options}</select></label>
    ${body}
  </section>`;
}
