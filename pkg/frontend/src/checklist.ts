/**
 * Guideline checklist shown in the annotate view.
 *
 * The suggestion is advisory only: the label actually submitted is
 * whatever the annotator explicitly selects.
 */

import type { Label } from "./labels.js";

export interface ChecklistRule {
  ruleId: string;
  question: string;
  outcome: Label;
}

export const CHECKLIST_RULES: ChecklistRule[] = [
  {
    ruleId: "neither_right_nor_obligation",
    question: "Does the sentence neither constitute a right nor an obligation?",
    outcome: "fair",
  },
  {
    ruleId: "applies_equally_to_both_parties",
    question: "Does the sentence apply equally to both parties?",
    outcome: "fair",
  },
  {
    ruleId: "details_decided_later_by_consultation",
    question:
      "Are the obligation's details to be decided later, after consultation with the other party?",
    outcome: "fair",
  },
  {
    ruleId: "right_with_ambiguous_condition",
    question: "Is it a right subject to an ambiguous condition?",
    outcome: "potentially_unfair",
  },
  {
    ruleId: "right_without_boundaries",
    question: "Is it a right stated without any boundaries or conditions?",
    outcome: "potentially_unfair",
  },
  {
    ruleId: "ambiguous_material_obligation",
    question: "Is it a material obligation containing ambiguous language?",
    outcome: "potentially_unfair",
  },
  {
    ruleId: "clear_imbalance_between_parties",
    question:
      "Does the right or obligation cause a clear imbalance between the two parties?",
    outcome: "clearly_unfair",
  },
  {
    ruleId: "ambiguity_without_material_impact",
    question:
      "Is any ambiguous language present without affecting a material right or obligation?",
    outcome: "fair",
  },
];

export type ChecklistAnswers = Record<string, boolean>;

export function emptyAnswers(): ChecklistAnswers {
  const answers: ChecklistAnswers = {};
  for (const rule of CHECKLIST_RULES) answers[rule.ruleId] = false;
  return answers;
}

/** First rule answered "yes" wins, in listed order; all-no suggests fair. */
export function suggestLabel(answers: ChecklistAnswers): Label {
  for (const rule of CHECKLIST_RULES) {
    if (answers[rule.ruleId]) return rule.outcome;
  }
  return "fair";
}

/** Rule ids answered yes, in checklist order (sent as guideline_trace). */
export function firedRules(answers: ChecklistAnswers): string[] {
  return CHECKLIST_RULES.filter((rule) => answers[rule.ruleId]).map(
    (rule) => rule.ruleId,
  );
}
