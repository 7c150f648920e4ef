"""Decision-tree checklist that turns guideline answers into a label.

The rules are evaluated in their documented order, first "yes" wins;
all-"no" answers fall through to FAIR (a one-sided right/obligation
with no ambiguity and no imbalance).
"""

from __future__ import annotations

from dataclasses import dataclass

from clausefair.errors import IncompleteAnswers
from clausefair.labels import Label


@dataclass(frozen=True)
class ChecklistRule:
    rule_id: str
    question: str
    outcome: Label


CHECKLIST_RULES: tuple[ChecklistRule, ...] = (
    ChecklistRule(
        "neither_right_nor_obligation",
        "Does the sentence neither constitute a right nor an obligation?",
        Label.FAIR,
    ),
    ChecklistRule(
        "applies_equally_to_both_parties",
        "Does the sentence apply equally to both parties?",
        Label.FAIR,
    ),
    ChecklistRule(
        "details_decided_later_by_consultation",
        "Are the obligation's details to be decided later, after consultation "
        "with the other party?",
        Label.FAIR,
    ),
    ChecklistRule(
        "right_with_ambiguous_condition",
        "Is it a right subject to an ambiguous condition?",
        Label.POTENTIALLY_UNFAIR,
    ),
    ChecklistRule(
        "right_without_boundaries",
        "Is it a right stated without any boundaries or conditions?",
        Label.POTENTIALLY_UNFAIR,
    ),
    ChecklistRule(
        "ambiguous_material_obligation",
        "Is it a material obligation containing ambiguous language?",
        Label.POTENTIALLY_UNFAIR,
    ),
    ChecklistRule(
        "clear_imbalance_between_parties",
        "Does the right or obligation cause a clear imbalance between the "
        "two parties?",
        Label.CLEARLY_UNFAIR,
    ),
    ChecklistRule(
        "ambiguity_without_material_impact",
        "Is any ambiguous language present without affecting a material "
        "right or obligation?",
        Label.FAIR,
    ),
)

RULE_IDS = tuple(rule.rule_id for rule in CHECKLIST_RULES)


def guideline_checklist(sentence_text: str, answers: dict[str, bool]) -> Label:
    """Suggest a label from yes/no answers to the checklist rules.

    `answers` must cover every rule id; evaluation is first-match-wins
    in rule order.
    """
    missing = [rid for rid in RULE_IDS if rid not in answers]
    if missing:
        raise IncompleteAnswers(f"missing answers for rules: {missing}")
    unknown = [rid for rid in answers if rid not in RULE_IDS]
    if unknown:
        raise IncompleteAnswers(f"unknown rule ids: {unknown}")
    for rule in CHECKLIST_RULES:
        if answers[rule.rule_id]:
            return rule.outcome
    return Label.FAIR


def fired_rules(answers: dict[str, bool]) -> list[str]:
    """Rule ids answered yes, in checklist order (for guideline_trace)."""
    return [rule.rule_id for rule in CHECKLIST_RULES if answers.get(rule.rule_id)]
