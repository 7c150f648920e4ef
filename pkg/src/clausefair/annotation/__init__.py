from clausefair.annotation.agreement import cohen_kappa
from clausefair.annotation.guidelines import (
    CHECKLIST_RULES,
    RULE_IDS,
    ChecklistRule,
    fired_rules,
    guideline_checklist,
)
from clausefair.annotation.models import (
    AdjudicationRecord,
    Annotation,
    LabeledExample,
    Provenance,
)
from clausefair.annotation.workflow import (
    AdjudicationQueue,
    AdjudicationRequired,
    assign_batch,
    export_adjudications_csv,
    export_annotations_csv,
    resolve,
)

__all__ = [
    "AdjudicationQueue",
    "AdjudicationRecord",
    "AdjudicationRequired",
    "Annotation",
    "CHECKLIST_RULES",
    "ChecklistRule",
    "LabeledExample",
    "Provenance",
    "RULE_IDS",
    "assign_batch",
    "cohen_kappa",
    "export_adjudications_csv",
    "export_annotations_csv",
    "fired_rules",
    "guideline_checklist",
    "resolve",
]
