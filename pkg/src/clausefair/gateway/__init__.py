from clausefair.gateway.augment import (
    AugmentationBatch,
    Candidate,
    batch_to_examples,
    generate_candidates,
    review_candidate,
)
from clausefair.gateway.classify import classify_prompted
from clausefair.gateway.client import (
    API_KEY_ENV,
    HttpLlmClient,
    LlmClient,
    LlmSettings,
    MockLlmClient,
    with_retries,
)
from clausefair.gateway.parsing import parse_label, parse_sentence_list
from clausefair.gateway.prompts import (
    PROMPTS_DIR,
    SCENARIOS,
    PromptKind,
    PromptTemplate,
    builtin_template,
    load_builtin_templates,
    load_template,
    render,
)

__all__ = [
    "API_KEY_ENV",
    "AugmentationBatch",
    "Candidate",
    "HttpLlmClient",
    "LlmClient",
    "LlmSettings",
    "MockLlmClient",
    "PROMPTS_DIR",
    "PromptKind",
    "PromptTemplate",
    "SCENARIOS",
    "batch_to_examples",
    "builtin_template",
    "classify_prompted",
    "generate_candidates",
    "load_builtin_templates",
    "load_template",
    "parse_label",
    "parse_sentence_list",
    "render",
    "review_candidate",
    "with_retries",
]
