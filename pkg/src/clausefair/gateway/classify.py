"""Prompting-based classification through an LLM client."""

from __future__ import annotations

from clausefair.errors import DataError
from clausefair.gateway.client import LlmClient, LlmSettings, with_retries
from clausefair.gateway.parsing import parse_label
from clausefair.gateway.prompts import PromptKind, PromptTemplate, render
from clausefair.labels import Label


def classify_prompted(
    client: LlmClient,
    template: PromptTemplate,
    sentence: str,
    *,
    settings: LlmSettings = LlmSettings(),
) -> tuple[Label, str]:
    """Classify one sentence via direct or reasoned prompting.

    Returns the parsed label and the rationale (the raw response; a
    direct prompt may answer with nothing but the label). Transport
    failures are retried with backoff; unparseable responses are not.
    """
    if template.kind not in (PromptKind.DIRECT, PromptKind.COT):
        raise DataError(
            f"template {template.template_id!r} is not a classification template"
        )
    prompt = render(template, input=sentence)
    response = with_retries(lambda: client.complete(prompt, settings))
    label = parse_label(response)
    return label, response
