"""Clients for external text-generation services.

Every outbound request defaults to temperature 0 and a 1024-token
context so repeated calls are deterministic.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Protocol, runtime_checkable

import requests

from clausefair.errors import TransportError

API_KEY_ENV = "CLAUSEFAIR_LLM_API_KEY"

#: Retries after the first attempt, with exponential backoff.
MAX_RETRIES = 2
BACKOFF_BASE_SECONDS = 0.5


@dataclass(frozen=True)
class LlmSettings:
    temperature: float = 0.0
    max_tokens: int = 1024

    def to_dict(self) -> dict:
        return {"temperature": self.temperature, "max_tokens": self.max_tokens}


@runtime_checkable
class LlmClient(Protocol):
    def complete(self, prompt: str, settings: LlmSettings = LlmSettings()) -> str: ...


def with_retries(
    call: Callable[[], str],
    *,
    retries: int = MAX_RETRIES,
    sleep: Callable[[float], None] = time.sleep,
) -> str:
    """Run `call`, retrying TransportError with exponential backoff.

    ParseError is deliberately not retried anywhere: with deterministic
    settings the service would return the same unparseable text again.
    """
    attempt = 0
    while True:
        try:
            return call()
        except TransportError:
            if attempt >= retries:
                raise
            sleep(BACKOFF_BASE_SECONDS * (2**attempt))
            attempt += 1


class HttpLlmClient:
    """JSON-over-HTTP adapter: POST {prompt, temperature, max_tokens}.

    Credentials come from the CLAUSEFAIR_LLM_API_KEY environment
    variable and are sent as a bearer token when present.
    """

    def __init__(self, base_url: str, timeout: float = 60.0, session=None):
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout
        self._session = session or requests.Session()

    def complete(self, prompt: str, settings: LlmSettings = LlmSettings()) -> str:
        headers = {"Content-Type": "application/json"}
        api_key = os.environ.get(API_KEY_ENV)
        if api_key:
            headers["Authorization"] = f"Bearer {api_key}"
        body = {"prompt": prompt, **settings.to_dict()}
        try:
            response = self._session.post(
                self.base_url, json=body, headers=headers, timeout=self.timeout
            )
        except requests.RequestException as exc:
            raise TransportError(f"LLM request failed: {exc}") from exc
        if response.status_code != 200:
            raise TransportError(
                f"LLM service returned HTTP {response.status_code}: {response.text[:200]}"
            )
        try:
            payload = response.json()
        except ValueError as exc:
            raise TransportError(f"LLM service returned non-JSON body: {exc}") from exc
        if "text" not in payload:
            raise TransportError("LLM response payload has no 'text' field")
        return payload["text"]


class MockLlmClient:
    """Scripted client for tests and offline experiments.

    Responses are consumed in order; every request (prompt + settings)
    is recorded for assertions. A script file is a JSON document with a
    top-level "responses" array.
    """

    def __init__(self, responses: list[str]):
        self._responses = list(responses)
        self._cursor = 0
        self.requests: list[dict] = []

    @classmethod
    def from_script(cls, path: str | Path) -> "MockLlmClient":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        if not isinstance(data, dict) or "responses" not in data:
            raise TransportError(f"mock script {path} has no 'responses' array")
        return cls(data["responses"])

    @property
    def remaining(self) -> int:
        return len(self._responses) - self._cursor

    def complete(self, prompt: str, settings: LlmSettings = LlmSettings()) -> str:
        self.requests.append({"prompt": prompt, **settings.to_dict()})
        if self._cursor >= len(self._responses):
            raise TransportError(
                f"mock script exhausted after {len(self._responses)} responses"
            )
        response = self._responses[self._cursor]
        self._cursor += 1
        return response
