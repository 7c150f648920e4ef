"""Experiment configuration: a single validated JSON document."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from clausefair.classifier.types import TrainConfig
from clausefair.corpus.split import SplitConfig
from clausefair.errors import UsageError
from clausefair.selftrain.loop import StoppingPolicy, ThresholdConfig

TECHNIQUES = (
    "vanilla",
    "data_augmentation",
    "data_augmentation_self_train",
    "direct_prompt",
    "cot_prompt",
)

TECHNIQUE_DISPLAY = {
    "vanilla": "Vanilla",
    "data_augmentation": "Data Augmentation",
    "data_augmentation_self_train": "Data Augmentation + Self-Training",
    "direct_prompt": "Direct Prompt",
    "cot_prompt": "CoT Prompt",
}

_TRAINING_TECHNIQUES = ("vanilla", "data_augmentation", "data_augmentation_self_train")
_PROMPT_TECHNIQUES = ("direct_prompt", "cot_prompt")


@dataclass(frozen=True)
class DataPaths:
    store: str
    synthetic_batches: tuple[str, ...] = ()
    mock_script: str | None = None
    llm_base_url: str | None = None
    model_name: str = ""

    def to_dict(self) -> dict:
        return {
            "store": self.store,
            "synthetic_batches": list(self.synthetic_batches),
            "mock_script": self.mock_script,
            "llm_base_url": self.llm_base_url,
            "model_name": self.model_name,
        }


@dataclass(frozen=True)
class ExperimentConfig:
    name: str
    technique: str
    backend: str
    data: DataPaths
    split: SplitConfig
    train: TrainConfig
    thresholds: ThresholdConfig = field(default_factory=ThresholdConfig)
    stopping: StoppingPolicy = field(default_factory=StoppingPolicy)
    prompt_template: str = ""
    seed: int = 0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "technique": self.technique,
            "backend": self.backend,
            "data": self.data.to_dict(),
            "split": self.split.to_dict(),
            "train": self.train.to_dict(),
            "thresholds": self.thresholds.to_dict(),
            "stopping": self.stopping.to_dict(),
            "prompt_template": self.prompt_template,
            "seed": self.seed,
        }

    @property
    def config_hash(self) -> str:
        canonical = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    @property
    def model_display(self) -> str:
        if self.data.model_name:
            return self.data.model_name
        if self.technique in _PROMPT_TECHNIQUES:
            return "mock-llm" if self.data.mock_script else "llm"
        return self.backend


def _expect(cond: bool, path: str, message: str):
    if not cond:
        raise UsageError(f"config.{path}: {message}")


def _get(d: dict, key: str, path: str, typ, default=None, required=False):
    if key not in d:
        _expect(not required, f"{path}{key}", "is required")
        return default
    value = d[key]
    if typ is float and isinstance(value, int) and not isinstance(value, bool):
        value = float(value)
    _expect(
        isinstance(value, typ) and not (typ is not bool and isinstance(value, bool)),
        f"{path}{key}",
        f"expected {typ.__name__}, got {type(value).__name__}",
    )
    return value


def parse_config(raw: dict, *, base_dir: str | Path = ".") -> ExperimentConfig:
    """Validate a raw config document; errors name the offending path."""
    _expect(isinstance(raw, dict), "", "expected a JSON object")
    name = _get(raw, "name", "", str, required=True)
    _expect(bool(name.strip()), "name", "must be non-empty")
    technique = _get(raw, "technique", "", str, required=True)
    _expect(
        technique in TECHNIQUES,
        "technique",
        f"must be one of {list(TECHNIQUES)}, got {technique!r}",
    )
    backend = _get(raw, "backend", "", str, default="hashed-logreg")
    seed = _get(raw, "seed", "", int, default=0)

    data_raw = _get(raw, "data", "", dict, required=True)
    base = Path(base_dir)

    def _resolve(p: str | None) -> str | None:
        if p is None:
            return None
        path = Path(p)
        return str(path if path.is_absolute() else base / path)

    store = _get(data_raw, "store", "data.", str, required=True)
    batches = _get(data_raw, "synthetic_batches", "data.", list, default=[])
    for i, b in enumerate(batches):
        _expect(isinstance(b, str), f"data.synthetic_batches[{i}]", "expected string")
    data = DataPaths(
        store=_resolve(store),
        synthetic_batches=tuple(_resolve(b) for b in batches),
        mock_script=_resolve(_get(data_raw, "mock_script", "data.", str, default=None)),
        llm_base_url=_get(data_raw, "llm_base_url", "data.", str, default=None),
        model_name=_get(data_raw, "model_name", "data.", str, default=""),
    )

    split_raw = _get(raw, "split", "", dict, default={})
    try:
        split = SplitConfig(
            ratios=tuple(split_raw.get("ratios", (0.5, 0.2, 0.3))),
            seed=int(split_raw.get("seed", seed)),
        )
    except Exception as exc:
        raise UsageError(f"config.split: {exc}") from exc

    train_raw = _get(raw, "train", "", dict, default=None)
    try:
        if train_raw is None:
            train = TrainConfig(seed=seed)
        else:
            train = TrainConfig(**{**train_raw, "seed": train_raw.get("seed", seed)})
    except UsageError:
        raise
    except Exception as exc:
        raise UsageError(f"config.train: {exc}") from exc

    try:
        thresholds_raw = _get(raw, "thresholds", "", dict, default=None)
        thresholds = (
            ThresholdConfig(tau=tuple(thresholds_raw["tau"]))
            if thresholds_raw
            else ThresholdConfig()
        )
    except UsageError:
        raise
    except Exception as exc:
        raise UsageError(f"config.thresholds: {exc}") from exc

    try:
        stopping_raw = _get(raw, "stopping", "", dict, default=None)
        stopping = StoppingPolicy(**stopping_raw) if stopping_raw else StoppingPolicy()
    except UsageError:
        raise
    except Exception as exc:
        raise UsageError(f"config.stopping: {exc}") from exc

    prompt_template = _get(raw, "prompt_template", "", str, default="")

    if technique == "data_augmentation_self_train":
        _expect(
            raw.get("thresholds") is not None,
            "thresholds",
            "required for self-training experiments",
        )
    if technique in _PROMPT_TECHNIQUES:
        _expect(
            data.mock_script is not None or data.llm_base_url is not None,
            "data",
            "prompting experiments need mock_script or llm_base_url",
        )
    if technique in ("data_augmentation", "data_augmentation_self_train"):
        _expect(
            len(data.synthetic_batches) > 0,
            "data.synthetic_batches",
            "required for augmentation experiments",
        )

    return ExperimentConfig(
        name=name,
        technique=technique,
        backend=backend,
        data=data,
        split=split,
        train=train,
        thresholds=thresholds,
        stopping=stopping,
        prompt_template=prompt_template,
        seed=seed,
    )


def load_config(path: str | Path) -> ExperimentConfig:
    path = Path(path)
    if not path.exists():
        raise UsageError(f"config file not found: {path}")
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except ValueError as exc:
        raise UsageError(f"config file is not valid JSON: {exc}") from exc
    return parse_config(raw, base_dir=path.parent)
