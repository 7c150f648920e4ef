"""End-to-end experiment execution and run records."""

from __future__ import annotations

import datetime as _dt
import json
from dataclasses import dataclass, field
from pathlib import Path

from clausefair.annotation.models import LabeledExample
from clausefair.classifier.backend import (
    HashedNgramLogisticBackend,
    make_backend,
    predict,
    save_checkpoint,
)
from clausefair.classifier.metrics import MetricsReport, evaluate
from clausefair.classifier.types import Prediction, TrainingExample
from clausefair.errors import DataError, UsageError
from clausefair.gateway.augment import AugmentationBatch, batch_to_examples
from clausefair.gateway.classify import classify_prompted
from clausefair.gateway.client import HttpLlmClient, MockLlmClient
from clausefair.gateway.prompts import builtin_template
from clausefair.corpus.split import stratified_split
from clausefair.selftrain.loop import (
    export_history,
    inject_synthetic,
    new_state,
    self_train,
)
from clausefair.workbench.config import (
    TECHNIQUE_DISPLAY,
    ExperimentConfig,
)
from clausefair.workbench.workspace import (
    HISTORY_DIR,
    MODELS_DIR,
    PREDICTIONS_DIR,
    Workspace,
)


@dataclass
class RunRecord:
    name: str
    technique: str
    model: str
    config_hash: str
    started: str
    finished: str
    metrics: MetricsReport
    artifacts: dict[str, str] = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "technique": self.technique,
            "model": self.model,
            "config_hash": self.config_hash,
            "started": self.started,
            "finished": self.finished,
            "metrics": self.metrics.to_dict(),
            "artifacts": dict(self.artifacts),
            "details": dict(self.details),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RunRecord":
        return cls(
            name=d["name"],
            technique=d["technique"],
            model=d["model"],
            config_hash=d["config_hash"],
            started=d["started"],
            finished=d["finished"],
            metrics=MetricsReport.from_dict(d["metrics"]),
            artifacts=dict(d.get("artifacts", {})),
            details=dict(d.get("details", {})),
        )


def _now() -> str:
    return _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")


def _load_synthetic(cfg: ExperimentConfig) -> list[tuple[str, str, LabeledExample]]:
    triples = []
    for path in cfg.data.synthetic_batches:
        p = Path(path)
        if not p.exists():
            raise UsageError(f"synthetic batch file not found: {p}")
        batch = AugmentationBatch.from_dict(json.loads(p.read_text(encoding="utf-8")))
        triples.extend(batch_to_examples(batch))
    return triples


def _make_client(cfg: ExperimentConfig):
    if cfg.data.mock_script:
        return MockLlmClient.from_script(cfg.data.mock_script)
    if cfg.data.llm_base_url:
        return HttpLlmClient(cfg.data.llm_base_url)
    raise UsageError("prompting experiments need data.mock_script or data.llm_base_url")


def _bucket_examples(
    examples: list[LabeledExample], ids: frozenset[str]
) -> list[LabeledExample]:
    return [ex for ex in examples if ex.sentence_id in ids]


def run_experiment(cfg: ExperimentConfig) -> RunRecord:
    """Execute one technique end to end and persist the run record."""
    started = _now()
    workspace = Workspace(cfg.data.store)
    store = workspace.store
    labeled = store.labeled_examples()
    if not labeled:
        raise DataError(f"store at {cfg.data.store} holds no labeled sentences")
    split = stratified_split(labeled, cfg.split)
    train_examples = _bucket_examples(labeled, split.train)
    validation_examples = _bucket_examples(labeled, split.validation)
    test_examples = _bucket_examples(labeled, split.test)
    texts = store.texts()

    gold = [ex.label for ex in test_examples]
    test_sentences = [store.get_sentence(ex.sentence_id) for ex in test_examples]

    artifacts: dict[str, str] = {}
    details: dict = {"split_sizes": {
        "train": len(train_examples),
        "validation": len(validation_examples),
        "test": len(test_examples),
    }}

    if cfg.technique in ("vanilla", "data_augmentation", "data_augmentation_self_train"):
        backend = make_backend(cfg.backend)
        if cfg.technique == "vanilla":
            pool = list(train_examples)
            backend.fit(_training_view(pool, texts), cfg.train)
        else:
            synthetic = _load_synthetic(cfg)
            for sid, text, _ in synthetic:
                texts[sid] = text
            unlabeled_ids = (
                _unlabeled_ids(store, split)
                if cfg.technique == "data_augmentation_self_train"
                else []
            )
            state = new_state(train_examples, unlabeled_ids)
            inject_synthetic(state, [ex for _, _, ex in synthetic])
            details["injected_synthetic"] = sum(1 for _ in synthetic)
            if cfg.technique == "data_augmentation":
                backend.fit(_training_view(state.labeled_pool, texts), cfg.train)
            else:
                monitor = (
                    validation_examples
                    if cfg.stopping.monitor_split == "validation"
                    else test_examples
                )
                backend, state = self_train(
                    backend,
                    None,
                    None,
                    texts,
                    cfg.thresholds,
                    cfg.stopping,
                    cfg.train,
                    monitor,
                    state=state,
                )
                history_path = _artifact_path(workspace, HISTORY_DIR, cfg.name, ".jsonl")
                export_history(state, history_path)
                artifacts["history"] = str(history_path)
                details["iterations"] = state.iteration
                details["best_iteration"] = state.best_iteration
                details["monitored_accuracy"] = state.best_accuracy
        predictions = predict(backend, test_sentences)
        if isinstance(backend, HashedNgramLogisticBackend):
            model_path = _artifact_path(workspace, MODELS_DIR, cfg.name, ".npz")
            save_checkpoint(backend, model_path)
            artifacts["model"] = str(model_path)
    elif cfg.technique in ("direct_prompt", "cot_prompt"):
        client = _make_client(cfg)
        template_id = cfg.prompt_template or (
            "classify-direct" if cfg.technique == "direct_prompt" else "classify-cot"
        )
        template = builtin_template(template_id)
        predictions = []
        rationales = {}
        for sentence in test_sentences:
            label, rationale = classify_prompted(client, template, sentence.text)
            predictions.append(label)
            rationales[sentence.sentence_id] = rationale
        details["template_id"] = template_id
        rationale_path = _artifact_path(
            workspace, PREDICTIONS_DIR, cfg.name + "-rationales", ".json"
        )
        rationale_path.write_text(
            json.dumps(rationales, ensure_ascii=False, indent=2, sort_keys=True),
            encoding="utf-8",
        )
        artifacts["rationales"] = str(rationale_path)
    else:  # pragma: no cover - parse_config already rejects this
        raise UsageError(f"unknown technique {cfg.technique!r}")

    report = evaluate(predictions, gold)
    predictions_path = _artifact_path(workspace, PREDICTIONS_DIR, cfg.name, ".jsonl")
    _write_predictions(predictions_path, test_sentences, predictions, gold)
    artifacts["predictions"] = str(predictions_path)

    record = RunRecord(
        name=cfg.name,
        technique=TECHNIQUE_DISPLAY[cfg.technique],
        model=cfg.model_display,
        config_hash=cfg.config_hash,
        started=started,
        finished=_now(),
        metrics=report,
        artifacts=artifacts,
        details=details,
    )
    workspace.save_run(cfg.name, record.to_dict())
    return record


def _training_view(pool, texts) -> list[TrainingExample]:
    out = []
    for ex in pool:
        text = texts.get(ex.sentence_id)
        if text is None:
            raise DataError(f"no text for sentence {ex.sentence_id!r}")
        out.append(TrainingExample(ex.sentence_id, text, ex.label))
    return out


def _unlabeled_ids(store, split) -> list[str]:
    in_split = split.train | split.validation | split.test
    labeled_ids = {ex.sentence_id for ex in store.labeled_examples()}
    return [
        s.sentence_id
        for s in store.sentences(include_redacted=False)
        if s.sentence_id not in in_split and s.sentence_id not in labeled_ids
    ]


def _artifact_path(workspace: Workspace, subdir: str, name: str, suffix: str) -> Path:
    directory = workspace.root / subdir
    directory.mkdir(parents=True, exist_ok=True)
    return directory / f"{name}{suffix}"


def _write_predictions(path: Path, sentences, predictions, gold):
    with path.open("w", encoding="utf-8") as f:
        for sentence, pred, gold_label in zip(sentences, predictions, gold):
            if isinstance(pred, Prediction):
                record = pred.to_dict()
            else:
                record = {"sentence_id": sentence.sentence_id, "predicted": pred.value}
            record["gold"] = gold_label.value
            record["text"] = sentence.text
            f.write(json.dumps(record, ensure_ascii=False) + "\n")
