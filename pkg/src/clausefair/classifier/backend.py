"""Backend contract, the reference trainable backend, and checkpoints."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Protocol, Sequence, runtime_checkable

import numpy as np

from clausefair.classifier.features import FeatureSpec, build_csr
from clausefair.classifier.kernels import predict_kernel, train_kernel
from clausefair.classifier.types import (
    ClassDistribution,
    Prediction,
    TrainConfig,
    TrainingExample,
)
from clausefair.corpus.sentences import Sentence
from clausefair.errors import DataError, EmptyTrainingSet, MissingClass
from clausefair.labels import LABELS

CHECKPOINT_VERSION = 1


@runtime_checkable
class ClassifierBackend(Protocol):
    """Behavioral contract every classification backend satisfies."""

    backend_id: str

    def fit(
        self,
        examples: Sequence[TrainingExample],
        cfg: TrainConfig,
        *,
        warm_start: bool = False,
    ) -> None: ...

    def predict_distribution(self, texts: Sequence[str]) -> np.ndarray: ...


class HashedNgramLogisticBackend:
    """Multinomial logistic regression over hashed n-gram features.

    Deterministic under a fixed seed: weights start at zero and the
    only randomness is the precomputed epoch shuffle. `dropout` from
    TrainConfig is accepted for contract parity but unused here;
    regularization comes from weight_decay.
    """

    backend_id = "hashed-logreg"

    def __init__(self, spec: FeatureSpec | None = None):
        self.spec = spec or FeatureSpec()
        self.weights: np.ndarray | None = None
        self.bias: np.ndarray | None = None
        self.cfg: TrainConfig | None = None

    @classmethod
    def suggested_config(cls, seed: int = 0) -> TrainConfig:
        """Hyperparameters that actually suit this backend's loss scale."""
        return TrainConfig(
            batch_size=16,
            learning_rate=5.0,
            epochs=60,
            warmup_steps=10,
            weight_decay=1e-4,
            dropout=0.0,
            max_sequence_length=256,
            seed=seed,
        )

    @property
    def is_fitted(self) -> bool:
        return self.weights is not None

    def fit(
        self,
        examples: Sequence[TrainingExample],
        cfg: TrainConfig,
        *,
        warm_start: bool = False,
    ) -> None:
        if not examples:
            raise EmptyTrainingSet("fit() needs at least one example")
        present = {ex.label for ex in examples}
        missing = [l.value for l in LABELS if l not in present]
        if missing:
            raise MissingClass(f"training data missing classes: {missing}")

        texts = [ex.text for ex in examples]
        y = np.array([ex.label.severity for ex in examples], dtype=np.int64)
        indptr, indices, values = build_csr(texts, self.spec, cfg.max_sequence_length)

        if not (warm_start and self.is_fitted):
            self.weights = np.zeros((self.spec.n_features, len(LABELS)))
            self.bias = np.zeros(len(LABELS))

        rng = np.random.default_rng(cfg.seed)
        order = np.stack(
            [rng.permutation(len(examples)) for _ in range(cfg.epochs)]
        ).astype(np.int64)

        train_kernel(
            indptr, indices, values, y, self.weights, self.bias, order,
            cfg.batch_size, cfg.learning_rate, cfg.warmup_steps, cfg.weight_decay,
        )
        self.cfg = cfg

    def predict_distribution(self, texts: Sequence[str]) -> np.ndarray:
        if not self.is_fitted:
            raise DataError("backend is not fitted")
        max_tokens = (
            self.cfg.max_sequence_length if self.cfg else TrainConfig().max_sequence_length
        )
        indptr, indices, values = build_csr(list(texts), self.spec, max_tokens)
        return predict_kernel(indptr, indices, values, self.weights, self.bias)

    def clone_state(self) -> dict:
        """Snapshot of the trained parameters (used for best-model keeping)."""
        return {
            "weights": None if self.weights is None else self.weights.copy(),
            "bias": None if self.bias is None else self.bias.copy(),
            "cfg": self.cfg,
        }

    def restore_state(self, state: dict) -> None:
        self.weights = state["weights"]
        self.bias = state["bias"]
        self.cfg = state["cfg"]


BACKENDS = {
    HashedNgramLogisticBackend.backend_id: HashedNgramLogisticBackend,
}


def make_backend(backend_id: str) -> ClassifierBackend:
    if backend_id not in BACKENDS:
        raise DataError(
            f"unknown backend {backend_id!r}; available: {sorted(BACKENDS)}"
        )
    return BACKENDS[backend_id]()


def fit(
    backend: ClassifierBackend,
    examples: Sequence[TrainingExample],
    cfg: TrainConfig,
    *,
    warm_start: bool = False,
) -> ClassifierBackend:
    """Train `backend` in place and return it as the model handle."""
    backend.fit(examples, cfg, warm_start=warm_start)
    return backend


def predict(model: ClassifierBackend, sentences: Sequence[Sentence]) -> list[Prediction]:
    """One Prediction per sentence, order-aligned."""
    if not sentences:
        return []
    probs = model.predict_distribution([s.text for s in sentences])
    out = []
    for sentence, row in zip(sentences, probs):
        dist = ClassDistribution(p=(float(row[0]), float(row[1]), float(row[2])))
        out.append(Prediction.from_distribution(sentence.sentence_id, dist))
    return out


def save_checkpoint(model: HashedNgramLogisticBackend, path: str | Path) -> None:
    """Self-describing checkpoint: backend id, config, feature spec, weights."""
    if not model.is_fitted:
        raise DataError("cannot checkpoint an unfitted model")
    meta = {
        "checkpoint_version": CHECKPOINT_VERSION,
        "backend_id": model.backend_id,
        "config": model.cfg.to_dict() if model.cfg else None,
        "feature_spec": model.spec.to_dict(),
    }
    meta_bytes = np.frombuffer(json.dumps(meta).encode("utf-8"), dtype=np.uint8)
    with Path(path).open("wb") as f:
        np.savez_compressed(f, meta=meta_bytes, weights=model.weights, bias=model.bias)


def load_checkpoint(path: str | Path) -> HashedNgramLogisticBackend:
    with np.load(Path(path)) as data:
        meta = json.loads(bytes(data["meta"]).decode("utf-8"))
        if meta.get("backend_id") not in BACKENDS:
            raise DataError(f"checkpoint has unknown backend {meta.get('backend_id')!r}")
        model = HashedNgramLogisticBackend(FeatureSpec.from_dict(meta["feature_spec"]))
        model.weights = data["weights"].copy()
        model.bias = data["bias"].copy()
        if meta.get("config"):
            model.cfg = TrainConfig.from_dict(meta["config"])
    return model
