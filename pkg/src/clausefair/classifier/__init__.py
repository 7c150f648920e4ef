from clausefair.classifier.backend import (
    BACKENDS,
    ClassifierBackend,
    HashedNgramLogisticBackend,
    fit,
    load_checkpoint,
    make_backend,
    predict,
    save_checkpoint,
)
from clausefair.classifier.features import FeatureSpec
from clausefair.classifier.kernels import ENV_FLAG, HAS_NUMBA, kernel_mode
from clausefair.classifier.metrics import (
    ClassMetrics,
    MetricsReport,
    evaluate,
    render_results_table,
    results_rows,
)
from clausefair.classifier.types import (
    ClassDistribution,
    Prediction,
    TrainConfig,
    TrainingExample,
    decode,
)

__all__ = [
    "BACKENDS",
    "ClassDistribution",
    "ClassifierBackend",
    "ClassMetrics",
    "ENV_FLAG",
    "FeatureSpec",
    "HAS_NUMBA",
    "HashedNgramLogisticBackend",
    "MetricsReport",
    "Prediction",
    "TrainConfig",
    "TrainingExample",
    "decode",
    "evaluate",
    "fit",
    "kernel_mode",
    "load_checkpoint",
    "make_backend",
    "predict",
    "render_results_table",
    "results_rows",
    "save_checkpoint",
]
