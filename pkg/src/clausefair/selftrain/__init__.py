from clausefair.selftrain.loop import (
    IterationRecord,
    SelfTrainState,
    StoppingPolicy,
    ThresholdConfig,
    confidence_histogram,
    export_history,
    filter_by_confidence,
    inject_synthetic,
    new_state,
    self_train,
)

__all__ = [
    "IterationRecord",
    "SelfTrainState",
    "StoppingPolicy",
    "ThresholdConfig",
    "confidence_histogram",
    "export_history",
    "filter_by_confidence",
    "inject_synthetic",
    "new_state",
    "self_train",
]
