"""clausefair: fairness review of commercial-contract sentences.

Ingests HTML contracts, manages dual-annotator labeling with
adjudication, trains a three-class fairness classifier through
confidence-gated self-training with LLM-generated augmentation, and
serves the whole workflow over a CLI and HTTP API.
"""

__version__ = "0.1.0"

from clausefair.labels import LABELS, Label

__all__ = ["LABELS", "Label", "__version__"]
