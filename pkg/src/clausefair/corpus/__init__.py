from clausefair.corpus.html_ingest import (
    ContractDocument,
    Section,
    ingest_html,
    normalize_whitespace,
)
from clausefair.corpus.sentences import (
    DEFAULT_ABBREVIATIONS,
    DEFAULT_REDACTION_PATTERNS,
    Sentence,
    extract_sentences,
    is_redacted,
    split_sentences,
)
from clausefair.corpus.split import (
    BUCKETS,
    DatasetSplit,
    SplitConfig,
    largest_remainder_counts,
    stratified_split,
)
from clausefair.corpus.store import DatasetStore

__all__ = [
    "BUCKETS",
    "ContractDocument",
    "DatasetSplit",
    "DatasetStore",
    "DEFAULT_ABBREVIATIONS",
    "DEFAULT_REDACTION_PATTERNS",
    "Section",
    "Sentence",
    "SplitConfig",
    "extract_sentences",
    "ingest_html",
    "is_redacted",
    "largest_remainder_counts",
    "normalize_whitespace",
    "split_sentences",
    "stratified_split",
]
