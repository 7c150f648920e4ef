"""Exception hierarchy.

Three branches map onto the CLI exit codes: UsageError -> 1,
DataError -> 2, ExternalServiceError -> 3.
"""


class ClauseFairError(Exception):
    """Base class for all package errors."""


class UsageError(ClauseFairError):
    """Bad invocation or invalid configuration."""


class DataError(ClauseFairError):
    """Invalid or inconsistent data supplied to an operation."""


class ExternalServiceError(ClauseFairError):
    """A remote text-generation service failed or answered garbage."""


# corpus
class EmptyDocument(DataError):
    """HTML ingestion found no extractable text."""


class ConflictError(DataError):
    """Duplicate sentence_id with differing text."""


class InsufficientClass(DataError):
    """A class has fewer examples than the number of nonzero split buckets."""


# annotation
class PoolTooSmall(DataError):
    """Annotator pool cannot cover two primaries plus an adjudicator."""


class MissingAnnotations(DataError):
    """Resolution attempted without exactly two primary annotations."""


class NotPending(DataError):
    """Adjudication attempted on a sentence with no open disagreement."""


class SelfAdjudication(DataError):
    """Adjudicator was one of the primary annotators."""


class EmptyInput(DataError):
    """An aggregate statistic was asked for on an empty collection."""


class IncompleteAnswers(DataError):
    """Guideline checklist answers do not cover every rule."""


# classifier
class MissingClass(DataError):
    """Training data does not cover all three classes."""


class EmptyTrainingSet(DataError):
    """fit() called with no examples."""


class LengthMismatch(DataError):
    """Predictions and gold labels are not aligned."""


# selftrain
class UnverifiedSynthetic(DataError):
    """Synthetic example injected without two-reviewer verification."""


# gateway
class ParseError(ExternalServiceError):
    """LLM response could not be mapped to the expected structure."""


class TransportError(ExternalServiceError):
    """LLM request failed at the transport level."""


class MissingInput(DataError):
    """Classification template rendered without an input sentence."""


class DuplicateReview(DataError):
    """The same reviewer reviewed a candidate twice."""
