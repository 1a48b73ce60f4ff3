"""Exception hierarchy shared by every module.

Each error may carry a ``witness``: the tuple, pair, word or report that
explains the failure, so callers (and the CLI) can print or re-check it.
"""

from typing import Any, Optional


class ZSError(Exception):
    """Base class for all toolkit errors."""

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness


# magma_core
class DuplicateEntry(ZSError):
    pass


class IndexOutOfRange(ZSError):
    pass


class DuplicateName(ZSError):
    pass


# mutual_actions / zs_product
class NotClosed(ZSError):
    def __init__(self, subset: str, witness: Any):
        super().__init__(f"subset {subset} is not closed: {witness}", witness)
        self.subset = subset


class FactorizationMissing(ZSError):
    def __init__(self, element: Any):
        super().__init__(f"element {element} has no factorization", element)
        self.element = element


class FactorizationAmbiguous(ZSError):
    def __init__(self, element: Any, first: Any, second: Any):
        super().__init__(
            f"element {element} factors twice: {first} and {second}",
            (element, first, second),
        )
        self.element = element
        self.factorizations = (first, second)


class NotCategorical(ZSError):
    pass


class ClauseFailed(ZSError):
    def __init__(self, clause: str, witness: Any):
        super().__init__(f"clause {clause} failed at {witness}", witness)
        self.clause = clause


class HypothesisFailed(ZSError):
    def __init__(self, message: str, witness: Any = None):
        super().__init__(message, witness)


class NoCommonLeftMultipleFound(ZSError):
    pass


class ConditionFailed(ZSError):
    def __init__(self, index: str, witness: Any):
        super().__init__(f"condition ({index}) failed at {witness}", witness)
        self.index = index


class ReconstructionFailed(ZSError):
    pass


# rewriting / presentations
class FuelExhausted(ZSError):
    pass


class NotTerminating(ZSError):
    pass


class NotComplete(ZSError):
    pass


class ShapeMismatch(ZSError):
    pass


class KindCheckFailed(ZSError):
    pass


class AlphabetCollision(ZSError):
    pass


# examples_categories
class IllFormedCategory(ZSError):
    pass


class EmbeddingNotInjective(ZSError):
    pass


class SituationCheckFailed(ZSError):
    def __init__(self, condition: str, witness: Any):
        super().__init__(f"situation condition {condition} failed at {witness}", witness)
        self.condition = condition


class UnknownExample(ZSError):
    pass


# files
class ArtifactError(ZSError):
    pass
