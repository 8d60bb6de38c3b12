"""Exception hierarchy.

Every error that points at a concrete piece of a category carries a
``witness`` tuple of object/morphism identifiers so that callers (and the
CLI) can report *where* something went wrong.
"""

from __future__ import annotations


class CatqError(Exception):
    """Base class for all engine errors."""

    def __init__(self, message: str, witness: tuple = ()):
        super().__init__(message)
        self.witness = tuple(witness)


# -- categories -------------------------------------------------------------

class CategoryError(CatqError):
    pass


class MissingIdentity(CategoryError):
    pass


class NonComposablePairInTable(CategoryError):
    pass


class MissingComposite(CategoryError):
    pass


class CompositeTypeMismatch(CategoryError):
    pass


class IdentityLawViolation(CategoryError):
    pass


class AssociativityViolation(CategoryError):
    pass


class UnknownObject(CategoryError, KeyError):
    pass


class UnknownMorphism(CategoryError, KeyError):
    pass


class DuplicateIdentifier(CategoryError):
    pass


class SizeLimitExceeded(CategoryError):
    pass


class SubcategoryError(CategoryError):
    pass


class CategoryLawViolation(CategoryError):
    """Raised by validation; ``violations`` lists every individual problem."""

    def __init__(self, violations: list[CategoryError]):
        self.violations = list(violations)
        first = self.violations[0]
        more = f" (and {len(self.violations) - 1} more)" if len(self.violations) > 1 else ""
        super().__init__(f"{first}{more}", first.witness)


class NotAPartialOrder(CategoryError):
    pass


# -- functors and natural transformations ------------------------------------

class FunctorError(CatqError):
    pass


class DomCodMismatch(FunctorError):
    pass


class IdentityNotPreserved(FunctorError):
    pass


class CompositionNotPreserved(FunctorError):
    pass


class NaturalitySquareFails(FunctorError):
    pass


class ShapeMismatch(FunctorError):
    pass


class FunctorLawViolation(FunctorError):
    def __init__(self, violations: list[FunctorError]):
        self.violations = list(violations)
        first = self.violations[0]
        more = f" (and {len(self.violations) - 1} more)" if len(self.violations) > 1 else ""
        super().__init__(f"{first}{more}", first.witness)


# -- comma categories, adjunctions, reflections ------------------------------

class CodomainMismatch(ShapeMismatch):
    pass


class NotUniversal(CatqError):
    pass


class FactorizationNotUnique(CatqError):
    pass


class NotAdjoint(CatqError):
    pass


class NotReflective(CatqError):
    pass


class NotCoreflective(CatqError):
    pass


class NotATopology(CatqError):
    pass


class PreconditionUnmet(CatqError):
    pass


class InternalInconsistency(CatqError):
    """A biconditional guaranteed by a theorem failed: the engine is wrong."""
