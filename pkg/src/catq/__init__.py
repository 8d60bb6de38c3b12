"""Finite category calculus: reflectors, coreflectors, and the conditions relating them."""

__version__ = "0.1.0"

from .adjunction import Adjunction, lemma_properties_report, verify_adjunction  # noqa: E402
from .category import FinCategory, RawCategory, Subcategory, full_subcategory, opposite, validate_category  # noqa: E402
from .comma import comma, over, transport_iso, under  # noqa: E402
from .dsl import emit, parse  # noqa: E402
from .functor import Functor, NatTransformation, make_functor  # noqa: E402
from .instances import InstanceBundle, named_fixtures, poset_category, random_instance  # noqa: E402
from .reflection import (  # noqa: E402
    check_hypothesis_factor_initial,
    check_report,
    check_factorization_corollaries,
    find_coreflector,
    find_reflector,
)

__all__ = [
    "Adjunction", "FinCategory", "Functor", "InstanceBundle", "NatTransformation", "RawCategory",
    "Subcategory", "check_hypothesis_factor_initial", "check_report", "check_factorization_corollaries",
    "comma", "emit", "find_coreflector", "find_reflector", "full_subcategory", "lemma_properties_report",
    "make_functor", "named_fixtures", "opposite", "over", "parse", "poset_category", "random_instance",
    "transport_iso", "under", "validate_category", "verify_adjunction",
]
