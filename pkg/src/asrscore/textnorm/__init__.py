from .nsw import expand_nsw
from .pipeline import (
    RESOURCE_DIR_ENV,
    STAGES,
    NormConfig,
    default_interjections,
    default_ukus_map,
    normalize,
    normalize_case,
    parse_interjections,
    parse_ukus,
    remove_interjections,
    strip_punctuation,
    unify_spelling,
)

__all__ = [
    "RESOURCE_DIR_ENV",
    "STAGES",
    "NormConfig",
    "default_interjections",
    "default_ukus_map",
    "expand_nsw",
    "normalize",
    "normalize_case",
    "parse_interjections",
    "parse_ukus",
    "remove_interjections",
    "strip_punctuation",
    "unify_spelling",
]
