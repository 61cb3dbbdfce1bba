"""Noncommutative polynomial algebra and sum-of-squares certification."""

from .freealg import (
    ContextMismatchError,
    Letter,
    NcPoly,
    VarContext,
    Word,
    word_compare,
    word_key,
    word_star,
)
from .ncparse import PolyParseError, parse, parse_var_context, print_canonical
from .gram import (
    AffineGramSpace,
    BasisLimitError,
    BorderBasis,
    GramMatrix,
    border_basis,
    canonical_gram,
    gram_space,
    reconstruct,
    unique_top_split,
)
from .soscert import (
    Certificate,
    Inconclusive,
    NotSos,
    Obstruction,
    ObstructionKind,
    ObstructionMissingError,
    SosResult,
    conjugated_poly,
    refute_conjugation,
    sos_decompose,
    top_obstruction,
)
from .counterexamples import adjoint_commutator_poly, crossing_poly

__all__ = [
    "AffineGramSpace",
    "BasisLimitError",
    "BorderBasis",
    "Certificate",
    "ContextMismatchError",
    "GramMatrix",
    "Inconclusive",
    "Letter",
    "NcPoly",
    "NotSos",
    "Obstruction",
    "ObstructionKind",
    "ObstructionMissingError",
    "PolyParseError",
    "SosResult",
    "VarContext",
    "Word",
    "adjoint_commutator_poly",
    "border_basis",
    "canonical_gram",
    "conjugated_poly",
    "crossing_poly",
    "gram_space",
    "parse",
    "parse_var_context",
    "print_canonical",
    "reconstruct",
    "refute_conjugation",
    "sos_decompose",
    "top_obstruction",
    "unique_top_split",
    "word_compare",
    "word_key",
    "word_star",
]

__version__ = "0.1.0"
