"""Off-line diagnosability of discrete event systems.

Thin python layer over the C++ core: load a model or generator-family
document, decide diagnosability, and search for minimal / minimum-cost
observable event sets.
"""

from desdiag._core import (
    Document,
    Family,
    NotDiagnosableError,
    ParseError,
    SearchResult,
    ValidationError,
    Verdict,
    brute_force,
    check,
    generate,
    greedy,
    load_family,
    load_model,
    nes,
    optimal,
    serialize_model,
    signatures,
)

__version__ = "0.1.0"

__all__ = [
    "Document",
    "Family",
    "NotDiagnosableError",
    "ParseError",
    "SearchResult",
    "ValidationError",
    "Verdict",
    "brute_force",
    "check",
    "generate",
    "greedy",
    "load_family",
    "load_model",
    "nes",
    "optimal",
    "serialize_model",
    "signatures",
]
