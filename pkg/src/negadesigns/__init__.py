"""Negaperiodic Golay pairs and the 2N-type matrices they induce."""

from .seqcore import Kind, PairClass, classify_pair, format_seq, is_ng_pair, parse_seq
from .matalg import CONFERENCE, HADAMARD, StructuredMatrix, verify, weighing
from .constructions import NGPair, QuasiWilliamsonQuad, ito_ng, negacyclic_conference, paley_ng
from .equiv import are_equivalent, canonical_form

__version__ = "0.1.0"

__all__ = [
    "Kind", "PairClass", "classify_pair", "format_seq", "is_ng_pair", "parse_seq",
    "CONFERENCE", "HADAMARD", "StructuredMatrix", "verify", "weighing",
    "NGPair", "QuasiWilliamsonQuad", "ito_ng", "negacyclic_conference", "paley_ng",
    "are_equivalent", "canonical_form",
]
