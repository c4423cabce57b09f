"""Core types and deterministic serialization primitives for ReweightKit."""

from reweightpack.core.canonical import canonical_json, canonicalize, decode_float
from reweightpack.core.types import (
    ALGORITHMS,
    AMP_LAWS,
    CERT_METHODS,
    L1_ENCODINGS,
    OUTPUT_FORMATS,
    Algorithm,
    AmpLaw,
    CertMethod,
    L1Encoding,
    OutputFormat,
)

__all__ = [
    "ALGORITHMS",
    "AMP_LAWS",
    "CERT_METHODS",
    "L1_ENCODINGS",
    "OUTPUT_FORMATS",
    "Algorithm",
    "AmpLaw",
    "CertMethod",
    "L1Encoding",
    "OutputFormat",
    "canonicalize",
    "canonical_json",
    "decode_float",
]
