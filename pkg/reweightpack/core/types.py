"""Type definitions shared across ReweightKit subsystems."""

from typing import Literal

Algorithm = Literal["l1", "candes", "modified", "weighted"]
AmpLaw = Literal["gaussian", "flat"]
CertMethod = Literal["exact-enumeration", "convex-minimization"]
L1Encoding = Literal["split", "epigraph"]
OutputFormat = Literal["csv", "json"]

ALGORITHMS: tuple[str, ...] = ("l1", "candes", "modified", "weighted")
AMP_LAWS: tuple[str, ...] = ("gaussian", "flat")
CERT_METHODS: tuple[str, ...] = ("exact-enumeration", "convex-minimization")
L1_ENCODINGS: tuple[str, ...] = ("split", "epigraph")
OUTPUT_FORMATS: tuple[str, ...] = ("csv", "json")
