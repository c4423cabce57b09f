"""JSON schema and validation for ReweightKit output documents."""

from __future__ import annotations

from functools import lru_cache
import json
from pathlib import Path
from typing import Any

from jsonschema import Draft202012Validator

from reweightpack.artifact.exceptions import ArtifactValidationError

SCHEMA_VERSION = 1
SCHEMA_DIR = Path(__file__).resolve().parents[2] / "schemas"

DOCUMENT_KINDS: tuple[str, ...] = (
    "matrix",
    "signal",
    "solve",
    "kappa",
    "robustness",
    "curve",
    "sweep",
    "campaign",
    "comparison",
    "trial-verification",
)

_NUMBER_OR_INF: dict[str, Any] = {
    "anyOf": [{"type": "number"}, {"type": "string", "enum": ["inf", "-inf"]}]
}

_INDEX_LIST: dict[str, Any] = {"type": "array", "items": {"type": "integer", "minimum": 0}}


def _requires(kind: str, *fields: str, properties: dict[str, Any] | None = None) -> dict[str, Any]:
    then: dict[str, Any] = {"required": list(fields)}
    if properties:
        then["properties"] = properties
    return {"if": {"properties": {"kind": {"const": kind}}}, "then": then}


# Fallback schema keeps runtime resilient if external schema files are unavailable.
_FALLBACK_DOCUMENT_SCHEMA_V1: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "ReweightKit output document",
    "type": "object",
    "required": ["schema_version", "kind"],
    "additionalProperties": True,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "kind": {"type": "string", "enum": list(DOCUMENT_KINDS)},
    },
    "allOf": [
        _requires(
            "matrix",
            "m",
            "n",
            "seed",
            "distribution",
            properties={"m": {"type": "integer", "minimum": 1}, "n": {"type": "integer", "minimum": 2}},
        ),
        _requires(
            "signal",
            "n",
            "model",
            properties={"K": _INDEX_LIST, "K_total": _INDEX_LIST},
        ),
        _requires(
            "solve",
            "algorithm",
            "estimate",
            "residual",
            "objective",
            properties={"estimate": {"type": "array", "items": {"type": "number"}}},
        ),
        _requires("kappa", "K", "kappa", properties={"K": _INDEX_LIST, "kappa": _NUMBER_OR_INF}),
        _requires(
            "robustness",
            "K",
            "C",
            "holds",
            "margin",
            properties={"K": _INDEX_LIST, "C": _NUMBER_OR_INF, "holds": {"type": "boolean"}},
        ),
        _requires(
            "curve",
            "axis_name",
            "points",
            properties={"points": {"type": "array", "items": {"type": "object"}}},
        ),
        _requires("sweep", "config", "baseline", "points"),
        _requires(
            "campaign",
            "config",
            "instances",
            "summary",
            properties={"instances": {"type": "array", "items": {"type": "object"}}},
        ),
        _requires("comparison", "config", "rows"),
        _requires("trial-verification", "records", "verified"),
    ],
}


def schema_path_for_version(version: int) -> Path:
    return SCHEMA_DIR / f"reweightkit-{version}.schema.json"


@lru_cache(maxsize=4)
def load_document_schema(version: int = SCHEMA_VERSION) -> dict[str, Any]:
    """Load the document schema for a major version, falling back to the built-in copy."""
    schema_path = schema_path_for_version(version)
    if schema_path.exists():
        return json.loads(schema_path.read_text(encoding="utf-8"))
    if version == SCHEMA_VERSION:
        return _FALLBACK_DOCUMENT_SCHEMA_V1
    raise ArtifactValidationError(f"Schema file not found for schema_version: {version}")


def validate_document(document: dict[str, Any]) -> None:
    """Validate an output document's shape and schema version."""
    if not isinstance(document, dict):
        raise ArtifactValidationError("Document must be a JSON object at root.")

    version = document.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ArtifactValidationError(
            f"Unsupported schema_version: {version!r}. Supported: {SCHEMA_VERSION}"
        )

    validator = Draft202012Validator(load_document_schema(version))
    errors = sorted(validator.iter_errors(document), key=lambda err: list(err.path))
    if errors:
        first = errors[0]
        location = ".".join(str(part) for part in first.path) or "$"
        raise ArtifactValidationError(f"Invalid document at {location}: {first.message}")
