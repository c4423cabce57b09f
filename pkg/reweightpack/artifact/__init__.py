"""Output documents and tables for ReweightKit."""

from reweightpack.artifact.exceptions import ArtifactError, ArtifactValidationError
from reweightpack.artifact.io import (
    atomic_write_text,
    build_document,
    dump_document,
    format_csv_value,
    parse_csv_bool,
    read_csv,
    read_document,
    read_matrix,
    read_signal,
    read_vector,
    render_csv,
    sidecar_path,
    write_csv,
    write_document,
    write_matrix,
    write_vector,
)
from reweightpack.artifact.schema import (
    DOCUMENT_KINDS,
    SCHEMA_DIR,
    SCHEMA_VERSION,
    load_document_schema,
    schema_path_for_version,
    validate_document,
)

__all__ = [
    "ArtifactError",
    "ArtifactValidationError",
    "DOCUMENT_KINDS",
    "SCHEMA_DIR",
    "SCHEMA_VERSION",
    "atomic_write_text",
    "build_document",
    "dump_document",
    "format_csv_value",
    "parse_csv_bool",
    "read_csv",
    "read_document",
    "read_matrix",
    "read_signal",
    "read_vector",
    "render_csv",
    "sidecar_path",
    "write_csv",
    "write_document",
    "write_matrix",
    "write_vector",
    "load_document_schema",
    "schema_path_for_version",
    "validate_document",
]
