"""Atomic CSV/JSON writers and validating readers."""

from __future__ import annotations

import csv
import io
import json
import math
import os
from pathlib import Path
import tempfile
from typing import Any, Iterable, Sequence

import numpy as np
from numpy.typing import ArrayLike

from reweightpack.artifact.exceptions import ArtifactValidationError
from reweightpack.artifact.schema import SCHEMA_VERSION, validate_document
from reweightpack.core.canonical import canonicalize

COMMENT_PREFIX = "# "


def build_document(kind: str, payload: dict[str, Any]) -> dict[str, Any]:
    """Wrap a payload as a versioned, canonical, schema-valid document."""
    document = canonicalize({**payload, "schema_version": SCHEMA_VERSION, "kind": kind})
    validate_document(document)
    return document


def dump_document(kind: str, payload: dict[str, Any]) -> str:
    document = build_document(kind, payload)
    return json.dumps(document, indent=2, ensure_ascii=True, sort_keys=True) + "\n"


def write_document(kind: str, payload: dict[str, Any], path: str | Path) -> dict[str, Any]:
    document = build_document(kind, payload)
    serialized = json.dumps(document, indent=2, ensure_ascii=True, sort_keys=True) + "\n"
    atomic_write_text(path, serialized)
    return document


def read_document(path: str | Path, *, kind: str | None = None) -> dict[str, Any]:
    """Read and validate a JSON output document."""
    target = Path(path)
    try:
        raw_text = target.read_text(encoding="utf-8")
    except UnicodeDecodeError as error:
        raise ArtifactValidationError(f"Document is not valid UTF-8 text: {target}") from error
    try:
        document = json.loads(raw_text)
    except json.JSONDecodeError as error:
        raise ArtifactValidationError(f"Document is not valid JSON: {target} ({error})") from error

    validate_document(document)
    if kind is not None and document.get("kind") != kind:
        raise ArtifactValidationError(
            f"Expected a '{kind}' document, got '{document.get('kind')}': {target}"
        )
    return document


def atomic_write_text(path: str | Path, text: str) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)

    temp_file_path: str | None = None
    try:
        with tempfile.NamedTemporaryFile(
            mode="w",
            encoding="utf-8",
            newline="",
            dir=target.parent,
            prefix=f".{target.name}.",
            suffix=".tmp",
            delete=False,
        ) as temp_file:
            temp_file.write(text)
            temp_file.flush()
            os.fsync(temp_file.fileno())
            temp_file_path = temp_file.name
        os.replace(temp_file_path, target)
    finally:
        if temp_file_path:
            temp_path = Path(temp_file_path)
            if temp_path.exists():
                temp_path.unlink()
    return target


def format_csv_value(value: Any) -> str:
    """repr precision for floats so values round-trip bit-exactly."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        as_float = float(value)
        if math.isnan(as_float):
            raise ArtifactValidationError("NaN is not supported in CSV output")
        if math.isinf(as_float):
            return "inf" if as_float > 0 else "-inf"
        return repr(as_float)
    return str(value)


def render_csv(
    header: Sequence[str],
    rows: Iterable[Sequence[Any]],
    *,
    comments: dict[str, Any] | None = None,
) -> str:
    buffer = io.StringIO()
    for key, value in sorted((comments or {}).items()):
        buffer.write(f"{COMMENT_PREFIX}{key}={format_csv_value(value)}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        if len(row) != len(header):
            raise ArtifactValidationError(
                f"CSV row has {len(row)} fields, header has {len(header)}"
            )
        writer.writerow([format_csv_value(value) for value in row])
    return buffer.getvalue()


def write_csv(
    path: str | Path,
    header: Sequence[str],
    rows: Iterable[Sequence[Any]],
    *,
    comments: dict[str, Any] | None = None,
) -> Path:
    return atomic_write_text(path, render_csv(header, rows, comments=comments))


def read_csv(
    path: str | Path,
    *,
    expected_header: Sequence[str] | None = None,
) -> tuple[list[str], list[list[str]], dict[str, str]]:
    """Return (header, rows, comments); `# key=value` lines before the header become comments."""
    target = Path(path)
    comments: dict[str, str] = {}
    body: list[str] = []
    with target.open(encoding="utf-8", newline="") as handle:
        for line in handle:
            if not body and line.startswith(COMMENT_PREFIX.strip()):
                key, _, value = line[1:].strip().partition("=")
                comments[key.strip()] = value.strip()
                continue
            body.append(line)

    records = list(csv.reader(body))
    if not records:
        raise ArtifactValidationError(f"CSV file has no header: {target}")
    header, rows = records[0], records[1:]
    if expected_header is not None and header != list(expected_header):
        raise ArtifactValidationError(
            f"Unexpected CSV header in {target}: {','.join(header)}"
        )
    for number, row in enumerate(rows, start=2):
        if len(row) != len(header):
            raise ArtifactValidationError(
                f"{target}: row {number} has {len(row)} fields, expected {len(header)}"
            )
    return header, rows, comments


def parse_csv_bool(raw: str) -> bool:
    lowered = raw.strip().lower()
    if lowered in {"true", "1"}:
        return True
    if lowered in {"false", "0"}:
        return False
    raise ArtifactValidationError(f"Invalid boolean CSV value: {raw!r}")


def sidecar_path(path: str | Path) -> Path:
    target = Path(path)
    return target.with_name(target.name + ".json")


def write_matrix(path: str | Path, matrix: ArrayLike, metadata: dict[str, Any]) -> Path:
    """Matrix rows as headerless CSV plus a `matrix` JSON sidecar."""
    values = np.asarray(matrix, dtype=np.float64)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    for row in values:
        writer.writerow([format_csv_value(value) for value in row])
    atomic_write_text(path, buffer.getvalue())
    write_document("matrix", metadata, sidecar_path(path))
    return Path(path)


def read_matrix(path: str | Path) -> tuple[np.ndarray, dict[str, Any]]:
    target = Path(path)
    with target.open(encoding="utf-8", newline="") as handle:
        rows = [[float(value) for value in row] for row in csv.reader(handle) if row]
    matrix = np.array(rows, dtype=np.float64)
    metadata: dict[str, Any] = {}
    if sidecar_path(target).exists():
        metadata = read_document(sidecar_path(target), kind="matrix")
        if matrix.shape != (metadata["m"], metadata["n"]):
            raise ArtifactValidationError(
                f"{target}: matrix shape {matrix.shape} disagrees with sidecar "
                f"({metadata['m']}, {metadata['n']})"
            )
    return matrix, metadata


def write_vector(path: str | Path, vector: ArrayLike, *, kind: str | None = None, metadata: dict[str, Any] | None = None) -> Path:
    """One `index,value` row per entry, optionally with a JSON sidecar."""
    values = np.asarray(vector, dtype=np.float64).reshape(-1)
    write_csv(path, ("index", "value"), ((index, value) for index, value in enumerate(values)))
    if kind is not None:
        write_document(kind, metadata or {}, sidecar_path(path))
    return Path(path)


def read_vector(path: str | Path) -> np.ndarray:
    """Dense vector from `index,value` rows; every index in [0, n) must appear once."""
    _, rows, _ = read_csv(path, expected_header=("index", "value"))
    values = np.zeros(len(rows))
    seen: set[int] = set()
    for number, row in enumerate(rows, start=2):
        try:
            index, value = int(row[0]), float(row[1])
        except ValueError as error:
            raise ArtifactValidationError(f"{path}: row {number} is not an index,value pair") from error
        if not 0 <= index < len(rows):
            raise ArtifactValidationError(f"{path}: index {index} out of range for {len(rows)} rows")
        if index in seen:
            raise ArtifactValidationError(f"{path}: index {index} appears more than once")
        seen.add(index)
        values[index] = value
    return values


def read_signal(path: str | Path) -> tuple[np.ndarray, dict[str, Any]]:
    x = read_vector(path)
    metadata: dict[str, Any] = {}
    if sidecar_path(path).exists():
        metadata = read_document(sidecar_path(path), kind="signal")
        if metadata["n"] != x.shape[0]:
            raise ArtifactValidationError(
                f"{path}: signal length {x.shape[0]} disagrees with sidecar n={metadata['n']}"
            )
    return x, metadata
