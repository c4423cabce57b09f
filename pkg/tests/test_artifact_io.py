import json
from pathlib import Path

import numpy as np
import pytest

from reweightpack.artifact import (
    SCHEMA_DIR,
    ArtifactValidationError,
    build_document,
    dump_document,
    format_csv_value,
    load_document_schema,
    read_csv,
    read_document,
    read_matrix,
    read_signal,
    read_vector,
    render_csv,
    schema_path_for_version,
    sidecar_path,
    validate_document,
    write_csv,
    write_document,
    write_matrix,
    write_vector,
)
from reweightpack.numcore import sample_measurement_matrix
from reweightpack.signals import generate_model_signal


def test_schema_file_is_published_under_stable_path() -> None:
    path = schema_path_for_version(1)
    assert path == SCHEMA_DIR / "reweightkit-1.schema.json"
    assert path.exists()

    schema_from_disk = json.loads(path.read_text(encoding="utf-8"))
    assert load_document_schema(1) == schema_from_disk


def test_documents_carry_version_and_kind() -> None:
    document = build_document("kappa", {"K": [0, 2], "kappa": float("inf")})

    assert document["schema_version"] == 1
    assert document["kind"] == "kappa"
    assert document["kappa"] == "inf"


def test_validation_rejects_missing_fields_and_unknown_versions() -> None:
    with pytest.raises(ArtifactValidationError):
        build_document("robustness", {"K": [0], "C": 2.0, "holds": True})
    with pytest.raises(ArtifactValidationError):
        validate_document({"schema_version": 2, "kind": "kappa", "K": [], "kappa": 0.0})
    with pytest.raises(ArtifactValidationError):
        build_document("histogram", {})


def test_unknown_fields_are_forward_compatible(tmp_path: Path) -> None:
    path = tmp_path / "kappa.json"
    write_document("kappa", {"K": [1], "kappa": 1.5, "future_field": {"note": "kept"}}, path)

    document = read_document(path, kind="kappa")
    assert document["future_field"] == {"note": "kept"}
    with pytest.raises(ArtifactValidationError):
        read_document(path, kind="curve")


def test_document_writer_is_byte_stable(tmp_path: Path) -> None:
    payload = {"K": [3, 1], "kappa": 0.25, "method": "exact-enumeration"}
    first = tmp_path / "first.json"
    second = tmp_path / "second.json"

    write_document("kappa", payload, first)
    write_document("kappa", dict(reversed(list(payload.items()))), second)

    assert first.read_bytes() == second.read_bytes()
    assert first.read_text(encoding="utf-8") == dump_document("kappa", payload)


def test_read_document_rejects_invalid_json(tmp_path: Path) -> None:
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")

    with pytest.raises(ArtifactValidationError):
        read_document(path)


def test_csv_values_use_repr_precision() -> None:
    assert format_csv_value(0.1 + 0.2) == "0.30000000000000004"
    assert format_csv_value(float("inf")) == "inf"
    assert format_csv_value(True) == "true"
    assert format_csv_value(np.int64(7)) == "7"
    with pytest.raises(ArtifactValidationError):
        format_csv_value(float("nan"))


def test_csv_comments_precede_header(tmp_path: Path) -> None:
    path = tmp_path / "sweep.csv"
    write_csv(path, ("a", "b"), [(1, 0.5)], comments={"delta": 0.555, "W": 10.0})

    text = path.read_text(encoding="utf-8")
    assert text.splitlines()[:3] == ["# W=10.0", "# delta=0.555", "a,b"]
    header, rows, comments = read_csv(path, expected_header=("a", "b"))
    assert header == ["a", "b"]
    assert rows == [["1", "0.5"]]
    assert comments == {"W": "10.0", "delta": "0.555"}


def test_csv_reader_rejects_wrong_header_and_ragged_rows(tmp_path: Path) -> None:
    path = tmp_path / "bad.csv"
    path.write_text("a,b\n1,2,3\n", encoding="utf-8")

    with pytest.raises(ArtifactValidationError):
        read_csv(path, expected_header=("x", "y"))
    with pytest.raises(ArtifactValidationError):
        read_csv(path)
    with pytest.raises(ArtifactValidationError):
        render_csv(("a",), [(1, 2)])


def test_matrix_round_trip_is_bit_exact(tmp_path: Path) -> None:
    sampled = sample_measurement_matrix(3, 5, seed=2)
    path = tmp_path / "A.csv"
    write_matrix(path, sampled.matrix, sampled.metadata())

    matrix, metadata = read_matrix(path)
    assert np.array_equal(matrix, sampled.matrix)
    assert metadata["m"] == 3
    assert sidecar_path(path).name == "A.csv.json"


def test_matrix_sidecar_shape_mismatch_is_rejected(tmp_path: Path) -> None:
    sampled = sample_measurement_matrix(3, 5, seed=2)
    path = tmp_path / "A.csv"
    write_matrix(path, sampled.matrix, {**sampled.metadata(), "m": 4})

    with pytest.raises(ArtifactValidationError):
        read_matrix(path)


def test_signal_round_trip_keeps_metadata(tmp_path: Path) -> None:
    signal = generate_model_signal(12, 2, 1.0, 0.1, 4, seed=6)
    path = tmp_path / "x.csv"
    write_vector(path, signal.x, kind="signal", metadata={**signal.metadata(), "model": "two-part"})

    x, metadata = read_signal(path)
    assert np.array_equal(x, signal.x)
    assert metadata["K"] == list(signal.strong_set)
    assert np.array_equal(read_vector(path), signal.x)


def test_vector_rows_may_come_in_any_order(tmp_path: Path) -> None:
    path = tmp_path / "x.csv"
    path.write_text("index,value\n2,-1.5\n0,0.25\n1,0.0\n", encoding="utf-8")

    assert np.array_equal(read_vector(path), [0.25, 0.0, -1.5])


@pytest.mark.parametrize(
    ("body", "message"),
    [
        ("0,1.0\n0,2.0\n", "more than once"),
        ("0,1.0\n2,2.0\n", "out of range"),
        ("0,1.0\n-1,2.0\n", "out of range"),
        ("0,1.0\none,2.0\n", "not an index,value pair"),
    ],
)
def test_malformed_vector_files_are_rejected(tmp_path: Path, body: str, message: str) -> None:
    path = tmp_path / "x.csv"
    path.write_text("index,value\n" + body, encoding="utf-8")

    with pytest.raises(ArtifactValidationError, match=message):
        read_vector(path)
