from contextlib import contextmanager
from dataclasses import dataclass
from importlib.metadata import PackageNotFoundError, version as package_version
import logging
from pathlib import Path
import sys
from typing import Any, Iterator, Sequence

import numpy as np
import typer

from reweightpack.artifact import (
    ArtifactError,
    dump_document,
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
from reweightpack.certify import (
    C_CEILING,
    BoundParameterError,
    CertifyError,
    SetTooLargeError,
    certificate,
    check_weak_robustness,
    compute_kappa,
    estimate_kappa_grid,
    max_tail_for_p1,
    recovery_error_bound,
    strong_hits_lower_bound,
    support_error_bound,
)
from reweightpack.core.types import ALGORITHMS, AMP_LAWS, L1_ENCODINGS, OUTPUT_FORMATS
from reweightpack.lab import (
    CAMPAIGN_CSV_HEADER,
    COMPARISON_CSV_HEADER,
    WORKERS_ENV_VAR,
    LabConfig,
    LabConfigError,
    LabError,
    ThresholdCurve,
    TrialLogIntegrityError,
    compare_reweighting,
    default_delta_grid,
    default_p1_grid,
    default_rho_grid,
    estimate_delta_c,
    estimate_rho_f,
    load_rho_table,
    read_trial_log,
    run_certificate_campaign,
    sweep_figure1,
    write_trial_log,
)
from reweightpack.lp import (
    LpError,
    LpIterationLimitError,
    LpNumericalError,
    LpProblemError,
)
from reweightpack.numcore import (
    IndexOutOfRangeError,
    InvalidDimensionsError,
    InvalidSeedError,
    NonFiniteError,
    NumcoreError,
    RankDeficientError,
    as_index_set,
    sample_measurement_matrix,
)
from reweightpack.recover import RecoverError, RecoveryParameterError, UnknownAlgorithmError, run_algorithm
from reweightpack.signals import (
    InvalidCountsError,
    InvalidFractionError,
    SignalError,
    generate_block_signal,
    generate_model_signal,
    generate_nonuniform_signal,
    gaussian_sparse_signal,
)

app = typer.Typer(help="ReweightKit CLI: sparse recovery, null-space certificates and phase-transition experiments.")

logger = logging.getLogger("reweightpack")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INVALID_ARGUMENTS = 2
EXIT_NUMERICAL_FAILURE = 3

_NUMERICAL_ERRORS: tuple[type[Exception], ...] = (
    LpIterationLimitError,
    LpNumericalError,
    RankDeficientError,
)
_ARGUMENT_ERRORS: tuple[type[Exception], ...] = (
    InvalidDimensionsError,
    NonFiniteError,
    IndexOutOfRangeError,
    LpProblemError,
    InvalidSeedError,
    InvalidCountsError,
    InvalidFractionError,
    RecoveryParameterError,
    UnknownAlgorithmError,
    BoundParameterError,
    SetTooLargeError,
    LabConfigError,
    ValueError,
)
_HANDLED_ERRORS: tuple[type[Exception], ...] = (
    NumcoreError,
    LpError,
    SignalError,
    RecoverError,
    CertifyError,
    LabError,
    ArtifactError,
    FileNotFoundError,
    ValueError,
)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


@dataclass(slots=True)
class _OutputOptions:
    quiet: bool = False


_OUTPUT_OPTIONS = _OutputOptions()


def _resolve_cli_version() -> str:
    try:
        return package_version("reweightkit")
    except PackageNotFoundError:
        from reweightpack import __version__ as local_version

        return local_version


def _version_callback(value: bool) -> None:
    if not value:
        return
    typer.echo(_resolve_cli_version(), color=False)
    raise typer.Exit()


@app.callback()
def app_options(
    version: bool = typer.Option(
        False,
        "--version",
        callback=_version_callback,
        is_eager=True,
        help="Show ReweightKit version and exit.",
    ),
    quiet: bool = typer.Option(
        False,
        "--quiet",
        help="Suppress non-error text output.",
    ),
    log_level: str = typer.Option(
        "WARNING",
        "--log-level",
        help="Logging level for diagnostics on stderr (DEBUG, INFO, WARNING, ERROR).",
    ),
) -> None:
    """Global output controls for all CLI commands."""
    level = log_level.strip().upper()
    if level not in LOG_LEVELS:
        typer.echo(f"invalid --log-level '{log_level}'. Expected one of: {', '.join(LOG_LEVELS)}", err=True)
        raise typer.Exit(code=EXIT_INVALID_ARGUMENTS)
    _OUTPUT_OPTIONS.quiet = quiet
    logging.basicConfig(
        level=getattr(logging, level),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


def _echo(message: str, *, err: bool = False, force: bool = False) -> None:
    if _OUTPUT_OPTIONS.quiet and not err and not force:
        return
    typer.echo(message, err=err)


def exit_code_for(error: BaseException) -> int:
    """Exit code for an error: 3 numerical failure, 2 invalid arguments, 1 otherwise."""
    if isinstance(error, _NUMERICAL_ERRORS):
        return EXIT_NUMERICAL_FAILURE
    if isinstance(error, _ARGUMENT_ERRORS):
        return EXIT_INVALID_ARGUMENTS
    return EXIT_FAILURE


@contextmanager
def _command_errors(command: str) -> Iterator[None]:
    try:
        yield
    except _HANDLED_ERRORS as error:
        _echo(f"{command} failed: {error}", err=True)
        raise typer.Exit(code=exit_code_for(error)) from error


def _invalid(command: str, message: str) -> typer.Exit:
    _echo(f"{command} failed: {message}", err=True)
    return typer.Exit(code=EXIT_INVALID_ARGUMENTS)


def _check_format(command: str, output_format: str) -> str:
    normalized = output_format.strip().lower()
    if normalized not in OUTPUT_FORMATS:
        raise _invalid(command, f"unsupported --format '{output_format}'. Expected one of: {', '.join(OUTPUT_FORMATS)}")
    return normalized


def _parse_float_list(command: str, option: str, raw: str | None, default: Sequence[float]) -> list[float]:
    if raw is None or not raw.strip():
        return list(default)
    try:
        return [float(token) for token in raw.split(",") if token.strip()]
    except ValueError as error:
        raise _invalid(command, f"{option} must be a comma-separated list of numbers") from error


def _parse_index_list(command: str, raw: str) -> list[int]:
    try:
        return [int(token) for token in raw.replace(" ", ",").split(",") if token.strip()]
    except ValueError as error:
        raise _invalid(command, "--K must be a comma-separated list of 0-based indices") from error


def _emit(
    *,
    kind: str,
    payload: dict[str, Any],
    output_format: str,
    out: Path | None,
    csv_header: Sequence[str],
    csv_rows: Sequence[Sequence[Any]],
    comments: dict[str, Any] | None = None,
) -> None:
    if output_format == "json":
        if out is None:
            typer.echo(dump_document(kind, payload), nl=False)
            return
        write_document(kind, payload, out)
    else:
        if out is None:
            typer.echo(render_csv(csv_header, csv_rows, comments=comments), nl=False)
            return
        write_csv(out, csv_header, csv_rows, comments=comments)
    _echo(f"wrote {kind}: {out}")


def _lab_config(
    *,
    workers: int,
    timing: bool = True,
    encoding: str = "split",
    **overrides: Any,
) -> LabConfig:
    return LabConfig.from_env(
        workers=workers,
        timing=timing,
        encoding=encoding,
        **{key: value for key, value in overrides.items() if value is not None},
    )


def _write_records(trial_log: Path | None, records: Sequence[Any]) -> None:
    if trial_log is None:
        return
    write_trial_log(trial_log, records)
    _echo(f"wrote trial log: {trial_log}")


_WORKERS_OPTION = typer.Option(
    1,
    "--workers",
    envvar=WORKERS_ENV_VAR,
    help=f"Worker processes for independent trials. Can also be set via {WORKERS_ENV_VAR}.",
)
_FORMAT_OPTION = typer.Option("json", "--format", help="Output format: csv or json.")
_OUT_OPTION = typer.Option(None, "--out", help="Output path (stdout when omitted).")
_SEED_OPTION = typer.Option(0, "--seed", min=0, help="Master seed.")


@app.command("gen-matrix")
def gen_matrix(
    m: int = typer.Option(..., "--m", help="Number of measurements (rows)."),
    n: int = typer.Option(..., "--n", help="Signal length (columns)."),
    seed: int = _SEED_OPTION,
    out: Path | None = _OUT_OPTION,
    output_format: str = typer.Option("csv", "--format", help="Output format: csv or json."),
) -> None:
    """Sample an m x n i.i.d. N(0, 1) measurement matrix."""
    output_format = _check_format("gen-matrix", output_format)
    with _command_errors("gen-matrix"):
        sampled = sample_measurement_matrix(m, n, seed)
        if output_format == "csv" and out is not None:
            write_matrix(out, sampled.matrix, sampled.metadata())
            _echo(f"wrote matrix: {out} (metadata {sidecar_path(out)})")
            return
        _emit(
            kind="matrix",
            payload={**sampled.metadata(), "entries": sampled.matrix.tolist()},
            output_format=output_format,
            out=out,
            csv_header=[f"c{j}" for j in range(n)],
            csv_rows=sampled.matrix.tolist(),
        )


@app.command("gen-signal")
def gen_signal(
    n: int = typer.Option(..., "--n", help="Signal length."),
    model: str = typer.Option(
        "two-part",
        "--model",
        help="Signal model: two-part, sparse, nonuniform or block.",
    ),
    k_strong: int = typer.Option(0, "--k-strong", help="Strong entries (two-part) or sparsity k (sparse)."),
    k_total: int | None = typer.Option(None, "--k-total", help="Total nonzeros (two-part); defaults to --k-strong."),
    a1: float = typer.Option(1.0, "--a1", help="Amplitude floor of strong entries."),
    tail_mass: float = typer.Option(0.0, "--tail-mass", help="l1 mass of the tail off the strong set."),
    gamma1: float = typer.Option(0.1, "--gamma1", help="Class-1 fraction (nonuniform)."),
    p1: float = typer.Option(1.0, "--p1", help="Nonzero probability on class 1 / the block."),
    p2: float = typer.Option(0.0, "--p2", help="Nonzero probability on class 2 / off the block."),
    block_size: int = typer.Option(0, "--block-size", help="Block size (block model)."),
    amp_law: str = typer.Option("gaussian", "--amp-law", help="Amplitude law: gaussian or flat."),
    seed: int = _SEED_OPTION,
    out: Path | None = _OUT_OPTION,
    output_format: str = typer.Option("csv", "--format", help="Output format: csv or json."),
) -> None:
    """Generate a seeded signal with the metadata later bound checks need."""
    output_format = _check_format("gen-signal", output_format)
    if amp_law not in AMP_LAWS:
        raise _invalid("gen-signal", f"unsupported --amp-law '{amp_law}'")
    with _command_errors("gen-signal"):
        if model == "two-part":
            signal = generate_model_signal(n, k_strong, a1, tail_mass, k_total if k_total is not None else k_strong, seed)
            x, metadata = signal.x, signal.metadata()
        elif model == "sparse":
            signal = gaussian_sparse_signal(n, k_strong, seed, amp_law=amp_law)  # type: ignore[arg-type]
            x, metadata = signal.x, signal.metadata()
        elif model == "block":
            signal = generate_block_signal(n, block_size, p1, p2, a1, tail_mass, seed)
            x, metadata = signal.x, signal.metadata()
        elif model == "nonuniform":
            nonuniform = generate_nonuniform_signal(n, gamma1, p1, p2, amp_law, seed)  # type: ignore[arg-type]
            x, metadata = nonuniform.x, nonuniform.metadata()
        else:
            raise _invalid("gen-signal", f"unsupported --model '{model}'")
        metadata = {**metadata, "model": model}

        if output_format == "csv" and out is not None:
            write_vector(out, x, kind="signal", metadata=metadata)
            _echo(f"wrote signal: {out} (metadata {sidecar_path(out)})")
            return
        _emit(
            kind="signal",
            payload={**metadata, "x": x.tolist()},
            output_format=output_format,
            out=out,
            csv_header=("index", "value"),
            csv_rows=list(enumerate(x.tolist())),
        )


@app.command()
def solve(
    matrix: Path = typer.Option(..., "--matrix", help="Measurement matrix CSV."),
    signal: Path | None = typer.Option(None, "--signal", help="True signal CSV; measurements are A x."),
    measurements: Path | None = typer.Option(None, "--y", help="Measurement vector CSV (index,value)."),
    algo: str = typer.Option("l1", "--algo", help="Algorithm: l1, candes, modified or weighted."),
    weights: Path | None = typer.Option(None, "--weights", help="Weight vector CSV for weighted l1."),
    eps_prime: float = typer.Option(0.1, "--eps-prime", help="Reweighting offset for candes."),
    t_max: int = typer.Option(4, "--t-max", help="Reweighting iterations for candes."),
    k_strong: int | None = typer.Option(None, "--k-strong", help="Block size for modified; defaults to |K| of the signal."),
    weight: float = typer.Option(10.0, "--W", "--weight", help="Off-block weight for modified."),
    encoding: str = typer.Option("split", "--encoding", help="l1 LP encoding: split or epigraph."),
    success_tol: float = typer.Option(1e-4, "--success-tol", help="Relative l2 error counted as recovery."),
    out: Path | None = _OUT_OPTION,
    output_format: str = _FORMAT_OPTION,
) -> None:
    """Recover a signal from y = A x with one of the recovery algorithms."""
    output_format = _check_format("solve", output_format)
    if algo not in ALGORITHMS:
        raise _invalid("solve", f"unsupported --algo '{algo}'. Expected one of: {', '.join(ALGORITHMS)}")
    if encoding not in L1_ENCODINGS:
        raise _invalid("solve", f"unsupported --encoding '{encoding}'")
    if (signal is None) == (measurements is None):
        raise _invalid("solve", "pass exactly one of --signal or --y")

    with _command_errors("solve"):
        a, _ = read_matrix(matrix)
        x_true: np.ndarray | None = None
        signal_metadata: dict[str, Any] = {}
        if signal is not None:
            x_true, signal_metadata = read_signal(signal)
            y = a @ x_true
        else:
            y = read_vector(measurements)  # type: ignore[arg-type]
        weight_values = read_vector(weights) if weights is not None else None
        if weight_values is not None and algo == "l1":
            algo = "weighted"
        if algo == "modified" and k_strong is None:
            if "K" not in signal_metadata:
                raise _invalid("solve", "--algo modified needs --k-strong or a signal with K metadata")
            k_strong = len(signal_metadata["K"])

        result = run_algorithm(
            algo,  # type: ignore[arg-type]
            a,
            y,
            weights=weight_values,
            eps_prime=eps_prime,
            t_max=t_max,
            k_strong=k_strong,
            W=weight,
            encoding=encoding,  # type: ignore[arg-type]
        )
        payload = result.to_dict()
        if x_true is not None:
            rel_error = result.relative_l2_error(x_true)
            payload.update(
                rel_l2_error=rel_error,
                l1_error=result.l1_error(x_true),
                success=rel_error <= success_tol,
            )
        _emit(
            kind="solve",
            payload=payload,
            output_format=output_format,
            out=out,
            csv_header=("index", "value"),
            csv_rows=list(enumerate(result.estimate.tolist())),
        )


def _resolve_set(command: str, raw_set: str | None, signal_metadata: dict[str, Any], n: int) -> tuple[int, ...]:
    if raw_set is not None:
        return as_index_set(_parse_index_list(command, raw_set), n)
    if "K" in signal_metadata:
        return as_index_set(signal_metadata["K"], n)
    raise _invalid(command, "pass --K or a --signal whose metadata records K")


@app.command()
def kappa(
    matrix: Path = typer.Option(..., "--matrix", help="Measurement matrix CSV."),
    index_set: str | None = typer.Option(None, "--K", help="Comma-separated 0-based index set."),
    signal: Path | None = typer.Option(None, "--signal", help="Signal CSV whose metadata supplies K."),
    grid_points: int = typer.Option(0, "--grid-points", help="Also report a null-sphere grid estimate with this many points."),
    seed: int = _SEED_OPTION,
    out: Path | None = _OUT_OPTION,
    output_format: str = _FORMAT_OPTION,
) -> None:
    """Exact kappa = max ||w_K||_1 / ||w_Kbar||_1 over the null space of A."""
    output_format = _check_format("kappa", output_format)
    with _command_errors("kappa"):
        a, _ = read_matrix(matrix)
        metadata = read_signal(signal)[1] if signal is not None else {}
        strong = _resolve_set("kappa", index_set, metadata, a.shape[1])
        value = compute_kappa(a, strong)
        payload: dict[str, Any] = {"K": list(strong), "kappa": value, "method": "exact-enumeration"}
        if grid_points > 0:
            payload["kappa_grid"] = estimate_kappa_grid(a, strong, grid_points, seed=seed)
        _emit(
            kind="kappa",
            payload=payload,
            output_format=output_format,
            out=out,
            csv_header=("K", "kappa"),
            csv_rows=[(" ".join(str(i) for i in strong), value)],
        )


@app.command()
def robustness(
    matrix: Path = typer.Option(..., "--matrix", help="Measurement matrix CSV."),
    signal: Path = typer.Option(..., "--signal", help="Signal CSV; x_K is read from it."),
    index_set: str | None = typer.Option(None, "--K", help="Comma-separated 0-based index set (defaults to signal K)."),
    constant: float | None = typer.Option(None, "--C", help="Check the inequality at this C > 1."),
    find_c: bool = typer.Option(False, "--find-C", help="Bisect for the largest C that holds."),
    p1_target: float = typer.Option(0.9, "--p1-target", help="P1 level for the largest tolerable tail mass."),
    out: Path | None = _OUT_OPTION,
    output_format: str = _FORMAT_OPTION,
) -> None:
    """Weak-robustness check at a given C, or the best C with kappa and bounds."""
    output_format = _check_format("robustness", output_format)
    if (constant is None) == (not find_c):
        raise _invalid("robustness", "pass exactly one of --C or --find-C")

    with _command_errors("robustness"):
        a, _ = read_matrix(matrix)
        x, metadata = read_signal(signal)
        strong = _resolve_set("robustness", index_set, metadata, a.shape[1])
        x_strong = x[list(strong)]
        if constant is not None:
            check = check_weak_robustness(a, strong, x_strong, constant)
            payload: dict[str, Any] = {"K": list(strong), **check.to_dict()}
        else:
            cert = certificate(a, strong, x_strong)
            payload = {
                **cert.to_dict(),
                "C": cert.best_C,
                "holds": cert.certified,
            }
            if cert.certified and "a1" in metadata and "delta" in metadata:
                bound_c = min(cert.best_C, C_CEILING)
                weak_mass = float(np.sum(np.abs(np.delete(x, list(strong)))))
                payload["support_bound"] = support_error_bound(
                    bound_c, cert.kappa, metadata["a1"], metadata["delta"]
                ).to_dict()
                payload["recovery_bound"] = recovery_error_bound(bound_c, cert.kappa, weak_mass)
                payload["strong_hits_bound"] = strong_hits_lower_bound(
                    len(strong), bound_c, cert.kappa, metadata["a1"], metadata["delta"]
                )
                m, n = a.shape
                if 0 < len(strong) <= m:
                    # rho_F delta_m n is the size of K
                    payload["max_tail_for_p1"] = max_tail_for_p1(
                        p1_target, bound_c, cert.kappa, metadata["a1"], len(strong) / m, m / n, n
                    )
        _emit(
            kind="robustness",
            payload=payload,
            output_format=output_format,
            out=out,
            csv_header=("K", "C", "holds", "margin"),
            csv_rows=[(" ".join(str(i) for i in strong), payload["C"], payload["holds"], payload["margin"])],
        )


def _emit_curve(curve: ThresholdCurve, *, output_format: str, out: Path | None) -> None:
    _emit(
        kind="curve",
        payload=curve.to_dict(),
        output_format=output_format,
        out=out,
        csv_header=curve.csv_header(),
        csv_rows=curve.csv_rows(),
    )


@app.command("phase-rho")
def phase_rho(
    delta: float = typer.Option(0.555, "--delta", help="Undersampling ratio m/n."),
    n: int = typer.Option(200, "--n", help="Signal length."),
    trials: int = typer.Option(100, "--trials", help="Trials per grid point."),
    rho_grid: str | None = typer.Option(None, "--rho-grid", help="Comma-separated rho values in (0, 1]."),
    grid_points: int = typer.Option(11, "--grid-points", help="Default grid size when --rho-grid is omitted."),
    seed: int = _SEED_OPTION,
    workers: int = _WORKERS_OPTION,
    trial_log: Path | None = typer.Option(None, "--trial-log", help="Also write the per-trial CSV log."),
    out: Path | None = _OUT_OPTION,
    output_format: str = _FORMAT_OPTION,
) -> None:
    """Estimate the plain-l1 weak threshold rho_F(delta) empirically."""
    output_format = _check_format("phase-rho", output_format)
    grid = _parse_float_list("phase-rho", "--rho-grid", rho_grid, default_rho_grid(grid_points))
    with _command_errors("phase-rho"):
        config = _lab_config(workers=workers, trials_per_point=trials, n=n, grid_points=grid_points)
        curve = estimate_rho_f(delta, n, trials, grid, seed, config=config)
        _write_records(trial_log, curve.records)
        _emit_curve(curve, output_format=output_format, out=out)


@app.command("phase-delta-c")
def phase_delta_c(
    gamma1: float = typer.Option(..., "--gamma1", help="Fraction of indices in class 1."),
    p1: float = typer.Option(..., "--p1", help="Nonzero probability on class 1."),
    p2: float = typer.Option(..., "--p2", help="Nonzero probability on class 2."),
    weight_ratio: float = typer.Option(1.0, "--weight-ratio", help="Weight on class 2 relative to class 1."),
    n: int = typer.Option(200, "--n", help="Signal length."),
    trials: int = typer.Option(100, "--trials", help="Trials per grid point."),
    delta_grid: str | None = typer.Option(None, "--delta-grid", help="Comma-separated delta values."),
    grid_points: int = typer.Option(11, "--grid-points", help="Default grid size when --delta-grid is omitted."),
    amp_law: str = typer.Option("gaussian", "--amp-law", help="Amplitude law: gaussian or flat."),
    seed: int = _SEED_OPTION,
    workers: int = _WORKERS_OPTION,
    trial_log: Path | None = typer.Option(None, "--trial-log", help="Also write the per-trial CSV log."),
    out: Path | None = _OUT_OPTION,
    output_format: str = _FORMAT_OPTION,
) -> None:
    """Estimate the critical undersampling ratio delta_c of weighted l1 on the two-class model."""
    output_format = _check_format("phase-delta-c", output_format)
    if amp_law not in AMP_LAWS:
        raise _invalid("phase-delta-c", f"unsupported --amp-law '{amp_law}'")
    grid = _parse_float_list("phase-delta-c", "--delta-grid", delta_grid, default_delta_grid(grid_points))
    with _command_errors("phase-delta-c"):
        config = _lab_config(workers=workers, trials_per_point=trials, n=n, grid_points=grid_points)
        curve = estimate_delta_c(
            gamma1, p1, p2, weight_ratio, n, trials, grid, seed, amp_law=amp_law, config=config
        )
        _write_records(trial_log, curve.records)
        _emit_curve(curve, output_format=output_format, out=out)


@app.command("sweep-fig1")
def sweep_fig1(
    delta: float = typer.Option(0.555, "--delta", help="Undersampling ratio m/n."),
    eps: float = typer.Option(0.01, "--eps", help="Block shrink factor: k_strong = (1 - eps) rho_F delta n."),
    weight: float = typer.Option(10.0, "--W", "--weight", help="Off-block weight of the second stage."),
    p1_grid: str | None = typer.Option(None, "--p1-grid", help="Comma-separated P1 values."),
    grid_points: int = typer.Option(11, "--grid-points", help="Default grid size when --p1-grid is omitted."),
    n: int = typer.Option(200, "--n", help="Signal length."),
    trials: int = typer.Option(100, "--trials", help="Trials per evaluated (P1, P2) pair."),
    a1: float = typer.Option(1.0, "--a1", help="Amplitude floor of block entries."),
    tail_mass: float = typer.Option(0.1, "--tail-mass", help="l1 mass shared by entries off the block."),
    p2_steps: int = typer.Option(8, "--p2-steps", help="Bisection steps over P2."),
    rho_table: Path | None = typer.Option(None, "--rho-table", help="CSV (delta,rho_f) overriding the empirical rho_F."),
    seed: int = _SEED_OPTION,
    workers: int = _WORKERS_OPTION,
    trial_log: Path | None = typer.Option(None, "--trial-log", help="Also write the per-trial CSV log."),
    out: Path | None = _OUT_OPTION,
    output_format: str = _FORMAT_OPTION,
) -> None:
    """Recoverable average sparsity of two-stage reweighting against the plain-l1 baseline."""
    output_format = _check_format("sweep-fig1", output_format)
    grid = _parse_float_list("sweep-fig1", "--p1-grid", p1_grid, default_p1_grid(grid_points))
    with _command_errors("sweep-fig1"):
        config = _lab_config(
            workers=workers,
            trials_per_point=trials,
            n=n,
            grid_points=grid_points,
            W=weight,
            eps=eps,
            a1=a1,
            tail_mass=tail_mass,
            p2_bisection_steps=p2_steps,
        )
        rho_f = load_rho_table(rho_table).lookup(delta) if rho_table is not None else None
        curve = sweep_figure1(delta, eps, weight, grid, n, trials, seed, rho_f=rho_f, config=config)
        _write_records(trial_log, curve.records)
        metadata = curve.metadata
        _emit(
            kind="sweep",
            payload={
                "config": metadata,
                "baseline": {
                    "rho_f": metadata["rho_f"],
                    "zeta": metadata["zeta"],
                    "zeta_ci": [metadata["zeta_ci_low"], metadata["zeta_ci_high"]],
                },
                "points": [point.to_dict() for point in curve.points],
            },
            output_format=output_format,
            out=out,
            csv_header=curve.csv_header(),
            csv_rows=curve.csv_rows(),
            comments=metadata,
        )


@app.command("certify-campaign")
def certify_campaign(
    n: int = typer.Option(40, "--n", help="Signal length."),
    m: int = typer.Option(24, "--m", help="Number of measurements."),
    instances: int = typer.Option(200, "--instances", "--trials", help="Number of random instances."),
    k_strong: int = typer.Option(6, "--k-strong", help="Size of the strong set K (at most 16)."),
    k_total: int = typer.Option(12, "--k-total", help="Total nonzeros per signal."),
    a1: float = typer.Option(1.0, "--a1", help="Amplitude floor of strong entries."),
    tail_mass: float = typer.Option(0.05, "--tail-mass", help="l1 mass of the tail."),
    weight: float = typer.Option(10.0, "--W", "--weight", help="Off-block weight of the second stage."),
    seed: int = _SEED_OPTION,
    workers: int = _WORKERS_OPTION,
    out: Path | None = _OUT_OPTION,
    output_format: str = _FORMAT_OPTION,
) -> None:
    """Certify random instances and count support and error-chain bound violations."""
    output_format = _check_format("certify-campaign", output_format)
    with _command_errors("certify-campaign"):
        config = _lab_config(workers=workers, W=weight)
        result = run_certificate_campaign(
            n, m, instances, k_strong, k_total, a1, tail_mass, seed, W=weight, config=config
        )
        _emit(
            kind="campaign",
            payload=result.to_dict(),
            output_format=output_format,
            out=out,
            csv_header=CAMPAIGN_CSV_HEADER,
            csv_rows=result.csv_rows(),
        )
    summary = result.summary()
    _echo(
        f"certified {summary['certified']}/{summary['instances']} instances, "
        f"{summary['violations']} bound violation(s)",
        err=True,
    )
    if result.violation_count:
        raise typer.Exit(code=EXIT_FAILURE)


@app.command("compare-reweighting")
def compare_reweighting_cmd(
    n: int = typer.Option(40, "--n", help="Signal length."),
    m: int = typer.Option(22, "--m", help="Number of measurements."),
    k: int = typer.Option(9, "--k", help="Signal sparsity."),
    eps_prime: float = typer.Option(0.1, "--eps-prime", help="Reweighting offset."),
    t_max: int = typer.Option(4, "--t-max", help="Reweighting iterations."),
    trials: int = typer.Option(50, "--trials", help="Paired trials per amplitude law."),
    seed: int = _SEED_OPTION,
    workers: int = _WORKERS_OPTION,
    trial_log: Path | None = typer.Option(None, "--trial-log", help="Also write the per-trial CSV log."),
    out: Path | None = _OUT_OPTION,
    output_format: str = _FORMAT_OPTION,
) -> None:
    """Paired comparison of plain l1 and iterative reweighting for Gaussian and flat amplitudes."""
    output_format = _check_format("compare-reweighting", output_format)
    with _command_errors("compare-reweighting"):
        config = _lab_config(workers=workers)
        result = compare_reweighting(n, m, k, eps_prime, t_max, trials, seed, config=config)
        _write_records(trial_log, result.records)
        _emit(
            kind="comparison",
            payload=result.to_dict(),
            output_format=output_format,
            out=out,
            csv_header=COMPARISON_CSV_HEADER,
            csv_rows=result.csv_rows(),
        )


@app.command("verify-trials")
def verify_trials(
    path: Path = typer.Argument(..., help="Trial log CSV to verify."),
    success_tol: float = typer.Option(1e-4, "--success-tol", help="Relative l2 error counted as recovery."),
    json_output: bool = typer.Option(False, "--json", help="Emit a machine-readable verification document."),
) -> None:
    """Recompute every trial's success flag from its stored error."""
    try:
        records = read_trial_log(path, success_tol=success_tol)
    except TrialLogIntegrityError as error:
        _echo(f"verify-trials failed: {error}", err=True)
        raise typer.Exit(code=EXIT_FAILURE) from error
    except (ArtifactError, FileNotFoundError, ValueError) as error:
        _echo(f"verify-trials failed: {error}", err=True)
        raise typer.Exit(code=EXIT_INVALID_ARGUMENTS) from error

    successes = sum(1 for record in records if record.success)
    if json_output:
        typer.echo(
            dump_document(
                "trial-verification",
                {"path": str(path), "records": len(records), "successes": successes, "verified": True},
            ),
            nl=False,
        )
        return
    _echo(f"verified {len(records)} trial(s), {successes} success(es): {path}")


def main() -> None:
    app()
