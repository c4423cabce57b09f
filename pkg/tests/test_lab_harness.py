from pathlib import Path

import pytest

from reweightpack.artifact import read_csv, render_csv, write_csv
from reweightpack.lab import (
    CAMPAIGN_CSV_HEADER,
    COMPARISON_CSV_HEADER,
    RHO_TABLE_HEADER,
    TRIAL_LOG_HEADER,
    WORKERS_ENV_VAR,
    LabConfig,
    LabConfigError,
    RhoTable,
    SignalSpec,
    TrialLogIntegrityError,
    TrialSpec,
    compare_reweighting,
    estimate_delta_c,
    estimate_rho_f,
    execute_trial,
    load_rho_table,
    measurements_for,
    read_trial_log,
    run_certificate_campaign,
    run_trials,
    sweep_figure1,
    write_trial_log,
)


def _sparse_spec(trial_id: int, seed: int, *, k: int = 2, algorithm: str = "l1") -> TrialSpec:
    return TrialSpec(
        trial_id=trial_id,
        seed=seed,
        algorithm=algorithm,  # type: ignore[arg-type]
        n=20,
        m=10,
        signal=SignalSpec(kind="sparse", k=k),
        timing=False,
    )


def test_lab_config_reads_workers_from_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv(WORKERS_ENV_VAR, "3")
    assert LabConfig.from_env().workers == 3
    assert LabConfig.from_env(workers=1).workers == 1

    monkeypatch.setenv(WORKERS_ENV_VAR, "many")
    with pytest.raises(LabConfigError):
        LabConfig.from_env()


def test_lab_config_validates_and_overrides() -> None:
    config = LabConfig()
    assert config.tail_mass == 0.1
    assert config.with_overrides(W=4.0, eps=None).W == 4.0
    assert config.with_overrides(eps=None).eps == config.eps
    assert "workers" not in config.to_dict()
    with pytest.raises(LabConfigError):
        LabConfig(W=0.5)
    with pytest.raises(LabConfigError):
        LabConfig(encoding="dual")  # type: ignore[arg-type]


def test_measurements_for_rounds_and_validates() -> None:
    assert measurements_for(0.555, 200) == 111
    with pytest.raises(LabConfigError):
        measurements_for(0.001, 100)
    with pytest.raises(LabConfigError):
        measurements_for(1.0, 100)


def test_trial_is_deterministic_and_scored() -> None:
    first = execute_trial(_sparse_spec(0, seed=17))
    second = execute_trial(_sparse_spec(0, seed=17))

    assert first == second
    assert first.runtime_ms == 0.0
    assert first.delta == 0.5
    assert first.k_total == 2
    assert first.success == (first.rel_l2_error <= 1e-4)
    assert first.W == 1.0


def test_nonuniform_trial_records_class_one_nonzeros() -> None:
    spec = TrialSpec(
        trial_id=0,
        seed=3,
        algorithm="weighted",
        n=30,
        m=20,
        signal=SignalSpec(kind="nonuniform", gamma1=0.2, p1=1.0, p2=0.0),
        W=2.0,
        timing=False,
    )
    record = execute_trial(spec)

    assert record.k_strong == 6
    assert record.k_total == 6
    assert record.W == 2.0
    assert record.tail_mass == 0.0


@pytest.mark.parametrize("seed", range(4))
def test_weighted_trial_with_unit_ratio_matches_plain_l1(seed: int) -> None:
    def spec(algorithm: str) -> TrialSpec:
        return TrialSpec(
            trial_id=0,
            seed=seed,
            algorithm=algorithm,  # type: ignore[arg-type]
            n=30,
            m=12,
            signal=SignalSpec(kind="nonuniform", gamma1=0.2, p1=0.6, p2=0.1),
            W=1.0,
            timing=False,
        )

    weighted = execute_trial(spec("weighted"))
    plain = execute_trial(spec("l1"))

    assert weighted.success == plain.success
    assert weighted.k_total == plain.k_total
    assert weighted.l1_error == pytest.approx(plain.l1_error, abs=1e-7)


def test_run_trials_sorts_by_trial_id_and_matches_across_workers() -> None:
    specs = [_sparse_spec(trial_id, seed=100 + trial_id) for trial_id in (3, 1, 2, 0)]

    serial = run_trials(specs, workers=1)
    parallel = run_trials(specs, workers=2)

    assert [record.trial_id for record in serial] == [0, 1, 2, 3]
    assert serial == parallel


def test_trial_log_round_trip_and_integrity(tmp_path: Path) -> None:
    records = run_trials([_sparse_spec(i, seed=i) for i in range(3)])
    log_path = tmp_path / "trials.csv"
    write_trial_log(log_path, records)

    header, rows, _ = read_csv(log_path)
    assert tuple(header) == TRIAL_LOG_HEADER
    assert read_trial_log(log_path) == records

    tampered = [list(row) for row in rows]
    tampered[0][header.index("success")] = "false" if tampered[0][header.index("success")] == "true" else "true"
    write_csv(log_path, header, tampered)
    with pytest.raises(TrialLogIntegrityError):
        read_trial_log(log_path)


def test_rho_table_interpolates_and_loads(tmp_path: Path) -> None:
    table_path = tmp_path / "rho.csv"
    write_csv(table_path, RHO_TABLE_HEADER, [(0.6, 0.4), (0.5, 0.3)])
    table = load_rho_table(table_path)

    assert table.deltas == (0.5, 0.6)
    assert table.lookup(0.55) == pytest.approx(0.35)
    with pytest.raises(LabConfigError):
        table.lookup(0.7)
    with pytest.raises(LabConfigError):
        RhoTable(deltas=(0.5,), rhos=(1.5,))


def test_estimate_rho_f_small_grid() -> None:
    config = LabConfig(n=30, trials_per_point=6, timing=False)
    curve = estimate_rho_f(0.5, 30, 6, [0.1, 0.5, 0.9], seed=1, config=config)

    assert curve.axis_name == "rho"
    assert [point.n_trials for point in curve.points] == [6, 6, 6]
    assert curve.points[0].p_success == 1.0
    assert curve.points[-1].p_success == 0.0
    assert curve.threshold is not None
    assert curve.metadata["zeta"] == pytest.approx(curve.threshold * 0.5)
    assert len(curve.records) == 18


def test_estimate_rho_f_rejects_bad_grid() -> None:
    with pytest.raises(LabConfigError):
        estimate_rho_f(0.5, 30, 2, [0.0, 0.5], seed=0)


def test_estimate_delta_c_small_grid() -> None:
    config = LabConfig(n=30, trials_per_point=4, timing=False)
    curve = estimate_delta_c(0.2, 0.5, 0.05, 1.0, 30, 4, [0.1, 0.9], seed=2, config=config)

    assert curve.axis_name == "delta"
    assert curve.metadata["expected_nonzeros"] == pytest.approx(4.2)
    assert curve.points[0].p_success <= curve.points[1].p_success
    assert all(record.algorithm == "weighted" for record in curve.records)


def test_known_support_class_lowers_critical_delta() -> None:
    config = LabConfig(n=40, trials_per_point=12, timing=False)
    # both models average four nonzeros; only the first puts them all in class 1
    easy = estimate_delta_c(0.1, 1.0, 0.0, 10.0, 40, 12, [0.2], seed=3, config=config)
    uniform = estimate_delta_c(0.1, 0.1, 0.1, 1.0, 40, 12, [0.2], seed=3, config=config)

    assert easy.points[0].p_success >= 0.9
    assert uniform.points[0].p_success < easy.points[0].p_success


def test_sweep_reports_p2_threshold_and_sparsity_factor() -> None:
    config = LabConfig(n=30, trials_per_point=3, p2_bisection_steps=2, timing=False)
    curve = sweep_figure1(0.5, 0.1, 10.0, [0.5, 1.0], 30, 3, seed=4, rho_f=0.5, config=config)

    metadata = curve.metadata
    assert metadata["k_strong"] == 6
    assert metadata["rho_f_source"] == "table"
    assert metadata["zeta"] == pytest.approx(0.25)
    assert curve.csv_header()[-4:] == ("p2", "sparsity_factor", "sparsity_ci_low", "sparsity_ci_high")
    gamma1 = metadata["gamma1"]
    for point in curve.points:
        p2 = point.extras["p2"]
        assert 0.0 <= p2 <= 0.5
        assert point.extras["sparsity_factor"] == pytest.approx(point.axis * gamma1 + p2 * (1.0 - gamma1))
        assert point.extras["sparsity_ci_low"] <= point.extras["sparsity_factor"] <= point.extras["sparsity_ci_high"]
    assert all(record.algorithm == "modified" for record in curve.records)


def test_sweep_requires_positive_tail_mass() -> None:
    config = LabConfig(n=30, trials_per_point=2, tail_mass=0.0)
    with pytest.raises(LabConfigError):
        sweep_figure1(0.5, 0.1, 10.0, [1.0], 30, 2, seed=0, rho_f=0.5, config=config)


def test_certificate_campaign_has_no_violations() -> None:
    result = run_certificate_campaign(20, 12, 4, 2, 4, 1.0, 0.05, seed=3)

    summary = result.summary()
    assert summary["instances"] == 4
    assert summary["violations"] == 0
    assert summary["certified"] + summary["not_certified"] == 4
    rows = result.csv_rows()
    assert len(rows[0]) == len(CAMPAIGN_CSV_HEADER)
    for instance in result.instances:
        if instance.certified:
            assert instance.support_bound is not None
            assert instance.false_selections <= instance.support_bound + 1e-6
        else:
            assert instance.support_bound is None


def test_campaign_records_sparsity_factors_within_their_bounds() -> None:
    result = run_certificate_campaign(30, 18, 4, 3, 6, 1.0, 0.02, seed=11)

    for instance in result.instances:
        block = len(instance.selected_set)
        assert instance.strong_hits + instance.false_selections == block
        assert instance.p1 == pytest.approx(instance.strong_hits / block)
        assert instance.p2 == pytest.approx((6 - instance.strong_hits) / (30 - block))
        if instance.p1_bound is not None:
            assert instance.p1 >= instance.p1_bound - 1e-6
        if instance.p2_bound is not None:
            assert instance.p2 <= instance.p2_bound + 1e-6
        if not instance.certified:
            assert instance.p1_bound is None and instance.p2_bound is None
    document = result.to_dict()
    assert {"p1", "p2", "p1_bound", "p2_bound", "strong_hits"} <= set(document["instances"][0])


def test_compare_reweighting_counts_are_consistent() -> None:
    config = LabConfig(timing=False)
    result = compare_reweighting(20, 10, 3, 0.1, 2, 3, seed=5, config=config)

    assert [outcome.amp_law for outcome in result.outcomes] == ["gaussian", "flat"]
    for outcome in result.outcomes:
        assert outcome.both + outcome.only_l1 == outcome.l1_successes
        assert outcome.both + outcome.only_candes == outcome.candes_successes
    assert len(result.csv_rows()) == 4
    assert render_csv(COMPARISON_CSV_HEADER, result.csv_rows()).startswith("amp_law,algo,")
    paired = result.records
    assert len(paired) == 12
    assert all(paired[i].seed == paired[i + 1].seed for i in range(0, 12, 2))


def test_compare_reweighting_rejects_unknown_law() -> None:
    with pytest.raises(LabConfigError):
        compare_reweighting(20, 10, 3, 0.1, 2, 1, seed=0, amp_laws=("laplace",))  # type: ignore[arg-type]
