"""Experiment sweeps, table emission, CSV ingestion, and test oracles."""

import types

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import planted_line
from robustmean import (
    ExperimentSpec,
    MomentBound,
    SizeLimitError,
    TraceInvariantError,
    brute_force_l0,
    calibrate_sigma,
    gen_setting_b,
    ingest_csv,
    recovery_error,
    run_experiment,
    sample_mean,
    save_csv,
)
from robustmean import harness
from robustmean.harness import (
    RESULT_HEADER,
    has_failures,
    parse_config,
    render_csv,
    render_json,
    write_results,
)


def _spec(**overrides):
    base = dict(
        setting="B", d=3, n=12, alphas=(0.2,), trials=3,
        methods=("mean", "cmedian"), seed=0,
    )
    base.update(overrides)
    return ExperimentSpec(**base)


# ---------------------------------------------------------------------------
# run_experiment
# ---------------------------------------------------------------------------

def test_clean_data_sample_mean_has_zero_error():
    rows = run_experiment(_spec(alphas=(0.0,), methods=("mean",)))
    # with no corruption the oracle mean IS the sample mean
    assert len(rows) == 4  # 3 trials + aggregate
    assert all(r.recovery_error == 0.0 for r in rows)
    assert rows[-1].trial == "mean"


def test_rows_ordered_method_alpha_trial_with_trailing_aggregate():
    rows = run_experiment(_spec(alphas=(0.1, 0.2), methods=("lp", "mean")))
    keys = [(r.method, r.alpha, r.trial) for r in rows]
    expected = []
    for method in ("mean", "lp"):  # canonical method order, not spec order
        for alpha in (0.1, 0.2):
            expected.extend((method, alpha, t) for t in range(3))
            expected.append((method, alpha, "mean"))
    assert keys == expected


def test_trial_rows_reproduce_manual_runs():
    # every (method, alpha, trial) cell regenerates the dataset from
    # seed + trial, so all methods score against identical samples
    spec = _spec(seed=31)
    rows = run_experiment(spec)
    by_key = {(r.method, r.trial): r for r in rows if r.trial != "mean"}
    for trial in range(3):
        ds = gen_setting_b(3, 12, 0.2, seed=31 + trial)
        expected = recovery_error(sample_mean(ds.data), ds)
        assert by_key[("mean", trial)].recovery_error == expected


def test_aggregate_row_is_exact_arithmetic_mean():
    rows = run_experiment(_spec(methods=("cmedian",)))
    trial_rows = [r for r in rows if r.trial != "mean"]
    agg = rows[-1]
    assert agg.recovery_error == sum(r.recovery_error for r in trial_rows) / 3
    assert agg.outer_iterations == 0.0
    assert agg.wall_time_ms == 0.0  # timing capture is off by default


def test_method_failure_yields_nan_row_and_warning():
    # sigma = -1 passes the spec check but fails budget construction, so
    # the l1 cells must degrade to the nan flag instead of aborting
    spec = _spec(methods=("l1",), sigma=-1.0, trials=2)
    with pytest.warns(RuntimeWarning):
        rows = run_experiment(spec)
    assert len(rows) == 3
    assert all(np.isnan(r.recovery_error) for r in rows)
    assert has_failures(rows)


def test_has_failures_false_on_clean_rows():
    rows = run_experiment(_spec(methods=("mean",)))
    assert not has_failures(rows)


def test_trace_invariant_violation_is_never_swallowed(monkeypatch):
    fake = types.SimpleNamespace(
        mean=np.zeros(3), outer_iterations=2, l0_trace=(5, 5)
    )
    monkeypatch.setattr(harness, "robust_mean", lambda *a, **k: fake)
    with pytest.raises(TraceInvariantError):
        run_experiment(_spec(methods=("l1",), trials=1))


def test_spec_validation():
    with pytest.raises(ValueError):
        _spec(trials=0)
    with pytest.raises(ValueError):
        _spec(alphas=())
    with pytest.raises(ValueError):
        _spec(alphas=(0.5,))
    with pytest.raises(ValueError):
        _spec(methods=("huber",))
    with pytest.raises(ValueError):
        _spec(methods=())
    with pytest.raises(ValueError):
        _spec(fmt="yaml")


# ---------------------------------------------------------------------------
# rendering and round-trips
# ---------------------------------------------------------------------------

def test_render_csv_layout_and_determinism():
    spec = _spec(methods=("mean",))
    text = render_csv(run_experiment(spec))
    assert text.splitlines()[0] == RESULT_HEADER
    assert text == render_csv(run_experiment(spec))
    assert text.endswith("\n")


def test_render_json_carries_spec_and_rows():
    import json

    spec = _spec(methods=("mean",), trials=1)
    rows = run_experiment(spec)
    payload = json.loads(render_json(rows, spec))
    assert payload["spec"]["setting"] == "B"
    assert payload["spec"]["alphas"] == [0.2]
    assert len(payload["rows"]) == len(rows)
    assert payload["rows"][0]["trial"] == 0
    assert payload["rows"][-1]["trial"] == "mean"


def test_write_results_byte_identical_across_runs(tmp_path):
    spec = _spec(methods=("mean", "lp"))
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    write_results(run_experiment(spec), spec, p1)
    write_results(run_experiment(spec), spec, p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_dataset_csv_round_trip_is_bitwise(tmp_path):
    ds = gen_setting_b(3, 14, 0.25, seed=8)
    path = tmp_path / "ds.csv"
    save_csv(ds, path)
    data, labels = ingest_csv(path)
    assert np.array_equal(data, ds.data)
    assert np.array_equal(labels, ds.inlier_mask)


@given(st.floats(allow_nan=False, allow_infinity=False))
@settings(max_examples=200, deadline=None)
def test_seventeen_digit_format_round_trips_doubles(x):
    assert float("%.17g" % x) == x


# ---------------------------------------------------------------------------
# ingest_csv errors
# ---------------------------------------------------------------------------

def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_ingest_unlabeled_file_gives_none_labels(tmp_path):
    path = _write(tmp_path, "u.csv", "x0,x1\n1.0,2.0\n\n3.0,4.0\n")
    data, labels = ingest_csv(path)
    assert np.array_equal(data, [[1.0, 2.0], [3.0, 4.0]])  # blank line skipped
    assert labels is None


def test_ingest_ragged_row_names_line(tmp_path):
    path = _write(tmp_path, "r.csv", "x0,x1,is_inlier\n1.0,2.0,1\n1.0,2.0\n")
    with pytest.raises(ValueError, match="line 3"):
        ingest_csv(path)


def test_ingest_non_numeric_cell_names_line(tmp_path):
    path = _write(tmp_path, "n.csv", "x0,x1\n1.0,oops\n")
    with pytest.raises(ValueError, match="line 2: non-numeric"):
        ingest_csv(path)


def test_ingest_bad_header(tmp_path):
    path = _write(tmp_path, "h.csv", "y0,x1\n1.0,2.0\n")
    with pytest.raises(ValueError, match="line 1"):
        ingest_csv(path)


def test_ingest_empty_file(tmp_path):
    path = _write(tmp_path, "e.csv", "")
    with pytest.raises(ValueError, match="line 1"):
        ingest_csv(path)


def test_ingest_header_only(tmp_path):
    path = _write(tmp_path, "o.csv", "x0,x1\n")
    with pytest.raises(ValueError, match="no data rows"):
        ingest_csv(path)


def test_experiment_on_unlabeled_csv_is_an_error(tmp_path):
    path = _write(tmp_path, "u.csv", "x0,x1\n1.0,2.0\n3.0,4.0\n")
    spec = _spec(setting=str(path), methods=("mean",), trials=1)
    with pytest.raises(ValueError, match="is_inlier"):
        run_experiment(spec)


def test_experiment_on_labeled_csv_file(tmp_path):
    ds = gen_setting_b(3, 10, 0.2, seed=2)
    path = tmp_path / "ds.csv"
    save_csv(ds, path)
    spec = _spec(setting=str(path), d=3, n=10, methods=("mean",), trials=1)
    rows = run_experiment(spec)
    assert rows[0].recovery_error == recovery_error(sample_mean(ds.data), ds)


# ---------------------------------------------------------------------------
# brute_force_l0
# ---------------------------------------------------------------------------

def test_brute_force_clean_instance_keeps_everything(rng):
    data = rng.normal(size=(8, 2))
    dev = data - data.mean(axis=0)
    lam = float(np.linalg.eigvalsh(dev.T @ dev)[-1])
    sigma = float(np.sqrt(1.1 * lam / (1.5 * 8)))
    k, support, center = brute_force_l0(data, MomentBound(sigma=sigma, n=8))
    assert k == 0
    assert support == frozenset()
    assert np.array_equal(center, data.mean(axis=0))


def test_brute_force_recovers_planted_pair():
    data, expected = planted_line()
    k, support, center = brute_force_l0(data, MomentBound(sigma=1.0, n=6))
    assert k == 2
    assert support == expected
    assert np.array_equal(center, data[:4].mean(axis=0))


def test_brute_force_accepts_raw_budget():
    data, expected = planted_line()
    k, support, _ = brute_force_l0(data, 9.0)  # same budget, no wrapper
    assert (k, support) == (2, expected)


def test_brute_force_huge_budget_short_circuits():
    data, _ = planted_line()
    k, support, _ = brute_force_l0(data, MomentBound(sigma=100.0, n=6))
    assert (k, support) == (0, frozenset())


def test_brute_force_size_limit():
    with pytest.raises(SizeLimitError):
        brute_force_l0(np.zeros((15, 1)), 1.0)


# ---------------------------------------------------------------------------
# calibrate_sigma
# ---------------------------------------------------------------------------

def test_calibrate_sigma_near_unit_on_gaussian_data(rng):
    data = rng.normal(size=(2000, 4))
    assert calibrate_sigma(data) == pytest.approx(1.0, abs=0.1)


def test_calibrate_sigma_degenerate_subset_warns():
    data = np.tile([1.0, 2.0], (5, 1))
    with pytest.warns(RuntimeWarning, match="degenerate"):
        assert calibrate_sigma(data) == 0.0


def test_calibrate_sigma_small_subset_warns(rng):
    data = rng.normal(size=(2, 20))
    with pytest.warns(RuntimeWarning, match="unreliable"):
        calibrate_sigma(data)


def test_calibrate_sigma_scales_homogeneously(rng):
    data = rng.normal(size=(50, 3))
    assert calibrate_sigma(3.0 * data) == pytest.approx(
        3.0 * calibrate_sigma(data), rel=1e-9
    )


def test_calibrate_sigma_rejects_bad_input():
    with pytest.raises(ValueError):
        calibrate_sigma(np.zeros(3))


# ---------------------------------------------------------------------------
# parse_config
# ---------------------------------------------------------------------------

def test_parse_config_full_file(tmp_path):
    path = _write(
        tmp_path,
        "exp.cfg",
        "# sweep definition\n"
        "setting = B\n"
        "d = 100\n"
        "n = 2000\n"
        "alpha = 0.1,0.2\n"
        "alpha = 0.3\n"
        "\n"
        "methods = l1, lp\n"
        "sigma = 1.0\n"
        "seed = 7\n",
    )
    cfg = parse_config(path)
    assert cfg["setting"] == "B"
    assert cfg["d"] == "100"
    assert cfg["alpha"] == ["0.1", "0.2", "0.3"]  # commas and repeats accumulate
    assert cfg["methods"] == ["l1", "lp"]
    assert cfg["seed"] == "7"


def test_parse_config_unknown_key_names_line(tmp_path):
    path = _write(tmp_path, "bad.cfg", "setting = A\nbogus = 1\n")
    with pytest.raises(ValueError, match="line 2: unknown key"):
        parse_config(path)


def test_parse_config_missing_equals_names_line(tmp_path):
    path = _write(tmp_path, "bad.cfg", "setting = A\njust words\n")
    with pytest.raises(ValueError, match="line 2"):
        parse_config(path)
