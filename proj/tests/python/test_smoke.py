"""End-to-end smoke tests for the python bindings."""

import math

import pytest

import palprender as pr


@pytest.fixture(scope="module")
def lump_trial():
    return pr.synth_trial(lump=True, pokes=3, seed=7)


@pytest.fixture(scope="module")
def plain_trial():
    return pr.synth_trial(lump=False, pokes=3, seed=7)


def test_synth_shapes(lump_trial):
    assert len(lump_trial) == 1000
    assert len(lump_trial.timestamps_s) == 1000
    assert lump_trial.phantom_height_mm == 39.0
    depth = lump_trial.depth()
    assert max(depth) == pytest.approx(5.0)
    assert min(depth) == pytest.approx(-2.0)


def test_segmentation(lump_trial):
    events = pr.segment_pokes(lump_trial)
    assert len(events) == 3
    assert all(ev.has_sustain for ev in events)
    assert events[0].sustain_mean_depth_mm == pytest.approx(5.0, abs=0.05)


def test_hertz_force():
    assert pr.hertz_force(0.01, 7.5, 4.0) == pytest.approx(0.2921186973360886)
    assert pr.hertz_force(0.01, 7.5, -1.0) == 0.0


def test_fitting_round_trip():
    model = pr.reference_platform_model()
    samples = [(float(x), model.k2 * x * x + model.k1 * x) for x in range(11)]
    fitted, r2 = pr.fit_platform_poly(samples)
    assert r2 == pytest.approx(1.0)
    assert fitted.k2 == pytest.approx(model.k2, rel=1e-9)

    bubble = pr.reference_bubble_model()
    bsamples = [(p, bubble.a * p**bubble.b) for p in (3.0, 10.0, 20.0, 30.0, 41.0)]
    bfit, br2 = pr.fit_bubble_powerlaw(bsamples)
    assert br2 == pytest.approx(1.0)
    assert bfit.b == pytest.approx(bubble.b, rel=1e-6)


def test_full_pipeline(lump_trial, plain_trial):
    plan, events = pr.plan_hybrid_b(lump_trial)
    assert len(plan) == len(lump_trial)
    assert len(events) == 3
    pressures = plan.bubble_targets()
    assert max(pressures) > 10.0  # lump poke inflates the bubble

    trace = pr.simulate(plan, seed=7)
    assert len(trace) == len(plan)
    totals = trace.total_n()
    assert max(totals) > 2.0

    report = pr.tracking_report(trace)
    assert report.rmse <= 1.31
    assert report.pearson >= 0.93

    baseline = pr.simulate(plan, seed=7, bubble_enabled=False)
    aug = pr.augmentation_report(trace, baseline)
    assert 0.85 <= aug.bubble_contribution_n <= 1.05


def test_platform_only_tracking(lump_trial):
    plan = pr.plan_platform_only(lump_trial)
    trace = pr.simulate(plan, seed=7)
    report = pr.tracking_report(trace)
    assert report.rmse <= 0.30
    assert report.pearson >= 0.99


def test_classification(lump_trial, plain_trial):
    decision = pr.classify_lump(lump_trial, plain_trial, pr.Strategy.HYBRID_A)
    assert decision.winner == 0
    assert decision.margin > 0.5


def test_metrics():
    assert pr.rmse([0.0, 0.0], [3.0, 4.0]) == pytest.approx(math.sqrt(12.5))
    assert pr.pearson_r([1.0, 2.0, 3.0], [2.0, 4.0, 6.0]) == pytest.approx(1.0)


def test_trial_io_round_trip(tmp_path, lump_trial):
    path = str(tmp_path / "trial.csv")
    pr.save_trial(path, lump_trial)
    loaded = pr.load_trial(path)
    assert len(loaded) == len(lump_trial)
    assert loaded.finger_height_mm == lump_trial.finger_height_mm
