import numpy as np
import pytest
from hypothesis import given, strategies as st

from veritas.core import BinaryLabel
from veritas.evalharness.metrics import (
    Confusion,
    MetricsReport,
    compute_metrics,
    metrics_from_confusion,
)

R = BinaryLabel.RELIABLE
U = BinaryLabel.UNRELIABLE


def test_hand_confusion_arithmetic():
    # tp=3, fp=1, fn=1, tn=5
    predictions = [R, R, R, R, U, U, U, U, U, U]
    labels = [R, R, R, U, R, U, U, U, U, U]
    report = compute_metrics(predictions, labels)
    assert report.confusion == Confusion(3, 1, 1, 5)
    assert report.accuracy == pytest.approx(0.8)
    assert report.precision == pytest.approx(0.75)
    assert report.recall == pytest.approx(0.75)
    assert report.f1 == pytest.approx(0.75)


def test_all_correct():
    labels = [R, U, R, U]
    report = compute_metrics(labels, labels)
    assert report.accuracy == 1.0
    assert report.f1 == 1.0


def test_no_positive_predictions_flags_precision():
    report = compute_metrics([U, U, U], [R, U, U])
    assert report.precision == 0.0
    assert report.undefined_precision is True
    assert report.undefined_recall is False


def test_no_positive_labels_flags_recall():
    report = compute_metrics([U, U], [U, U])
    assert report.undefined_recall is True
    assert report.f1 == 0.0


def test_length_mismatch_rejected():
    with pytest.raises(ValueError):
        compute_metrics([R], [R, U])


def test_empty_inputs_rejected():
    with pytest.raises(ValueError):
        compute_metrics([], [])


def test_negative_confusion_rejected():
    with pytest.raises(ValueError):
        Confusion(-1, 0, 0, 1)


def test_out_of_range_metric_rejected():
    with pytest.raises(ValueError):
        MetricsReport("m", 1.2, 0.5, 0.5, 0.5, Confusion(1, 1, 1, 1))


@given(
    tp=st.integers(0, 200),
    fp=st.integers(0, 200),
    fn=st.integers(0, 200),
    tn=st.integers(0, 200),
)
def test_metric_identities_hold_for_all_confusions(tp, fp, fn, tn):
    if tp + fp + fn + tn == 0:
        return
    report = metrics_from_confusion(Confusion(tp, fp, fn, tn), "m")
    assert report.accuracy == pytest.approx((tp + tn) / (tp + fp + fn + tn))
    if tp + fp > 0:
        assert report.precision == pytest.approx(tp / (tp + fp))
    else:
        assert report.precision == 0.0 and report.undefined_precision
    if tp + fn > 0:
        assert report.recall == pytest.approx(tp / (tp + fn))
    else:
        assert report.recall == 0.0 and report.undefined_recall
    if report.precision + report.recall > 0:
        expected_f1 = (
            2 * report.precision * report.recall / (report.precision + report.recall)
        )
        assert report.f1 == pytest.approx(expected_f1)
    else:
        assert report.f1 == 0.0


def test_random_prediction_draws_agree_with_numpy_reference():
    rng = np.random.default_rng(5)
    for _ in range(200):
        n = int(rng.integers(1, 50))
        preds = rng.integers(0, 2, size=n)
        labels = rng.integers(0, 2, size=n)
        report = compute_metrics(
            [R if p else U for p in preds], [R if l else U for l in labels]
        )
        assert report.accuracy == pytest.approx(float(np.mean(preds == labels)))
