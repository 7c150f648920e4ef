import random

import pytest

from clausefair.classifier import MetricsReport, evaluate, render_results_table
from clausefair.errors import EmptyInput, LengthMismatch
from clausefair.labels import LABELS, Label

F, P, C = Label.FAIR, Label.POTENTIALLY_UNFAIR, Label.CLEARLY_UNFAIR


def brute_force_report(pred, gold):
    """Independent confusion-matrix computation (dict counting)."""
    matrix = {g: {q: 0 for q in LABELS} for g in LABELS}
    for p_label, g_label in zip(pred, gold):
        matrix[g_label][p_label] += 1
    per_class = {}
    for label in LABELS:
        tp = matrix[label][label]
        fp = sum(matrix[g][label] for g in LABELS if g != label)
        fn = sum(matrix[label][q] for q in LABELS if q != label)
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        per_class[label] = (precision, recall, f1, tp + fn)
    accuracy = sum(matrix[l][l] for l in LABELS) / len(gold)
    macro = tuple(
        sum(per_class[l][i] for l in LABELS) / 3 for i in range(3)
    )
    return per_class, macro, accuracy


def test_all_correct():
    gold = [F, P, C, F, P, C]
    report = evaluate(gold, gold)
    assert report.accuracy == 1.0
    for label in LABELS:
        assert report.per_class[label].f1 == 1.0
    assert report.macro_f1 == 1.0


def test_hand_computed_confusion():
    gold = [F, F, P, C]
    pred = [F, P, P, C]
    report = evaluate(pred, gold)
    assert report.accuracy == pytest.approx(0.75)
    assert report.per_class[F].precision == pytest.approx(1.0)
    assert report.per_class[F].recall == pytest.approx(0.5)
    assert report.per_class[F].f1 == pytest.approx(2 / 3)
    assert report.per_class[P].precision == pytest.approx(0.5)
    assert report.per_class[P].recall == pytest.approx(1.0)
    assert report.per_class[P].f1 == pytest.approx(2 / 3)
    assert report.per_class[C].f1 == pytest.approx(1.0)
    assert report.macro_f1 == pytest.approx(7 / 9)


def test_absent_class_flagged():
    gold = [F, F, P]
    pred = [F, F, P]
    report = evaluate(pred, gold)
    assert report.per_class[C].f1 == 0.0
    assert report.per_class[C].support == 0
    assert C.value in report.zero_division


def test_length_mismatch_and_empty():
    with pytest.raises(LengthMismatch):
        evaluate([F], [F, P])
    with pytest.raises(EmptyInput):
        evaluate([], [])


def test_matches_brute_force_on_random_sets():
    rng = random.Random(1234)
    for _ in range(200):
        n = rng.randint(1, 30)
        gold = [rng.choice(LABELS) for _ in range(n)]
        pred = [rng.choice(LABELS) for _ in range(n)]
        report = evaluate(pred, gold)
        per_class, macro, accuracy = brute_force_report(pred, gold)
        assert report.accuracy == pytest.approx(accuracy, abs=1e-9)
        assert report.macro_precision == pytest.approx(macro[0], abs=1e-9)
        assert report.macro_recall == pytest.approx(macro[1], abs=1e-9)
        assert report.macro_f1 == pytest.approx(macro[2], abs=1e-9)
        for label in LABELS:
            want = per_class[label]
            got = report.per_class[label]
            assert got.precision == pytest.approx(want[0], abs=1e-9)
            assert got.recall == pytest.approx(want[1], abs=1e-9)
            assert got.f1 == pytest.approx(want[2], abs=1e-9)
            assert got.support == want[3]


def test_permutation_invariance():
    rng = random.Random(8)
    gold = [rng.choice(LABELS) for _ in range(40)]
    pred = [rng.choice(LABELS) for _ in range(40)]
    order = list(range(40))
    rng.shuffle(order)
    a = evaluate(pred, gold)
    b = evaluate([pred[i] for i in order], [gold[i] for i in order])
    assert a.to_dict() == b.to_dict()


def test_macro_f1_is_exact_mean():
    rng = random.Random(55)
    gold = [rng.choice(LABELS) for _ in range(25)]
    pred = [rng.choice(LABELS) for _ in range(25)]
    report = evaluate(pred, gold)
    mean = sum(report.per_class[l].f1 for l in LABELS) / 3
    assert report.macro_f1 == mean


def test_report_json_roundtrip():
    gold = [F, F, P, C]
    pred = [F, P, P, C]
    report = evaluate(pred, gold)
    again = MetricsReport.from_dict(report.to_dict())
    assert again.to_dict() == report.to_dict()


def test_table_layout():
    gold = [F, F, P, C]
    pred = [F, P, P, C]
    report = evaluate(pred, gold)
    table = render_results_table([("ref", "Vanilla", report)])
    header = table.splitlines()[0]
    for column in (
        "Model", "Technique", "Fair F1", "Potentially Unfair F1",
        "Clearly Unfair F1", "Macro F1", "Accuracy",
    ):
        assert column in header
    assert "75.0%" in table

    extended = render_results_table([("ref", "Vanilla", report)], extended=True)
    ext_header = extended.splitlines()[0]
    # 12 metric columns: P/R/F1 for each class plus the macro trio
    for group in ("Fair", "Potentially Unfair", "Clearly Unfair", "Macro"):
        for metric in ("P", "R", "F1"):
            assert f"{group} {metric}" in ext_header
