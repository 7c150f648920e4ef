"""Acceptance suite: one test per release criterion.

Each test enforces its stated tolerance and runtime budget; the
terminal summary prints one PASS/FAIL line per criterion.
"""

import random
import time

import pytest

from clausefair.annotation import LabeledExample, Provenance, cohen_kappa
from clausefair.classifier import (
    ClassDistribution,
    HashedNgramLogisticBackend,
    Prediction,
    evaluate,
)
from clausefair.corpus.split import SplitConfig, stratified_split
from clausefair.errors import ParseError, UnverifiedSynthetic
from clausefair.fixtures import (
    build_classification_script,
    build_fixture_store,
    build_synthetic_batch,
    experiment_test_gold,
    rebalance_pool,
    selftrain_fixture,
    synthetic_examples,
    write_script,
)
from clausefair.gateway import (
    MockLlmClient,
    builtin_template,
    classify_prompted,
    parse_label,
    render,
)
from clausefair.labels import LABELS, Label
from clausefair.selftrain import (
    StoppingPolicy,
    ThresholdConfig,
    filter_by_confidence,
    inject_synthetic,
    new_state,
    self_train,
)
from clausefair.workbench import parse_config, run_experiment
from clausefair.workbench.reporting import report_text

from test_metrics import brute_force_report
from test_gateway import GOLDEN, SENTENCE

F, P, C = Label.FAIR, Label.POTENTIALLY_UNFAIR, Label.CLEARLY_UNFAIR


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds
        self.start = time.monotonic()

    def check(self):
        elapsed = time.monotonic() - self.start
        assert elapsed < self.seconds, f"runtime {elapsed:.1f}s exceeds {self.seconds}s budget"


@pytest.mark.acceptance
def test_metric_oracle():
    """evaluate() == brute-force confusion-matrix math on 200 random sets."""
    budget = Budget(5)
    gold = [F, F, P, C]
    pred = [F, P, P, C]
    report = evaluate(pred, gold)
    assert abs(report.accuracy - 0.75) < 1e-9
    assert abs(report.macro_f1 - 7 / 9) < 1e-9

    rng = random.Random(1000)
    for _ in range(200):
        n = rng.randint(1, 40)
        gold = [rng.choice(LABELS) for _ in range(n)]
        pred = [rng.choice(LABELS) for _ in range(n)]
        got = evaluate(pred, gold)
        per_class, macro, accuracy = brute_force_report(pred, gold)
        assert abs(got.accuracy - accuracy) < 1e-9
        assert abs(got.macro_precision - macro[0]) < 1e-9
        assert abs(got.macro_recall - macro[1]) < 1e-9
        assert abs(got.macro_f1 - macro[2]) < 1e-9
        for label in LABELS:
            want_p, want_r, want_f1, want_support = per_class[label]
            klass = got.per_class[label]
            assert abs(klass.precision - want_p) < 1e-9
            assert abs(klass.recall - want_r) < 1e-9
            assert abs(klass.f1 - want_f1) < 1e-9
            assert klass.support == want_support
    budget.check()


@pytest.mark.acceptance
def test_kappa_oracle():
    """cohen_kappa matches hand computations and is rater-symmetric."""
    budget = Budget(5)
    assert cohen_kappa([(F, F), (P, P), (C, C)]) == 1.0
    assert abs(cohen_kappa(list(zip([F, F, P, C], [F, P, P, C]))) - 0.636364) < 1e-6
    assert abs(cohen_kappa([(F, P), (F, P)]) - 0.0) < 1e-6

    rng = random.Random(2000)
    for _ in range(100):
        n = rng.randint(1, 50)
        pairs = [(rng.choice(LABELS), rng.choice(LABELS)) for _ in range(n)]
        swapped = [(b, a) for a, b in pairs]
        assert abs(cohen_kappa(pairs) - cohen_kappa(swapped)) < 1e-12
    budget.check()


@pytest.mark.acceptance
def test_split_properties():
    """50 random corpora: disjoint, exhaustive, largest-remainder, seeded."""
    budget = Budget(10)

    def pool_of(counts):
        pool, k = [], 0
        for label, n in zip(LABELS, counts):
            for _ in range(n):
                pool.append(LabeledExample(f"s{k}", label, Provenance.HUMAN_AGREED))
                k += 1
        return pool

    # the hand-computed case
    pool = pool_of((800, 322, 78))
    split = stratified_split(pool, SplitConfig(ratios=(0.5, 0.2, 0.3), seed=42))

    def counts_in(bucket):
        out = {label: 0 for label in LABELS}
        for ex in pool:
            if ex.sentence_id in bucket:
                out[ex.label] += 1
        return [out[label] for label in LABELS]

    assert counts_in(split.train) == [400, 161, 39]
    assert counts_in(split.validation) == [160, 64, 16]
    assert counts_in(split.test) == [240, 97, 23]

    rng = random.Random(3000)
    for _ in range(50):
        counts = tuple(rng.randint(3, 120) for _ in range(3))
        pool = pool_of(counts)
        seed = rng.randint(0, 10**6)
        cfg = SplitConfig(ratios=(0.5, 0.2, 0.3), seed=seed)
        split = stratified_split(pool, cfg)
        replay = stratified_split(pool, cfg)
        assert split == replay

        ids = {ex.sentence_id for ex in pool}
        buckets = (split.train, split.validation, split.test)
        assert buckets[0] | buckets[1] | buckets[2] == ids
        assert not buckets[0] & buckets[1]
        assert not buckets[0] & buckets[2]
        assert not buckets[1] & buckets[2]

        for label, n in zip(LABELS, counts):
            for bucket, ratio in zip(buckets, cfg.ratios):
                got = sum(
                    1 for ex in pool if ex.label is label and ex.sentence_id in bucket
                )
                assert abs(got - n * ratio) < 1
    budget.check()


@pytest.mark.acceptance
def test_filter_property():
    """Accepted set == { p : confidence > tau[predicted] }, boundary rejected."""
    budget = Budget(5)
    rng = random.Random(4000)
    for _ in range(60):
        tau = ThresholdConfig(
            tau=tuple(round(rng.uniform(0.4, 0.9), 2) for _ in range(3))
        )
        preds = []
        for i in range(rng.randint(0, 80)):
            raw = [rng.random() + 1e-6 for _ in range(3)]
            total = sum(raw)
            preds.append(
                Prediction.from_distribution(
                    f"s{i}", ClassDistribution(tuple(x / total for x in raw))
                )
            )
        # salt in exact boundary cases
        for j, label in enumerate(LABELS):
            t = tau[label]
            rest = (1.0 - t) / 2
            p = [rest, rest, rest]
            p[label.severity] = t
            if max(p) == t and sum(p) > 0.999:
                preds.append(
                    Prediction.from_distribution(
                        f"boundary{j}", ClassDistribution(tuple(p))
                    )
                )
        accepted, rejected = filter_by_confidence(preds, tau)
        want = {p.sentence_id for p in preds if p.confidence > tau[p.predicted]}
        assert {p.sentence_id for p in accepted} == want
        assert len(accepted) + len(rejected) == len(preds)
        for p in preds:
            if p.sentence_id.startswith("boundary") and p.confidence == tau[p.predicted]:
                assert p in rejected
    budget.check()


@pytest.mark.acceptance
def test_selftrain_trend():
    """Shipped corpus (60 labeled + 300 unlabeled): >= +5pp over iteration 1,
    strictly growing labeled pool, and every loop invariant in history."""
    budget = Budget(60)
    fx = selftrain_fixture(seed=7)
    assert len(fx.labeled) == 60 and len(fx.unlabeled_ids) == 300
    backend = HashedNgramLogisticBackend()
    cfg = backend.suggested_config(seed=7)
    tau = ThresholdConfig(tau=(0.65, 0.65, 0.65))
    stopping = StoppingPolicy(patience=2, monitor_split="validation", max_iterations=10)
    model, state = self_train(
        backend, fx.labeled, fx.unlabeled_ids, fx.texts, tau, stopping, cfg, fx.monitor
    )

    first = state.history[0].metrics.accuracy
    assert state.best_accuracy >= first + 0.05, (
        f"no trend: iteration-1 {first:.3f} vs best {state.best_accuracy:.3f}"
    )

    sizes = [r.labeled_size for r in state.history]
    assert all(b > a for a, b in zip(sizes, sizes[1:])), f"pool stalled: {sizes}"

    total = len(fx.labeled) + len(fx.unlabeled_ids)
    for record in state.history:
        assert record.labeled_size + record.unlabeled_size == total
        assert record.labeled_size_after + record.unlabeled_size_after == total
        assert record.labeled_size_after - record.labeled_size == record.accepted
        assert sum(record.accepted_per_class.values()) == record.accepted
        assert sum(record.confidence_histogram) == record.unlabeled_size
    state.check_disjoint()
    assert len(state.history) == state.iteration
    assert state.iteration <= state.best_iteration + stopping.patience
    assert state.iteration <= stopping.max_iterations

    for ex in state.labeled_pool:
        if ex.provenance is Provenance.PSEUDO:
            assert ex.confidence is not None and ex.confidence > tau[ex.label]
    budget.check()


@pytest.mark.acceptance
def test_augmentation_rebalance():
    """145 verified synthetics lift the minority class 34 -> 179; unverified refused."""
    budget = Budget(5)
    state = new_state(rebalance_pool((401, 165, 34)), [])
    inject_synthetic(state, synthetic_examples(145))
    assert state.class_counts() == {
        "fair": 401, "potentially_unfair": 165, "clearly_unfair": 179,
    }
    assert state.injections[0]["count"] == 145

    fresh = new_state(rebalance_pool((401, 165, 34)), [])
    with pytest.raises(UnverifiedSynthetic):
        inject_synthetic(fresh, synthetic_examples(5, verified=False))
    assert fresh.class_counts()["clearly_unfair"] == 34
    budget.check()


@pytest.mark.acceptance
def test_prompt_fidelity():
    """Rendered prompts match golden files; labels round-trip; temperature 0."""
    budget = Budget(5)
    direct = render(builtin_template("classify-direct"), input=SENTENCE)
    cot = render(builtin_template("classify-cot"), input=SENTENCE)
    augment = render(builtin_template("augment-unilateral-termination"))
    assert direct == (GOLDEN / "direct_prompt.txt").read_text(encoding="utf-8")
    assert cot == (GOLDEN / "cot_prompt.txt").read_text(encoding="utf-8")
    assert augment == (GOLDEN / "augment_unilateral_termination_prompt.txt").read_text(
        encoding="utf-8"
    )
    assert "reason step by step and classify" in cot
    assert "terminate this agreement without prior notice" in augment

    for label in LABELS:
        assert parse_label(f"Therefore, the sentence is {label.display}.") is label
    with pytest.raises(ParseError):
        parse_label("no verdict to be found here")

    client = MockLlmClient(["Answer: Fair", "Answer: Clearly Unfair"])
    classify_prompted(client, builtin_template("classify-direct"), SENTENCE)
    classify_prompted(client, builtin_template("classify-cot"), SENTENCE)
    assert client.requests, "mock recorded no requests"
    for request in client.requests:
        assert request["temperature"] == 0.0
    budget.check()


@pytest.mark.acceptance
def test_end_to_end(tmp_path):
    """All five techniques run on fixtures; re-run is bit-identical."""
    budget = Budget(180)
    store = tmp_path / "store"
    workspace, corpus = build_fixture_store(store, seed=7)
    batch = build_synthetic_batch(corpus, n=25)
    workspace.save_batch(batch)
    batch_path = str(workspace._batch_path(batch.batch_id))

    split_cfg = SplitConfig(ratios=(0.5, 0.2, 0.3), seed=7)
    gold = experiment_test_gold(store, split_cfg)
    write_script(build_classification_script(gold, "direct"), tmp_path / "direct.json")
    write_script(build_classification_script(gold, "cot"), tmp_path / "cot.json")

    base = {
        "backend": "hashed-logreg",
        "seed": 7,
        "split": {"ratios": [0.5, 0.2, 0.3], "seed": 7},
        "train": {"batch_size": 16, "learning_rate": 5.0, "epochs": 60,
                  "warmup_steps": 10, "weight_decay": 0.0001, "dropout": 0.0,
                  "max_sequence_length": 256, "seed": 7},
    }
    raws = [
        {**base, "name": "e2e-vanilla", "technique": "vanilla",
         "data": {"store": str(store)}},
        {**base, "name": "e2e-da", "technique": "data_augmentation",
         "data": {"store": str(store), "synthetic_batches": [batch_path]}},
        {**base, "name": "e2e-dast", "technique": "data_augmentation_self_train",
         "data": {"store": str(store), "synthetic_batches": [batch_path]},
         "thresholds": {"tau": [0.85, 0.62, 0.85]},
         "stopping": {"patience": 2, "monitor_split": "validation", "max_iterations": 10}},
        {**base, "name": "e2e-direct", "technique": "direct_prompt",
         "data": {"store": str(store), "mock_script": str(tmp_path / "direct.json"),
                  "model_name": "mock-llm"}},
        {**base, "name": "e2e-cot", "technique": "cot_prompt",
         "data": {"store": str(store), "mock_script": str(tmp_path / "cot.json"),
                  "model_name": "mock-llm"}},
    ]
    records = [run_experiment(parse_config(raw)) for raw in raws]
    assert [r.technique for r in records] == [
        "Vanilla", "Data Augmentation", "Data Augmentation + Self-Training",
        "Direct Prompt", "CoT Prompt",
    ]

    table = report_text(records)
    header = table.splitlines()[0]
    for column in ("Model", "Technique", "Fair F1", "Potentially Unfair F1",
                   "Clearly Unfair F1", "Macro F1", "Accuracy"):
        assert column in header
    assert len(table.splitlines()) == 2 + len(records)

    # bit-identical re-runs under identical config hashes
    for raw, record in zip(raws, records):
        cfg = parse_config(raw)
        again = run_experiment(cfg)
        assert again.config_hash == record.config_hash
        assert again.metrics.to_json() == record.metrics.to_json()
    assert report_text(records) == table
    budget.check()


@pytest.mark.acceptance
def test_primary_suite_runs_without_secondary():
    """The primary package has no dependency on the browser client."""
    import clausefair

    for module in list(__import__("sys").modules):
        assert not module.startswith("frontend"), module
    assert clausefair.__version__
