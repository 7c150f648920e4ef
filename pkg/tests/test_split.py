import random

import pytest

from clausefair.annotation import LabeledExample, Provenance
from clausefair.corpus import SplitConfig, largest_remainder_counts, stratified_split
from clausefair.errors import DataError, InsufficientClass
from clausefair.labels import LABELS, Label


def make_pool(counts):
    pool = []
    k = 0
    for label, n in zip(LABELS, counts):
        for _ in range(n):
            pool.append(LabeledExample(f"s{k}", label, Provenance.HUMAN_AGREED))
            k += 1
    return pool


def class_counts(pool, ids):
    out = {label: 0 for label in LABELS}
    for ex in pool:
        if ex.sentence_id in ids:
            out[ex.label] += 1
    return [out[label] for label in LABELS]


def test_hand_computed_allocation():
    pool = make_pool((800, 322, 78))
    split = stratified_split(pool, SplitConfig(ratios=(0.5, 0.2, 0.3), seed=3))
    assert class_counts(pool, split.train) == [400, 161, 39]
    assert class_counts(pool, split.validation) == [160, 64, 16]
    assert class_counts(pool, split.test) == [240, 97, 23]


def test_total_sizes_for_1200():
    pool = make_pool((800, 322, 78))
    split = stratified_split(pool, SplitConfig(ratios=(0.5, 0.2, 0.3), seed=0))
    assert (len(split.train), len(split.validation), len(split.test)) == (600, 240, 360)


def test_degenerate_ratios_all_train():
    pool = make_pool((5, 4, 3))
    split = stratified_split(pool, SplitConfig(ratios=(1.0, 0.0, 0.0), seed=1))
    assert len(split.train) == 12
    assert not split.validation and not split.test


def test_insufficient_class():
    pool = make_pool((5, 4, 2))
    with pytest.raises(InsufficientClass):
        stratified_split(pool, SplitConfig(ratios=(0.5, 0.2, 0.3), seed=0))


def test_bad_ratios_rejected():
    with pytest.raises(DataError):
        SplitConfig(ratios=(0.5, 0.2, 0.2), seed=0)
    with pytest.raises(DataError):
        SplitConfig(ratios=(0.5, -0.2, 0.7), seed=0)


def test_seed_determinism_and_difference():
    pool = make_pool((40, 30, 20))
    cfg = SplitConfig(ratios=(0.5, 0.2, 0.3), seed=11)
    a = stratified_split(pool, cfg)
    b = stratified_split(pool, cfg)
    assert a == b
    c = stratified_split(pool, SplitConfig(ratios=(0.5, 0.2, 0.3), seed=12))
    assert a != c  # permitted to differ; these seeds do


def test_partition_properties_random():
    rng = random.Random(202)
    for _ in range(25):
        counts = tuple(rng.randint(3, 60) for _ in range(3))
        pool = make_pool(counts)
        seed = rng.randint(0, 10**6)
        split = stratified_split(pool, SplitConfig(ratios=(0.5, 0.2, 0.3), seed=seed))
        ids = {ex.sentence_id for ex in pool}
        assert split.train | split.validation | split.test == ids
        assert not split.train & split.validation
        assert not split.train & split.test
        assert not split.validation & split.test
        for label, n in zip(LABELS, counts):
            buckets = [
                class_counts(pool, split.train)[label.severity],
                class_counts(pool, split.validation)[label.severity],
                class_counts(pool, split.test)[label.severity],
            ]
            for got, ratio in zip(buckets, (0.5, 0.2, 0.3)):
                assert abs(got - n * ratio) < 1


def test_largest_remainder_exact():
    assert largest_remainder_counts(78, (0.5, 0.2, 0.3)) == [39, 16, 23]
    assert largest_remainder_counts(322, (0.5, 0.2, 0.3)) == [161, 64, 97]
    assert largest_remainder_counts(0, (0.5, 0.2, 0.3)) == [0, 0, 0]
    assert largest_remainder_counts(7, (1.0, 0.0, 0.0)) == [7, 0, 0]


def test_duplicate_ids_rejected():
    pool = make_pool((3, 3, 3)) + [LabeledExample("s0", Label.FAIR, Provenance.HUMAN_AGREED)]
    with pytest.raises(DataError):
        stratified_split(pool, SplitConfig(ratios=(0.5, 0.2, 0.3), seed=0))
