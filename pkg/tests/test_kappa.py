import random

import pytest

from clausefair.annotation import cohen_kappa
from clausefair.errors import EmptyInput
from clausefair.labels import LABELS, Label

F, P, C = Label.FAIR, Label.POTENTIALLY_UNFAIR, Label.CLEARLY_UNFAIR


def test_perfect_agreement_mixed_classes():
    assert cohen_kappa([(F, F), (P, P), (C, C), (F, F)]) == 1.0


def test_four_item_hand_computation():
    # p_o = 0.75, p_e = 0.3125, kappa = 0.4375/0.6875
    kappa = cohen_kappa(list(zip([F, F, P, C], [F, P, P, C])))
    assert kappa == pytest.approx(0.4375 / 0.6875, abs=1e-12)
    assert kappa == pytest.approx(0.6364, abs=5e-5)


def test_zero_overlap_hand_computation():
    # A constant on F, B constant on P: p_o = 0, p_e = 0
    assert cohen_kappa([(F, P), (F, P)]) == 0.0


def test_both_raters_constant_and_equal():
    # p_e = 1 degenerate case, defined as 1.0
    assert cohen_kappa([(F, F), (F, F), (F, F)]) == 1.0


def test_empty_input():
    with pytest.raises(EmptyInput):
        cohen_kappa([])


def test_rater_symmetry_random():
    rng = random.Random(99)
    for _ in range(100):
        n = rng.randint(1, 40)
        pairs = [(rng.choice(LABELS), rng.choice(LABELS)) for _ in range(n)]
        swapped = [(b, a) for a, b in pairs]
        assert cohen_kappa(pairs) == pytest.approx(cohen_kappa(swapped), abs=1e-12)


def test_pair_order_invariance():
    rng = random.Random(5)
    pairs = [(rng.choice(LABELS), rng.choice(LABELS)) for _ in range(30)]
    shuffled = list(pairs)
    rng.shuffle(shuffled)
    assert cohen_kappa(pairs) == pytest.approx(cohen_kappa(shuffled), abs=1e-12)


def test_range_bounds_random():
    rng = random.Random(17)
    for _ in range(200):
        pairs = [(rng.choice(LABELS), rng.choice(LABELS)) for _ in range(rng.randint(1, 25))]
        assert -1.0 <= cohen_kappa(pairs) <= 1.0
