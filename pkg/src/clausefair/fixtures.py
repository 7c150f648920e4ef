"""Deterministic synthetic fixtures for tests and offline experiments.

The corpus is separable by construction: each class owns a lexicon of
pseudo-words and every sentence mixes a few of them with shared filler
vocabulary. Small labeled pools only see part of each lexicon, which
leaves the self-training loop real headroom to climb.
"""

from __future__ import annotations

import json
import random
import string
from dataclasses import dataclass, field
from pathlib import Path

from clausefair.annotation.models import LabeledExample, Provenance
from clausefair.corpus.sentences import Sentence
from clausefair.corpus.split import SplitConfig, stratified_split
from clausefair.gateway.augment import AugmentationBatch, Candidate
from clausefair.labels import LABELS, Label

TOPIC_WORDS_PER_SENTENCE = 3


def _pseudo_word(rng: random.Random, taken: set[str]) -> str:
    while True:
        word = "".join(rng.choice(string.ascii_lowercase) for _ in range(rng.randint(6, 9)))
        if word not in taken:
            taken.add(word)
            return word


@dataclass
class SyntheticCorpus:
    """Seeded generator of class-separable sentences.

    Sentences carry nothing but class-owned pseudo-words, so documents
    of different classes share no surface features at all: a small
    labeled pool sees only part of each lexicon and pseudo-labeling has
    genuine vocabulary left to teach."""

    seed: int = 7
    words_per_class: int = 150
    lexicons: dict[Label, list[str]] = field(init=False)
    _rng: random.Random = field(init=False)

    def __post_init__(self):
        self._rng = random.Random(self.seed)
        taken: set[str] = set()
        self.lexicons = {
            label: [_pseudo_word(self._rng, taken) for _ in range(self.words_per_class)]
            for label in LABELS
        }

    def text(self, label: Label) -> str:
        words = self._rng.sample(self.lexicons[label], TOPIC_WORDS_PER_SENTENCE)
        return " ".join(words).capitalize() + "."

    def sentence(self, label: Label, group: str, index: int) -> Sentence:
        return Sentence(
            sentence_id=f"fx/{group}/{index}",
            doc_id="fixture-corpus",
            section_path=f"s0[{group}]/c{index}",
            position=0,
            text=self.text(label),
        )


@dataclass
class SelfTrainFixture:
    labeled: list[LabeledExample]
    monitor: list[LabeledExample]
    unlabeled_ids: list[str]
    unlabeled_gold: dict[str, Label]
    texts: dict[str, str]


def selftrain_fixture(
    seed: int = 7,
    labeled_per_class: int = 20,
    monitor_per_class: int = 20,
    unlabeled_per_class: int = 100,
    words_per_class: int = 150,
) -> SelfTrainFixture:
    """The shipped self-training corpus: 60 labeled + 300 unlabeled
    (plus a labeled monitor split), at the default sizes."""
    corpus = SyntheticCorpus(seed=seed, words_per_class=words_per_class)
    texts: dict[str, str] = {}
    labeled: list[LabeledExample] = []
    monitor: list[LabeledExample] = []
    unlabeled_ids: list[str] = []
    unlabeled_gold: dict[str, Label] = {}

    def emit(group: str, label: Label, index: int) -> str:
        sentence = corpus.sentence(label, group, index)
        texts[sentence.sentence_id] = sentence.text
        return sentence.sentence_id

    counter = 0
    for label in LABELS:
        for _ in range(labeled_per_class):
            sid = emit("labeled", label, counter)
            labeled.append(LabeledExample(sid, label, Provenance.HUMAN_AGREED))
            counter += 1
    counter = 0
    for label in LABELS:
        for _ in range(monitor_per_class):
            sid = emit("monitor", label, counter)
            monitor.append(LabeledExample(sid, label, Provenance.HUMAN_AGREED))
            counter += 1
    counter = 0
    for label in LABELS:
        for _ in range(unlabeled_per_class):
            sid = emit("unlabeled", label, counter)
            unlabeled_ids.append(sid)
            unlabeled_gold[sid] = label
            counter += 1
    return SelfTrainFixture(labeled, monitor, unlabeled_ids, unlabeled_gold, texts)


def build_fixture_store(
    root: str | Path,
    seed: int = 7,
    labeled_per_class: tuple[int, int, int] = (80, 40, 16),
    unlabeled_per_class: int = 100,
    words_per_class: int = 150,
):
    """Populate a workspace with a labeled+unlabeled synthetic corpus.

    The labeled pool is class-imbalanced on purpose (the severe class
    is rare), so augmentation with verified synthetics has something to
    rebalance."""
    from clausefair.workbench.workspace import Workspace

    corpus = SyntheticCorpus(seed=seed, words_per_class=words_per_class)
    workspace = Workspace(root)
    store = workspace.store
    counter = 0
    for label, count in zip(LABELS, labeled_per_class):
        for _ in range(count):
            sentence = corpus.sentence(label, "labeled", counter)
            store.put_sentence(sentence)
            store.put_label(
                LabeledExample(sentence.sentence_id, label, Provenance.HUMAN_AGREED)
            )
            counter += 1
    counter = 0
    for label in LABELS:
        for _ in range(unlabeled_per_class):
            store.put_sentence(corpus.sentence(label, "unlabeled", counter))
            counter += 1
    return workspace, corpus


def build_synthetic_batch(
    corpus: SyntheticCorpus,
    n: int = 25,
    batch_id: str = "fixture-augment",
    label: Label = Label.CLEARLY_UNFAIR,
    reviewers: tuple[str, str] = ("rev-a", "rev-b"),
) -> AugmentationBatch:
    """A fully verified augmentation batch drawn from the class lexicon."""
    candidates = []
    for _ in range(n):
        candidates.append(
            Candidate(
                text=corpus.text(label),
                verified=True,
                reviews=[(reviewers[0], True), (reviewers[1], True)],
            )
        )
    return AugmentationBatch(
        batch_id=batch_id,
        template_id="augment-unilateral-termination",
        scenario="unilateral_termination",
        candidates=candidates,
        requested=n,
    )


def rebalance_pool(
    counts: tuple[int, int, int] = (401, 165, 34)
) -> list[LabeledExample]:
    """A labeled pool with the given per-class counts (ids only)."""
    pool = []
    k = 0
    for label, count in zip(LABELS, counts):
        for _ in range(count):
            pool.append(LabeledExample(f"pool/{k}", label, Provenance.HUMAN_AGREED))
            k += 1
    return pool


def synthetic_examples(
    n: int, label: Label = Label.CLEARLY_UNFAIR, verified: bool = True
) -> list[LabeledExample]:
    return [
        LabeledExample(
            f"synthetic/fixture/{i}", label, Provenance.SYNTHETIC, verified=verified
        )
        for i in range(n)
    ]


# -- mock LLM scripts ---------------------------------------------------

_WRONG_ROTATION = {
    Label.FAIR: Label.POTENTIALLY_UNFAIR,
    Label.POTENTIALLY_UNFAIR: Label.CLEARLY_UNFAIR,
    Label.CLEARLY_UNFAIR: Label.FAIR,
}


def _direct_response(label: Label) -> str:
    return f"Answer: {label.display}"


def _cot_response(label: Label) -> str:
    return (
        "The given sentence assigns a one-sided right or obligation. "
        "Considering the imbalance and any ambiguous terms involved, "
        f"the conclusion follows. Therefore, the sentence is {label.display}."
    )


def build_classification_script(
    gold: list[Label], style: str, error_every: int = 5
) -> dict:
    """Scripted responses aligned to a test split, mostly correct.

    Every `error_every`-th response answers with the wrong class so
    the resulting accuracy is interesting but not perfect."""
    responses = []
    for i, label in enumerate(gold, start=1):
        answer = _WRONG_ROTATION[label] if error_every and i % error_every == 0 else label
        responses.append(
            _direct_response(answer) if style == "direct" else _cot_response(answer)
        )
    return {"responses": responses}


def experiment_test_gold(workspace_root: str | Path, split_cfg: SplitConfig) -> list[Label]:
    """Gold labels of the test bucket, in experiment evaluation order."""
    from clausefair.workbench.workspace import Workspace

    store = Workspace(workspace_root).store
    labeled = store.labeled_examples()
    split = stratified_split(labeled, split_cfg)
    return [ex.label for ex in labeled if ex.sentence_id in split.test]


def write_script(script: dict, path: str | Path):
    Path(path).write_text(json.dumps(script, indent=2), encoding="utf-8")


def build_augmentation_script(
    corpus: SyntheticCorpus, n: int = 25, label: Label = Label.CLEARLY_UNFAIR
) -> dict:
    """A scripted generation response in the declared list format."""
    sentences = [corpus.text(label) for _ in range(n)]
    listed = ", ".join(sentences)
    return {"responses": [f"<List of Sentences>: [{listed}]"]}
