"""Hashed word/char n-gram features over a fixed-size index space.

Hashing uses crc32 so feature indices are stable across processes and
platforms (Python's builtin hash is salted per process).
"""

from __future__ import annotations

import re
import zlib
from collections import Counter
from dataclasses import dataclass

import numpy as np

_TOKEN = re.compile(r"[a-z0-9']+")


@dataclass(frozen=True)
class FeatureSpec:
    n_features: int = 1 << 18
    word_ngrams: tuple[int, int] = (1, 2)
    char_ngrams: tuple[int, int] = (3, 5)

    def to_dict(self) -> dict:
        return {
            "n_features": self.n_features,
            "word_ngrams": list(self.word_ngrams),
            "char_ngrams": list(self.char_ngrams),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FeatureSpec":
        return cls(
            n_features=int(d["n_features"]),
            word_ngrams=tuple(d["word_ngrams"]),
            char_ngrams=tuple(d["char_ngrams"]),
        )


def _hash(term: str, n_features: int) -> int:
    return zlib.crc32(term.encode("utf-8")) % n_features


def featurize(text: str, spec: FeatureSpec, max_tokens: int) -> Counter:
    """Counter of hashed feature indices for one text."""
    tokens = _TOKEN.findall(text.lower())[:max_tokens]
    counts: Counter = Counter()
    lo, hi = spec.word_ngrams
    for n in range(lo, hi + 1):
        for i in range(len(tokens) - n + 1):
            counts[_hash("w:" + " ".join(tokens[i : i + n]), spec.n_features)] += 1
    joined = " ".join(tokens)
    lo, hi = spec.char_ngrams
    for n in range(lo, hi + 1):
        for i in range(len(joined) - n + 1):
            counts[_hash("c:" + joined[i : i + n], spec.n_features)] += 1
    return counts


def build_csr(
    texts: list[str], spec: FeatureSpec, max_tokens: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """CSR arrays (indptr, indices, values) with L2-normalized rows."""
    indptr = np.zeros(len(texts) + 1, dtype=np.int64)
    all_indices: list[np.ndarray] = []
    all_values: list[np.ndarray] = []
    for k, text in enumerate(texts):
        counts = featurize(text, spec, max_tokens)
        idx = np.array(sorted(counts), dtype=np.int64)
        val = np.array([counts[i] for i in idx], dtype=np.float64)
        norm = np.sqrt((val * val).sum())
        if norm > 0:
            val /= norm
        all_indices.append(idx)
        all_values.append(val)
        indptr[k + 1] = indptr[k] + len(idx)
    indices = (
        np.concatenate(all_indices) if all_indices else np.zeros(0, dtype=np.int64)
    )
    values = (
        np.concatenate(all_values) if all_values else np.zeros(0, dtype=np.float64)
    )
    return indptr, indices, values
