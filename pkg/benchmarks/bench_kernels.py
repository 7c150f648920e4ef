#!/usr/bin/env python3
"""Benchmark the numba-compiled kernels against the pure-numpy fallback.

Trains the reference backend on synthetic corpora of growing size under
both kernel paths, checks that the two produce the same probabilities,
and prints the timing table. The first numba run includes JIT
compilation; a second timed run shows the steady state.
"""

import argparse
import os
import time

import numpy as np


def build_problem(n_docs: int, seed: int):
    from clausefair.classifier.features import FeatureSpec, build_csr
    from clausefair.fixtures import SyntheticCorpus
    from clausefair.labels import LABELS

    corpus = SyntheticCorpus(seed=seed, words_per_class=200)
    texts, y = [], []
    for i in range(n_docs):
        label = LABELS[i % 3]
        texts.append(corpus.text(label))
        y.append(label.severity)
    spec = FeatureSpec()
    indptr, indices, values = build_csr(texts, spec, max_tokens=256)
    y = np.array(y, dtype=np.int64)
    rng = np.random.default_rng(seed)
    order = np.stack([rng.permutation(n_docs) for _ in range(60)]).astype(np.int64)
    return spec, indptr, indices, values, y, order


def run_once(mode: str, problem):
    from clausefair.classifier import kernels

    spec, indptr, indices, values, y, order = problem
    os.environ[kernels.ENV_FLAG] = mode
    weights = np.zeros((spec.n_features, 3))
    bias = np.zeros(3)
    t0 = time.perf_counter()
    kernels.train_kernel(indptr, indices, values, y, weights, bias, order,
                         16, 5.0, 10, 1e-4)
    train_s = time.perf_counter() - t0
    t0 = time.perf_counter()
    probs = kernels.predict_kernel(indptr, indices, values, weights, bias)
    predict_s = time.perf_counter() - t0
    return train_s, predict_s, probs


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="300,1200,4800",
                        help="comma-separated corpus sizes")
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    from clausefair.classifier import kernels

    if not kernels.HAS_NUMBA:
        print("numba is not importable; nothing to compare")
        return

    sizes = [int(s) for s in args.sizes.split(",")]
    print(f"{'docs':>6} | {'numpy train':>11} | {'numba train':>11} | "
          f"{'speedup':>7} | {'numpy pred':>10} | {'numba pred':>10} | max |diff|")
    print("-" * 84)
    for n_docs in sizes:
        problem = build_problem(n_docs, args.seed)
        run_once("numba", problem)  # warm the JIT cache before timing
        nb_train, nb_pred, nb_probs = run_once("numba", problem)
        np_train, np_pred, np_probs = run_once("numpy", problem)
        diff = float(np.abs(nb_probs - np_probs).max())
        assert np.allclose(nb_probs, np_probs, atol=1e-9), "kernel paths diverge"
        speedup = np_train / nb_train if nb_train > 0 else float("inf")
        print(f"{n_docs:>6} | {np_train:>10.3f}s | {nb_train:>10.3f}s | "
              f"{speedup:>6.1f}x | {np_pred:>9.3f}s | {nb_pred:>9.3f}s | {diff:.2e}")
    os.environ.pop(kernels.ENV_FLAG, None)


if __name__ == "__main__":
    main()
