"""Hot numeric kernels for the reference backend.

Two interchangeable implementations of the same math live here: an
explicit-loop version compiled with numba's @njit, and a vectorized
pure-numpy fallback. The CLAUSEFAIR_KERNELS environment variable picks
the path ("numba", "numpy", or the default "auto" = numba when
importable). Both paths consume the same precomputed permutation
tensor, so a fixed seed gives reproducible training on either one;
benchmarks/bench_kernels.py compares their outputs and speed.
"""

from __future__ import annotations

import os

import numpy as np

from clausefair.errors import UsageError

ENV_FLAG = "CLAUSEFAIR_KERNELS"


def _train_loop(
    indptr, indices, values, y, weights, bias, order,
    batch_size, lr, warmup_steps, weight_decay,
):
    epochs = order.shape[0]
    n_docs = order.shape[1]
    n_classes = weights.shape[1]
    step = 0
    for e in range(epochs):
        for start in range(0, n_docs, batch_size):
            end = min(start + batch_size, n_docs)
            bs = end - start
            step += 1
            if warmup_steps > 0 and step < warmup_steps:
                lr_t = lr * step / warmup_steps
            else:
                lr_t = lr
            grad = np.zeros((bs, n_classes))
            for k in range(bs):
                doc = order[e, start + k]
                logits = np.zeros(n_classes)
                for c in range(n_classes):
                    logits[c] = bias[c]
                for j in range(indptr[doc], indptr[doc + 1]):
                    i = indices[j]
                    v = values[j]
                    for c in range(n_classes):
                        logits[c] += v * weights[i, c]
                m = logits[0]
                for c in range(1, n_classes):
                    if logits[c] > m:
                        m = logits[c]
                s = 0.0
                for c in range(n_classes):
                    logits[c] = np.exp(logits[c] - m)
                    s += logits[c]
                for c in range(n_classes):
                    grad[k, c] = logits[c] / s
                grad[k, y[doc]] -= 1.0
            scale = lr_t / bs
            for k in range(bs):
                doc = order[e, start + k]
                for j in range(indptr[doc], indptr[doc + 1]):
                    i = indices[j]
                    v = values[j]
                    for c in range(n_classes):
                        weights[i, c] -= scale * v * grad[k, c]
            for c in range(n_classes):
                gsum = 0.0
                for k in range(bs):
                    gsum += grad[k, c]
                bias[c] -= scale * gsum
        if weight_decay > 0.0:
            decay = 1.0 - lr * weight_decay
            for i in range(weights.shape[0]):
                for c in range(n_classes):
                    weights[i, c] *= decay


def _predict_loop(indptr, indices, values, weights, bias, out):
    n_docs = indptr.shape[0] - 1
    n_classes = weights.shape[1]
    for doc in range(n_docs):
        logits = np.zeros(n_classes)
        for c in range(n_classes):
            logits[c] = bias[c]
        for j in range(indptr[doc], indptr[doc + 1]):
            i = indices[j]
            v = values[j]
            for c in range(n_classes):
                logits[c] += v * weights[i, c]
        m = logits[0]
        for c in range(1, n_classes):
            if logits[c] > m:
                m = logits[c]
        s = 0.0
        for c in range(n_classes):
            logits[c] = np.exp(logits[c] - m)
            s += logits[c]
        for c in range(n_classes):
            out[doc, c] = logits[c] / s


try:
    import numba

    _train_loop_jit = numba.njit(cache=True)(_train_loop)
    _predict_loop_jit = numba.njit(cache=True)(_predict_loop)
    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag instead
    _train_loop_jit = None
    _predict_loop_jit = None
    HAS_NUMBA = False


def _softmax_rows(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


def _gather(indptr, indices, values, docs):
    """Flatten the CSR rows of `docs` into (row segment, index, value)."""
    counts = indptr[docs + 1] - indptr[docs]
    nz_pos = np.concatenate(
        [np.arange(indptr[d], indptr[d + 1]) for d in docs]
    ) if len(docs) else np.zeros(0, dtype=np.int64)
    seg = np.repeat(np.arange(len(docs)), counts)
    return seg, indices[nz_pos], values[nz_pos]


def _train_numpy(
    indptr, indices, values, y, weights, bias, order,
    batch_size, lr, warmup_steps, weight_decay,
):
    epochs, n_docs = order.shape
    step = 0
    for e in range(epochs):
        for start in range(0, n_docs, batch_size):
            docs = order[e, start : start + batch_size]
            bs = len(docs)
            step += 1
            if warmup_steps > 0 and step < warmup_steps:
                lr_t = lr * step / warmup_steps
            else:
                lr_t = lr
            seg, idx, val = _gather(indptr, indices, values, docs)
            logits = np.tile(bias, (bs, 1))
            np.add.at(logits, seg, val[:, None] * weights[idx])
            grad = _softmax_rows(logits)
            grad[np.arange(bs), y[docs]] -= 1.0
            scale = lr_t / bs
            np.add.at(weights, idx, -scale * val[:, None] * grad[seg])
            bias -= scale * grad.sum(axis=0)
        if weight_decay > 0.0:
            weights *= 1.0 - lr * weight_decay


def _predict_numpy(indptr, indices, values, weights, bias, out):
    n_docs = indptr.shape[0] - 1
    docs = np.arange(n_docs)
    seg, idx, val = _gather(indptr, indices, values, docs)
    logits = np.tile(bias, (n_docs, 1))
    np.add.at(logits, seg, val[:, None] * weights[idx])
    out[:] = _softmax_rows(logits)


def kernel_mode() -> str:
    """Resolve the active kernel path from CLAUSEFAIR_KERNELS."""
    requested = os.environ.get(ENV_FLAG, "auto").lower()
    if requested in ("numpy", "fallback"):
        return "numpy"
    if requested == "numba":
        if not HAS_NUMBA:
            raise UsageError(f"{ENV_FLAG}=numba but numba is not importable")
        return "numba"
    if requested != "auto":
        raise UsageError(f"{ENV_FLAG} must be auto, numba, or numpy: {requested!r}")
    return "numba" if HAS_NUMBA else "numpy"


def train_kernel(
    indptr, indices, values, y, weights, bias, order,
    batch_size, lr, warmup_steps, weight_decay,
):
    """Mini-batch softmax-regression training; mutates weights and bias."""
    impl = _train_loop_jit if kernel_mode() == "numba" else _train_numpy
    impl(
        indptr, indices, values, y, weights, bias, order,
        batch_size, lr, warmup_steps, weight_decay,
    )


def predict_kernel(indptr, indices, values, weights, bias) -> np.ndarray:
    """Class probabilities for every CSR row."""
    out = np.zeros((indptr.shape[0] - 1, weights.shape[1]))
    impl = _predict_loop_jit if kernel_mode() == "numba" else _predict_numpy
    impl(indptr, indices, values, weights, bias, out)
    return out
