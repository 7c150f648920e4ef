import numpy as np
import pytest

from clausefair.classifier import kernels
from clausefair.classifier.features import FeatureSpec, build_csr
from clausefair.errors import UsageError


def small_problem(seed=0, n_docs=40, n_features=1 << 10):
    rng = np.random.default_rng(seed)
    texts = [
        " ".join(rng.choice(["alpha", "bravo", "charlie", "delta", "echo", "golf"], size=6))
        for _ in range(n_docs)
    ]
    spec = FeatureSpec(n_features=n_features, word_ngrams=(1, 2), char_ngrams=(3, 4))
    indptr, indices, values = build_csr(texts, spec, max_tokens=32)
    y = rng.integers(0, 3, size=n_docs).astype(np.int64)
    order = np.stack([rng.permutation(n_docs) for _ in range(5)]).astype(np.int64)
    return indptr, indices, values, y, order, n_features


def run_path(monkeypatch, mode, problem):
    indptr, indices, values, y, order, n_features = problem
    monkeypatch.setenv(kernels.ENV_FLAG, mode)
    weights = np.zeros((n_features, 3))
    bias = np.zeros(3)
    kernels.train_kernel(
        indptr, indices, values, y, weights, bias, order,
        8, 0.5, 3, 1e-3,
    )
    probs = kernels.predict_kernel(indptr, indices, values, weights, bias)
    return weights, bias, probs


@pytest.mark.skipif(not kernels.HAS_NUMBA, reason="numba not installed")
def test_numba_and_numpy_paths_agree(monkeypatch):
    problem = small_problem()
    w_nb, b_nb, p_nb = run_path(monkeypatch, "numba", problem)
    w_np, b_np, p_np = run_path(monkeypatch, "numpy", problem)
    np.testing.assert_allclose(w_nb, w_np, atol=1e-10)
    np.testing.assert_allclose(b_nb, b_np, atol=1e-10)
    np.testing.assert_allclose(p_nb, p_np, atol=1e-12)


def test_env_flag_selects_numpy(monkeypatch):
    monkeypatch.setenv(kernels.ENV_FLAG, "numpy")
    assert kernels.kernel_mode() == "numpy"


def test_env_flag_auto(monkeypatch):
    monkeypatch.delenv(kernels.ENV_FLAG, raising=False)
    assert kernels.kernel_mode() == ("numba" if kernels.HAS_NUMBA else "numpy")


def test_env_flag_rejects_garbage(monkeypatch):
    monkeypatch.setenv(kernels.ENV_FLAG, "fortran")
    with pytest.raises(UsageError):
        kernels.kernel_mode()


def test_predictions_are_probabilities(monkeypatch):
    problem = small_problem(seed=3)
    monkeypatch.setenv(kernels.ENV_FLAG, "numpy")
    _, _, probs = run_path(monkeypatch, "numpy", problem)
    assert (probs >= 0).all()
    np.testing.assert_allclose(probs.sum(axis=1), 1.0, atol=1e-9)


def test_empty_docs_get_bias_distribution(monkeypatch):
    monkeypatch.setenv(kernels.ENV_FLAG, "numpy")
    spec = FeatureSpec(n_features=64)
    indptr, indices, values = build_csr(["", ""], spec, max_tokens=8)
    weights = np.zeros((64, 3))
    bias = np.array([0.0, 1.0, 0.0])
    probs = kernels.predict_kernel(indptr, indices, values, weights, bias)
    assert probs.shape == (2, 3)
    assert probs[0].argmax() == 1
