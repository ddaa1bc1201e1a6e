"""Tests for kernels, the SMO solver and one-vs-one voting."""

import numpy as np
import pytest
from sklearn.svm import SVC

from eeg_emotion.classifier import (
    LABEL_PAIRS,
    MulticlassModel,
    decision_function,
    dual_objective,
    gram_matrix,
    kernel_eval,
    kernel_matrix,
    pairwise_scores,
    predict,
    predict_binary,
    predict_many,
    smo_train_binary,
    tally_votes,
    train_multiclass,
)
from eeg_emotion.classifier.multiclass import pair_seed
from eeg_emotion.classifier.smo import kkt_violations
from eeg_emotion.config import KernelConfig, SMOConfig
from eeg_emotion.errors import DimensionError, TrainingError
from eeg_emotion.models import (
    LABELS,
    Dataset,
    DatasetEntry,
    EmotionLabel,
    FeatureVector,
)
from tests.helpers import cluster_dataset

KERNELS = [
    KernelConfig(kind="linear"),
    KernelConfig(kind="rbf", gamma=0.5),
    KernelConfig(kind="gaussian", sigma=1.5),
    KernelConfig(kind="polynomial", gamma=0.2, degree=3),
]

HAPPY, ANGRY, SAD, RELAXED = LABELS


class TestKernels:
    """Test the four kernel families."""

    def test_rbf_identity(self):
        """Test k(x, x) == 1 for rbf."""
        x = np.array([1.0, -2.0, 3.0])

        assert kernel_eval(KernelConfig(kind="rbf", gamma=0.3), x, x) == 1.0

    def test_linear_orthogonal(self):
        """Test that orthogonal vectors give 0 under the linear kernel."""
        assert kernel_eval(KernelConfig(kind="linear"), [1.0, 0.0], [0.0, 4.0]) == 0.0

    def test_polynomial_value(self):
        """Test (1 * 2 + 1)^2 == 9."""
        cfg = KernelConfig(kind="polynomial", gamma=1.0, coef0=1.0, degree=2)

        assert kernel_eval(cfg, [1.0, 1.0], [1.0, 1.0]) == 9.0

    def test_gaussian_width(self):
        """Test exp(-d^2 / (2 sigma^2)) at distance 2, sigma 1."""
        cfg = KernelConfig(kind="gaussian", sigma=1.0)

        assert kernel_eval(cfg, [0.0, 0.0], [2.0, 0.0]) == pytest.approx(np.exp(-2.0))

    def test_dimension_mismatch(self):
        """Test that vectors of different length are rejected."""
        with pytest.raises(DimensionError):
            kernel_eval(KernelConfig(kind="linear"), [1.0, 2.0], [1.0, 2.0, 3.0])

    def test_single_row_gram(self):
        """Test that n = 1 gives the 1 x 1 matrix [k(x, x)]."""
        cfg = KernelConfig(kind="linear")

        assert gram_matrix(np.array([[3.0, 4.0]]), cfg).tolist() == [[25.0]]

    def test_rbf_diagonal(self):
        """Test that an rbf Gram matrix has a unit diagonal."""
        X = np.random.default_rng(0).normal(size=(6, 34))

        K = gram_matrix(X, KernelConfig(kind="rbf"))

        assert np.diag(K).tolist() == [1.0] * 6

    @pytest.mark.parametrize("cfg", KERNELS, ids=lambda c: c.kind)
    def test_gram_symmetric_psd(self, cfg):
        """Test symmetry and a smallest eigenvalue above -1e-8 on 200 random 8-point sets."""
        rng = np.random.default_rng(1)
        for _ in range(200):
            X = rng.normal(size=(8, 34)) * rng.uniform(0.1, 1.0)

            K = gram_matrix(X, cfg)

            np.testing.assert_allclose(K, K.T, rtol=0, atol=1e-12)
            assert np.linalg.eigvalsh(K).min() >= -1e-8

    @pytest.mark.parametrize("cfg", KERNELS, ids=lambda c: c.kind)
    def test_matrix_matches_pairwise(self, cfg):
        """Test that kernel_matrix agrees with kernel_eval entry by entry."""
        rng = np.random.default_rng(2)
        X, Y = rng.normal(size=(3, 4)), rng.normal(size=(2, 4))

        K = kernel_matrix(cfg, X, Y)

        for i in range(3):
            for j in range(2):
                assert K[i, j] == pytest.approx(kernel_eval(cfg, X[i], Y[j]))


# ---------------------------------------------------------------------------
# Binary SMO
# ---------------------------------------------------------------------------

XOR_X = np.array([[0.0, 0.0], [1.0, 1.0], [0.0, 1.0], [1.0, 0.0]])
XOR_Y = np.array([-1.0, -1.0, 1.0, 1.0])


def _two_points():
    X = np.zeros((2, 34))
    X[1, 0] = 2.0
    return X, np.array([-1.0, 1.0])


def _noisy_problem(seed: int = 3, n: int = 40):
    rng = np.random.default_rng(seed)
    y = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    X = rng.normal(size=(n, 5)) + 0.8 * y[:, None]
    return X, y


class TestSmoTrainBinary:
    """Test the binary solver."""

    def test_two_point_midpoint(self):
        """Test that the max-margin boundary of two points is their midpoint."""
        X, y = _two_points()
        model = smo_train_binary(X, y, KernelConfig(kind="linear"), SMOConfig(c=100.0))
        midpoint = np.zeros(34)
        midpoint[0] = 1.0

        assert model.converged
        assert predict_binary(model, midpoint) == pytest.approx(0.0, abs=1e-6)
        assert predict_binary(model, X[1]) == pytest.approx(1.0, abs=1e-6)
        assert predict_binary(model, X[0]) == pytest.approx(-1.0, abs=1e-6)

    def test_xor_rbf(self):
        """Test 100% training accuracy on XOR with rbf gamma 1, C 10."""
        model = smo_train_binary(
            XOR_X, XOR_Y, KernelConfig(kind="rbf", gamma=1.0), SMOConfig(c=10.0)
        )

        assert model.converged
        assert np.array_equal(np.sign(decision_function(model, XOR_X)), XOR_Y)

    @pytest.mark.parametrize("cfg", KERNELS, ids=lambda c: c.kind)
    def test_constraints_hold(self, cfg):
        """Test box and equality constraints on a converged model."""
        X, y = _noisy_problem()

        model = smo_train_binary(X, y, cfg, SMOConfig(c=1.0))

        assert model.converged
        assert abs(model.dual_coef.sum()) <= 1e-6
        assert np.all(model.alphas > 0)
        assert np.all(model.alphas <= 1.0 + 1e-12)

    def test_kkt_at_termination(self):
        """Test that no KKT violation exceeds tol once converged."""
        X, y = _noisy_problem()
        smo = SMOConfig(c=1.0, tol=1e-3)
        cfg = KernelConfig(kind="rbf", gamma=0.2)

        model = smo_train_binary(X, y, cfg, smo)
        alpha = np.zeros(len(y))
        alpha[model.support_indices] = model.alphas
        errors = decision_function(model, X) - y

        assert model.converged
        assert kkt_violations(alpha, y, errors, smo.c, smo.alpha_eps).max() <= 1e-3 + 1e-9

    def test_free_support_vectors_on_margin(self):
        """Test |score| == 1 within tol for support vectors with 0 < alpha < C."""
        X, y = _noisy_problem()
        smo = SMOConfig(c=1.0, tol=1e-3)

        model = smo_train_binary(X, y, KernelConfig(kind="linear"), smo)
        free = (model.alphas > 1e-6) & (model.alphas < smo.c - 1e-6)
        scores = decision_function(model, model.support_vectors[free])

        assert free.any()
        np.testing.assert_allclose(np.abs(scores), 1.0, atol=smo.tol + 1e-6)

    def test_objective_never_decreases(self):
        """Test the dual objective across accepted pair updates."""
        X, y = _noisy_problem(seed=7)

        model = smo_train_binary(
            X, y, KernelConfig(kind="polynomial", gamma=0.2), record_objective=True
        )
        trace = np.array(model.objective_trace)

        assert len(trace) > 2
        assert np.all(np.diff(trace) >= -1e-10)

    def test_matches_reference_solver(self):
        """Test that the dual optimum agrees with libsvm on the same Gram matrix."""
        X, y = _noisy_problem(seed=5, n=30)
        cfg = KernelConfig(kind="rbf", gamma=0.3)
        K = gram_matrix(X, cfg)

        model = smo_train_binary(X, y, cfg, SMOConfig(c=1.0, tol=1e-4))
        ours = np.zeros(len(y))
        ours[model.support_indices] = model.alphas
        reference = SVC(C=1.0, kernel="precomputed", tol=1e-6).fit(K, y)
        theirs = np.zeros(len(y))
        theirs[reference.support_] = np.abs(reference.dual_coef_[0])

        assert dual_objective(ours, y, K) == pytest.approx(dual_objective(theirs, y, K), rel=5e-3)

    @pytest.mark.parametrize("cfg", KERNELS, ids=lambda c: c.kind)
    def test_small_problems_reach_the_optimum(self, cfg):
        """Test 20 random 5-sample problems for optimality, KKT and constraints."""
        rng = np.random.default_rng(17)
        smo = SMOConfig(c=1.0, tol=1e-3)
        y = np.array([1.0, -1.0, 1.0, -1.0, 1.0])
        for _ in range(20):
            X = rng.normal(size=(5, 3))
            K = gram_matrix(X, cfg)

            model = smo_train_binary(X, y, cfg, smo)
            alpha = np.zeros(len(y))
            alpha[model.support_indices] = model.alphas
            reference = SVC(C=smo.c, kernel="precomputed", tol=1e-8).fit(K, y)
            optimum = np.zeros(len(y))
            optimum[reference.support_] = np.abs(reference.dual_coef_[0])
            errors = decision_function(model, X) - y

            assert model.converged
            assert dual_objective(alpha, y, K) == pytest.approx(
                dual_objective(optimum, y, K), abs=1e-3
            )
            assert kkt_violations(alpha, y, errors, smo.c, smo.alpha_eps).max() <= smo.tol + 1e-9
            assert np.all(alpha >= -1e-6)
            assert np.all(alpha <= smo.c + 1e-6)
            assert abs(alpha @ y) <= 1e-6

    def test_far_point_scores_bias(self):
        """Test that an rbf score decays to the bias far from every support vector."""
        model = smo_train_binary(XOR_X, XOR_Y, KernelConfig(kind="rbf", gamma=1.0))

        assert predict_binary(model, [100.0, 100.0]) == pytest.approx(model.bias, abs=1e-12)

    def test_deterministic(self):
        """Test that the same seed gives the same model."""
        X, y = _noisy_problem()
        cfg = KernelConfig(kind="rbf", gamma=0.2)

        a = smo_train_binary(X, y, cfg, seed=4)
        b = smo_train_binary(X, y, cfg, seed=4)

        assert np.array_equal(a.dual_coef, b.dual_coef)
        assert a.bias == b.bias

    def test_single_class_rejected(self):
        """Test that training needs both classes."""
        with pytest.raises(TrainingError, match="both classes"):
            smo_train_binary(XOR_X, np.ones(4), KernelConfig(kind="linear"))

    def test_bad_targets(self):
        """Test that targets other than -1/+1 are rejected."""
        with pytest.raises(TrainingError, match="-1 or \\+1"):
            smo_train_binary(XOR_X, np.array([0.0, 1.0, 1.0, 0.0]), KernelConfig(kind="linear"))

    def test_length_mismatch(self):
        """Test that X and y must agree in length."""
        with pytest.raises(DimensionError):
            smo_train_binary(XOR_X, XOR_Y[:3], KernelConfig(kind="linear"))

    def test_sweep_limit_reports_unconverged(self):
        """Test that hitting max_sweeps returns a flagged model instead of failing."""
        X, y = _noisy_problem(n=60)

        model = smo_train_binary(
            X, y, KernelConfig(kind="rbf", gamma=0.5), SMOConfig(c=100.0, max_sweeps=1)
        )

        assert model.n_sweeps == 1
        assert not model.converged
        assert model.max_violation > 1e-3


# ---------------------------------------------------------------------------
# One-vs-one
# ---------------------------------------------------------------------------


class TestTallyVotes:
    """Test the vote count and its tie-break."""

    def test_majority(self):
        """Test that three wins beat the rest."""
        decisions = [(HAPPY, 1.0)] * 3 + [(SAD, 5.0)] * 2 + [(ANGRY, 9.0)]

        assert tally_votes(decisions) is HAPPY

    def test_margin_breaks_tie(self):
        """Test Happy 2 votes / margin 3.1 against Angry 2 votes / margin 2.0."""
        decisions = [
            (HAPPY, 1.6),
            (HAPPY, -1.5),
            (ANGRY, 1.0),
            (ANGRY, -1.0),
            (SAD, 0.2),
            (RELAXED, 0.3),
        ]

        assert tally_votes(decisions) is HAPPY

    def test_lowest_quadrant_breaks_full_tie(self):
        """Test that equal votes and margins go to the lowest quadrant."""
        decisions = [(SAD, 1.0)] * 2 + [(ANGRY, 1.0)] * 2 + [(HAPPY, 0.5), (RELAXED, 1.5)]

        assert tally_votes(decisions) is ANGRY


class TestMulticlass:
    """Test training and prediction over the six label pairs."""

    def test_pairs(self):
        """Test the six pairs with the lower quadrant first."""
        assert len(LABEL_PAIRS) == 6
        assert all(a < b for a, b in LABEL_PAIRS)

    def test_separable_clusters(self, clusters):
        """Test 100% training accuracy on four separated clusters."""
        model = train_multiclass(clusters, KernelConfig(kind="linear"))

        predictions = predict_many(model, clusters.feature_matrix())

        assert [int(p) for p in predictions] == clusters.labels.tolist()
        assert len(model.models) == 6
        assert not model.unconverged

    @pytest.mark.parametrize("kind", ["rbf", "gaussian", "polynomial"])
    def test_other_kernels_separate_clusters(self, kind):
        """Test that every kernel family fits the clusters."""
        data = cluster_dataset(per_label=6)

        model = train_multiclass(data, KernelConfig(kind=kind, sigma=3.0))

        assert [int(p) for p in predict_many(model, data.feature_matrix())] == data.labels.tolist()

    def test_predict_single_vector(self, clusters):
        """Test predict on one raw vector."""
        model = train_multiclass(clusters, KernelConfig(kind="linear"))
        vector = np.zeros(34)
        vector[16:24] = 5.0

        assert predict(model, vector) is SAD

    def test_missing_label(self):
        """Test that a training set without Relaxed is rejected."""
        data = cluster_dataset(per_label=3)
        data = data.subset([i for i, e in enumerate(data) if e.label is not RELAXED])

        with pytest.raises(TrainingError, match="relaxed"):
            train_multiclass(data, KernelConfig(kind="linear"))

    def test_identical_rows_do_not_crash(self):
        """Test that all-identical training vectors train and predict without errors."""
        entries = tuple(
            DatasetEntry(FeatureVector(np.ones(34)), label, "S01", f"V{i}")
            for i, label in enumerate(LABELS * 2)
        )

        smo = SMOConfig(max_passes=2)

        model = train_multiclass(Dataset(entries), KernelConfig(kind="rbf"), smo)

        assert model.standardizer.constant_columns == list(range(34))
        assert predict(model, np.ones(34)) in LABELS

    def test_pair_seeds_differ(self):
        """Test that each pair gets its own solver seed."""
        seeds = {pair_seed(0, pair) for pair in LABEL_PAIRS}

        assert len(seeds) == 6

    def test_metadata(self, clusters):
        """Test training-set counts stored with the model."""
        model = train_multiclass(clusters, KernelConfig(kind="linear"))
        counts = model.metadata["label_counts"]

        assert model.metadata["n_train"] == 40
        assert counts == {"happy": 10, "angry": 10, "sad": 10, "relaxed": 10}

    def test_rejects_incomplete_pair_set(self, clusters):
        """Test that a model needs exactly one binary model per pair."""
        model = train_multiclass(clusters, KernelConfig(kind="linear"))

        with pytest.raises(TrainingError):
            MulticlassModel(model.models[:5], model.standardizer, model.kernel, model.c, 0)

    def test_label_of_pair_positive_side(self):
        """Test that a non-negative score votes for the first label of the pair."""
        data = cluster_dataset(per_label=4)
        model = train_multiclass(data, KernelConfig(kind="linear"))
        happy_row = data.feature_matrix()[data.labels == int(EmotionLabel.HAPPY)][:1]

        scores = dict(zip(LABEL_PAIRS, pairwise_scores(model, happy_row)[0], strict=True))

        assert scores[(HAPPY, ANGRY)] > 0
        assert scores[(HAPPY, SAD)] > 0
        assert scores[(HAPPY, RELAXED)] > 0
