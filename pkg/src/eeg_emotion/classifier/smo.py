"""
Binary soft-margin SVM trained by sequential minimal optimization.

The solver works on a precomputed Gram matrix and keeps an error cache
``E = f(x) - y`` with ``f(x) = sum(alpha * y * k(sv, x)) + b``. Every accepted
pair update keeps ``0 <= alpha <= C`` and ``sum(alpha * y) == 0``.
"""

from dataclasses import dataclass, field

import numpy as np

from eeg_emotion.classifier.kernels import gram_matrix, kernel_matrix
from eeg_emotion.config import KernelConfig, SMOConfig
from eeg_emotion.errors import DimensionError, TrainingError
from eeg_emotion.models import EmotionLabel


@dataclass(frozen=True)
class BinaryModel:
    """A trained two-class SVM; positive scores mean the first label of ``pair``."""

    support_vectors: np.ndarray
    dual_coef: np.ndarray
    bias: float
    kernel: KernelConfig
    c: float
    pair: tuple[EmotionLabel, EmotionLabel] | None = None
    support_indices: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=int))
    converged: bool = True
    max_violation: float = 0.0
    n_sweeps: int = 0
    objective_trace: tuple[float, ...] = field(default=(), compare=False, repr=False)

    @property
    def alphas(self) -> np.ndarray:
        return np.abs(self.dual_coef)

    @property
    def n_support(self) -> int:
        return int(self.dual_coef.shape[0])

    @property
    def pair_name(self) -> str:
        if self.pair is None:
            return "-1/+1"
        return f"{self.pair[0].name.lower()}/{self.pair[1].name.lower()}"


def dual_objective(alpha: np.ndarray, y: np.ndarray, K: np.ndarray) -> float:
    """W(alpha) = sum(alpha) - 1/2 * sum_ij alpha_i alpha_j y_i y_j K_ij."""
    ay = alpha * y
    return float(alpha.sum() - 0.5 * ay @ K @ ay)


def kkt_violations(
    alpha: np.ndarray, y: np.ndarray, errors: np.ndarray, c: float, eps: float
) -> np.ndarray:
    """Per-sample KKT violation magnitude given the error cache."""
    r = y * errors
    at_zero = alpha <= eps
    at_c = alpha >= c - eps
    free = ~(at_zero | at_c)
    violation = np.zeros_like(r)
    violation[at_zero] = np.maximum(0.0, -r[at_zero])
    violation[at_c] = np.maximum(0.0, r[at_c])
    violation[free] = np.abs(r[free])
    return violation


def _bias_from_gradient(
    alpha: np.ndarray, y: np.ndarray, K: np.ndarray, c: float, eps: float
) -> float:
    """Bias consistent with the KKT conditions of the current alphas."""
    g = y - K @ (alpha * y)
    at_zero = alpha <= eps
    at_c = alpha >= c - eps
    free = ~(at_zero | at_c)
    if free.any():
        return float(g[free].mean())

    lower = (at_zero & (y > 0)) | (at_c & (y < 0))
    upper = (at_zero & (y < 0)) | (at_c & (y > 0))
    lb = g[lower].max() if lower.any() else None
    ub = g[upper].min() if upper.any() else None
    if lb is None:
        return float(ub)
    if ub is None:
        return float(lb)
    return float(0.5 * (lb + ub))


class _Solver:
    """Mutable SMO state for one binary problem."""

    def __init__(self, K: np.ndarray, y: np.ndarray, smo: SMOConfig, seed: int, record: bool):
        self.K = K
        self.y = y
        self.c = smo.c
        self.tol = smo.tol
        self.eps = smo.alpha_eps
        self.n = y.shape[0]
        self.alpha = np.zeros(self.n)
        self.b = 0.0
        self.errors = -y.astype(float)
        self.rng = np.random.default_rng(seed)
        self.trace: list[float] | None = [0.0] if record else None

    def violates(self, i: int) -> bool:
        r = self.errors[i] * self.y[i]
        return (r < -self.tol and self.alpha[i] < self.c) or (r > self.tol and self.alpha[i] > 0)

    def take_step(self, i: int, j: int) -> bool:
        if i == j:
            return False
        K, y, c = self.K, self.y, self.c
        ai, aj = self.alpha[i], self.alpha[j]
        yi, yj = y[i], y[j]
        Ei, Ej = self.errors[i], self.errors[j]

        if yi != yj:
            low, high = max(0.0, aj - ai), min(c, c + aj - ai)
        else:
            low, high = max(0.0, ai + aj - c), min(c, ai + aj)
        if high - low <= 0.0:
            return False

        eta = K[i, i] + K[j, j] - 2.0 * K[i, j]
        if eta <= 0.0:
            return False

        aj_new = float(np.clip(aj + yj * (Ei - Ej) / eta, low, high))
        if abs(aj_new - aj) < self.eps * (aj_new + aj + self.eps):
            return False
        ai_new = float(np.clip(ai + yi * yj * (aj - aj_new), 0.0, c))

        d_i = yi * (ai_new - ai)
        d_j = yj * (aj_new - aj)
        b1 = self.b - Ei - d_i * K[i, i] - d_j * K[i, j]
        b2 = self.b - Ej - d_i * K[i, j] - d_j * K[j, j]
        if 0.0 < ai_new < c:
            b_new = b1
        elif 0.0 < aj_new < c:
            b_new = b2
        else:
            b_new = 0.5 * (b1 + b2)

        self.errors += d_i * K[i] + d_j * K[j] + (b_new - self.b)
        self.alpha[i], self.alpha[j] = ai_new, aj_new
        self.b = b_new
        if self.trace is not None:
            self.trace.append(dual_objective(self.alpha, y, K))
        return True

    def examine(self, i: int) -> bool:
        """Try a random partner first, then every partner in a shuffled order."""
        j = int(self.rng.integers(self.n - 1))
        if j >= i:
            j += 1
        if self.take_step(i, j):
            return True
        return any(self.take_step(i, int(k)) for k in self.rng.permutation(self.n) if k != j)

    def refresh_bias(self) -> None:
        b_new = _bias_from_gradient(self.alpha, self.y, self.K, self.c, self.eps)
        self.errors += b_new - self.b
        self.b = b_new

    def max_violation(self) -> float:
        return float(kkt_violations(self.alpha, self.y, self.errors, self.c, self.eps).max())


def smo_train_binary(
    X,
    y,
    kernel: KernelConfig,
    smo: SMOConfig | None = None,
    seed: int = 0,
    pair: tuple[EmotionLabel, EmotionLabel] | None = None,
    record_objective: bool = False,
) -> BinaryModel:
    """
    Train a binary SVM on rows of X with targets in {-1, +1}.

    Sweeps over all samples, optimizing each KKT violator jointly with a
    seeded random partner. Training stops once a sweep changes nothing and no
    violation exceeds ``tol``; ``max_passes`` idle sweeps in a row or
    ``max_sweeps`` sweeps in total stop it unconverged.

    Args:
        X: (n, d) training rows, already standardized
        y: n targets in {-1, +1}
        kernel: Kernel family and parameters
        smo: Solver settings (C, tol, pass limits)
        seed: Seed for partner selection
        pair: Label pair the targets encode, recorded on the model
        record_objective: Keep the dual objective after every accepted update

    Returns:
        BinaryModel; ``converged`` is False when a limit was hit, with the
        final ``max_violation``

    Raises:
        TrainingError: Only one class present
        DimensionError: X and y disagree in length
    """
    smo = smo or SMOConfig()
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim != 2 or y.ndim != 1 or X.shape[0] != y.shape[0]:
        raise DimensionError(f"X {X.shape} and y {y.shape} do not match")
    if not np.all(np.isin(y, (-1.0, 1.0))):
        raise TrainingError("targets must be -1 or +1")
    if not ((y > 0).any() and (y < 0).any()):
        raise TrainingError("both classes must be present to train a binary model")

    solver = _Solver(gram_matrix(X, kernel), y, smo, seed, record_objective)
    idle = 0
    sweeps = 0
    converged = False
    while idle < smo.max_passes and sweeps < smo.max_sweeps:
        sweeps += 1
        changed = sum(solver.examine(i) for i in range(solver.n) if solver.violates(i))
        if changed:
            idle = 0
            continue
        solver.refresh_bias()
        if solver.max_violation() <= smo.tol:
            converged = True
            break
        idle += 1

    solver.refresh_bias()
    support = np.flatnonzero(solver.alpha > 0.0)
    return BinaryModel(
        support_vectors=X[support].copy(),
        dual_coef=(solver.alpha * y)[support],
        bias=solver.b,
        kernel=kernel,
        c=smo.c,
        pair=pair,
        support_indices=support,
        converged=converged,
        max_violation=solver.max_violation(),
        n_sweeps=sweeps,
        objective_trace=tuple(solver.trace or ()),
    )


def decision_function(model: BinaryModel, X) -> np.ndarray:
    """Signed scores for rows of X."""
    if model.n_support == 0:
        return np.full(np.atleast_2d(X).shape[0], model.bias)
    return kernel_matrix(model.kernel, X, model.support_vectors) @ model.dual_coef + model.bias


def predict_binary(model: BinaryModel, x) -> float:
    """Signed score of one standardized vector; the sign gives the class."""
    return float(decision_function(model, np.asarray(x, dtype=float).reshape(1, -1))[0])
