"""Monte Carlo realisation of the tensor-sum operator with GUE matrices.

Independent shifted GUE samples W_1, ..., W_2d are combined into

    Delta = (1/sqrt(d)) * sum_j ( W_j (x) conj(W_{j+d}) - mean_j mean_{j+d} I ),

whose spectral moments converge (in expectation, as the dimension grows) to
delta^m times the exact moments computed by :mod:`bifree.tensor_clt` for
shifted-semicircle legs.  The module samples, estimates E tr(Delta^m) with
standard errors, checks the per-sample transpose-trace identity, and scores
the estimates against the exact predictions as z-values.

Reproducibility contract: every matrix entry is drawn from a counter-based
Philox stream keyed by (seed, trial, matrix index), with a fixed entry order
(diagonal, then upper-triangle real parts, then imaginary parts), so results
depend only on the seed and trial count, never on scheduling.

Traces of powers are computed densely for small dimension and, above the
dense cut-off, by expanding Delta^m over words in its Kronecker summands, so
the full n^2 x n^2 matrix is never formed; both paths agree (tested).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .cumulants import CumulantSeq, Rational, moments_from_free_cumulants
from .limits import ResourceLimitError
from .tensor_clt import SqrtQuotient, TensorCLTInput, exact_moment_Sn

DENSE_DIM_LIMIT = 32  # dense n^2 x n^2 powering up to here; words above
MAX_DIMENSION = 512


@dataclass(frozen=True)
class EnsembleSpec:
    """Shifted GUE ensemble: sample = GUE(sigma)/sqrt(n)-normalised + lam I.

    The limiting spectral distribution is the semicircle of variance sigma^2
    shifted by lam, so exact tensor-sum predictions are available.
    """

    dim: int
    sigma: float = 1.0
    lam: float = 0.0
    kind: str = "gue"

    def __post_init__(self):
        if self.kind != "gue":
            raise ValueError(f"unsupported ensemble kind: {self.kind}")
        if self.dim < 1:
            raise ValueError("dimension must be >= 1")


@dataclass(frozen=True)
class SimConfig:
    """One Monte Carlo run: d tensor summands of n x n matrices."""

    d: int
    n: int
    trials: int
    seed: int
    max_moment: int = 4

    def __post_init__(self):
        if self.d < 1 or self.n < 1:
            raise ValueError("d and n must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.max_moment < 1:
            raise ValueError("max_moment must be >= 1")
        if self.n > MAX_DIMENSION:
            raise ResourceLimitError(
                f"matrix dimension {self.n} exceeds the cap {MAX_DIMENSION}"
            )


def matrix_rng(seed: int, trial: int, matrix_index: int) -> np.random.Generator:
    """Counter-based stream for one matrix: key = (seed, trial, index)."""
    key = np.array(
        [
            np.uint64(seed & 0xFFFFFFFFFFFFFFFF),
            np.uint64(((trial << 16) | matrix_index) & 0xFFFFFFFFFFFFFFFF),
        ],
        dtype=np.uint64,
    )
    return np.random.Generator(np.random.Philox(key=key))


def sample_hermitian(spec: EnsembleSpec, rng: np.random.Generator) -> np.ndarray:
    """One Hermitian sample, built symmetrically (no symmetrisation step):
    real N(0, sigma^2/n) diagonal plus lam, complex upper triangle of total
    variance sigma^2/n mirrored by exact conjugation."""
    n = spec.dim
    diag_scale = spec.sigma / math.sqrt(n)
    off_scale = spec.sigma / math.sqrt(2 * n)
    diag = rng.standard_normal(n) * diag_scale + spec.lam
    k = n * (n - 1) // 2
    re = rng.standard_normal(k) * off_scale
    im = rng.standard_normal(k) * off_scale
    out = np.zeros((n, n), dtype=np.complex128)
    rows, cols = np.triu_indices(n, 1)
    vals = re + 1j * im
    out[rows, cols] = vals
    out[cols, rows] = vals.conj()
    out[np.arange(n), np.arange(n)] = diag
    return out


def sample_matrices(config: SimConfig, spec: EnsembleSpec, trial: int) -> list[np.ndarray]:
    """The 2d independent samples of one trial, in matrix-index order."""
    return [
        sample_hermitian(spec, matrix_rng(config.seed, trial, j))
        for j in range(2 * config.d)
    ]


def build_delta(matrices: Sequence[np.ndarray], means: Sequence[float]) -> np.ndarray:
    """The n^2 x n^2 operator (1/sqrt(d)) sum_j (W_j (x) conj(W_{j+d}) -
    means[j] means[j+d] I).  Hermitian whenever the inputs are."""
    if len(matrices) % 2:
        raise ValueError("need an even number of matrices (2d of them)")
    d = len(matrices) // 2
    n = matrices[0].shape[0]
    if any(w.shape != (n, n) for w in matrices):
        raise ValueError("all matrices must share the same square shape")
    if len(means) != len(matrices):
        raise ValueError("need one mean per matrix")
    total = np.zeros((n * n, n * n), dtype=np.complex128)
    for j in range(d):
        total += np.kron(matrices[j], matrices[j + d].conj())
        shift = means[j] * means[j + d]
        if shift:
            total -= shift * np.eye(n * n)
    return total / math.sqrt(d)


def build_kraus(kraus_ops: Sequence[np.ndarray]) -> np.ndarray:
    """Kraus operator of a channel: sum_j K_j (x) conj(K_j)."""
    n = kraus_ops[0].shape[0]
    if any(k.shape != (n, n) for k in kraus_ops):
        raise ValueError("all Kraus operators must share the same square shape")
    total = np.zeros((n * n, n * n), dtype=np.complex128)
    for op in kraus_ops:
        total += np.kron(op, op.conj())
    return total


def _traces_dense(matrices, means, d, n, max_moment) -> list[float]:
    delta = build_delta(matrices, means)
    power = np.eye(n * n, dtype=np.complex128)
    out = []
    for _ in range(max_moment):
        power = power @ delta
        out.append(float(np.trace(power).real) / (n * n))
    return out


def _traces_factorised(matrices, means, d, n, max_moment) -> list[float]:
    """tr(Delta^m)/n^2 via words over the Kronecker summands: the trace of a
    product of Kronecker products splits into one factor per side."""
    scale = 1.0 / math.sqrt(d)
    gamma = -scale * sum(means[j] * means[j + d] for j in range(d))
    left = [scale * matrices[j] for j in range(d)]
    right = [matrices[j + d].conj() for j in range(d)]
    if gamma:
        left.append(gamma * np.eye(n, dtype=np.complex128))
        right.append(np.eye(n, dtype=np.complex128))
    acc = [0.0] * max_moment

    def walk(depth: int, left_prod: np.ndarray, right_prod: np.ndarray) -> None:
        for lm, rm in zip(left, right):
            lp = left_prod @ lm
            rp = right_prod @ rm
            acc[depth] += (np.trace(lp) * np.trace(rp)).real / (n * n)
            if depth + 1 < max_moment:
                walk(depth + 1, lp, rp)

    eye = np.eye(n, dtype=np.complex128)
    walk(0, eye, eye)
    return acc


def trial_traces(
    config: SimConfig, spec: EnsembleSpec, trial: int, empirical_means: bool = False
) -> list[float]:
    """Normalised traces tr(Delta^m)/n^2, m = 1..max_moment, for one trial.

    By default the subtracted means are the analytic values lam (the operator
    is defined with true expectations).  With ``empirical_means`` the sampled
    normalised traces are subtracted instead; that estimator is biased,
    because the fluctuation of tr(W) correlates with the tensor term.
    """
    matrices = sample_matrices(config, spec, trial)
    if empirical_means:
        means = [float(np.trace(w).real) / config.n for w in matrices]
    else:
        means = [spec.lam] * (2 * config.d)
    args = (matrices, means, config.d, config.n, config.max_moment)
    if config.n <= DENSE_DIM_LIMIT:
        return _traces_dense(*args)
    return _traces_factorised(*args)


@dataclass(frozen=True)
class MomentEstimate:
    m: int
    mean: float
    std_error: float | None  # None when a single trial makes it undefined


def empirical_moments(
    config: SimConfig, spec: EnsembleSpec, empirical_means: bool = False
) -> list[MomentEstimate]:
    """Sample mean and standard error of E tr(Delta^m) over the trials.

    Deterministic given (seed, trials): trials use disjoint counter-based
    streams and are reduced in a fixed order.  ``empirical_means`` switches
    the subtracted means to per-sample traces; see :func:`trial_traces` for
    the bias warning.
    """
    values = np.array(
        [trial_traces(config, spec, t, empirical_means) for t in range(config.trials)]
    )  # shape (trials, max_moment)
    out = []
    for m in range(1, config.max_moment + 1):
        col = values[:, m - 1]
        mean = float(np.mean(col))
        if config.trials >= 2:
            se = float(np.std(col, ddof=1) / math.sqrt(config.trials))
        else:
            se = None
        out.append(MomentEstimate(m=m, mean=mean, std_error=se))
    return out


def transpose_trace_check(samples: Sequence[np.ndarray], word: Sequence[int]) -> float:
    """Relative deviation between tr(X_{w_k} ... X_{w_1}) and
    tr(conj(X_{w_1}) ... conj(X_{w_k})); exactly zero in exact arithmetic for
    Hermitian samples, so only float roundoff remains."""
    if not word:
        raise ValueError("word must be non-empty")
    n = samples[0].shape[0]
    reversed_prod = np.eye(n, dtype=np.complex128)
    for idx in reversed(word):
        reversed_prod = reversed_prod @ samples[idx]
    conj_prod = np.eye(n, dtype=np.complex128)
    for idx in word:
        conj_prod = conj_prod @ samples[idx].conj()
    t1 = np.trace(reversed_prod) / n
    t2 = np.trace(conj_prod) / n
    return abs(t1 - t2) / max(1.0, abs(t1), abs(t2))


def shifted_semicircle_input(lam: Rational, sigma: Rational, order: int) -> TensorCLTInput:
    """Tensor CLT input for legs distributed as the limiting law of a shifted
    GUE sample: free cumulants (lam, sigma^2, 0, 0, ...)."""
    order = max(order, 2)
    kappas = (Fraction(lam), Fraction(sigma) ** 2) + (Fraction(0),) * (order - 2)
    ms = moments_from_free_cumulants(CumulantSeq(kappas))
    return TensorCLTInput.from_legs(ms, ms)


def exact_trace_predictions(
    d: int, lam: Rational, sigma: Rational, max_moment: int
) -> list[float]:
    """Large-n limits of E tr(Delta^m): delta^m times the exact tensor-sum
    moments at n = d summands.  Exact rationals until the final float."""
    inp = shifted_semicircle_input(lam, sigma, max_moment)
    out = []
    for m in range(1, max_moment + 1):
        moment = exact_moment_Sn(m, d, inp)
        if isinstance(moment, SqrtQuotient):
            # delta^m / sqrt(delta^2 d) leaves a whole power of delta^2 and 1/sqrt(d)
            value = float(inp.delta2 ** ((m - 1) // 2) * moment.coeff) / math.sqrt(d)
        else:
            value = float(inp.delta2 ** (m // 2) * moment)
        out.append(value)
    return out


@dataclass(frozen=True)
class ComparisonRow:
    m: int
    mean: float
    std_error: float | None
    exact: float
    z: float


@dataclass(frozen=True)
class ComparisonResult:
    rows: tuple[ComparisonRow, ...]
    z_threshold: float

    @property
    def passed(self) -> bool:
        return all(abs(r.z) <= self.z_threshold for r in self.rows)


def compare_to_prediction(
    estimates: Sequence[MomentEstimate],
    exact: Sequence[float],
    z_threshold: float = 3.0,
) -> ComparisonResult:
    """z-scores (mean - exact)/std_error per order, with a pass/fail verdict
    at the configured threshold."""
    if len(exact) < len(estimates):
        raise ValueError("missing exact values for some orders")
    rows = []
    for est, ex in zip(estimates, exact):
        if est.std_error is None or est.std_error == 0.0:
            z = 0.0 if est.mean == ex else math.inf
        else:
            z = (est.mean - ex) / est.std_error
        rows.append(
            ComparisonRow(m=est.m, mean=est.mean, std_error=est.std_error, exact=ex, z=z)
        )
    return ComparisonResult(rows=tuple(rows), z_threshold=z_threshold)


def dump_spectrum(config: SimConfig, spec: EnsembleSpec, path: str) -> int:
    """Write every eigenvalue of every sampled Delta to a file, one per line.
    Requires the dense regime (n <= 64); returns the number of lines."""
    if config.n > DENSE_DIM_LIMIT:
        raise ResourceLimitError(
            f"spectrum dump forms the dense operator; dimension capped at {DENSE_DIM_LIMIT}"
        )
    means = [spec.lam] * (2 * config.d)
    count = 0
    with open(path, "w", encoding="ascii") as fh:
        for trial in range(config.trials):
            delta = build_delta(sample_matrices(config, spec, trial), means)
            for value in np.linalg.eigvalsh(delta):
                fh.write(f"{float(value)!r}\n")
                count += 1
    return count
