"""Distance spectrum and the spectral functionals built on it.

The eigenvalues come from a cyclic Jacobi sweep on the dense symmetric
distance matrix.  :func:`distance_estrada_series` evaluates the same index
through traces of matrix powers and never touches an eigensolver, so the two
routes can be checked against each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import ConvergenceError
from .graph_core import DistanceProfile

DEFAULT_EPS = 1e-9
DEFAULT_MAX_SWEEPS = 100
DEFAULT_SERIES_CAP = 500


@dataclass(frozen=True)
class DistanceSpectrum:
    eigenvalues: np.ndarray
    n_plus: int
    residual: float
    sweeps: int = 0

    @property
    def n(self) -> int:
        return self.eigenvalues.size

    @property
    def mu1(self) -> float:
        return float(self.eigenvalues[0])

    def moment(self, k: int) -> float:
        """Spectral moment ``N_k = sum(mu_i ** k)``."""
        return float(np.sum(self.eigenvalues ** k))


def jacobi_eigh(a, max_sweeps: int = DEFAULT_MAX_SWEEPS):
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Returns ``(w, v, sweeps)`` with ``a @ v ~= v * w`` (eigenvalues unsorted).
    Raises :class:`ConvergenceError` when the off-diagonal mass is still above
    machine precision after ``max_sweeps`` full sweeps.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.allclose(a, a.T, rtol=0.0, atol=0.0):
        raise ValueError("matrix is not symmetric")
    v = np.eye(n)
    scale = float(np.linalg.norm(a))
    if n < 2 or scale == 0.0:
        return np.diag(a).copy(), v, 0

    eps = np.finfo(float).eps
    target = eps * scale
    skip = target / n
    mask = ~np.eye(n, dtype=bool)
    for sweep in range(max_sweeps + 1):
        off_diag = a[mask]
        off = math.sqrt(float(off_diag @ off_diag))
        if off <= target:
            return np.diag(a).copy(), v, sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= skip:
                    continue
                app, aqq = a[p, p], a[q, q]
                theta = (aqq - app) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q]
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                a[p, :] = a[:, p]
                a[q, :] = a[:, q]
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                v[:, p] = c * vp - s * v[:, q]
                v[:, q] = s * vp + c * v[:, q]
    raise ConvergenceError(
        f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal norm {off:.3e}, target {target:.3e})"
    )


def count_positive(spec_or_values, eps: float = DEFAULT_EPS) -> int:
    """Number of eigenvalues strictly above ``eps``; ``[-eps, eps]`` counts as non-positive."""
    if eps < 0:
        raise ValueError("eps must be >= 0")
    values = spec_or_values.eigenvalues if isinstance(spec_or_values, DistanceSpectrum) else spec_or_values
    return int(np.count_nonzero(np.asarray(values) > eps))


def d_eigenvalues(dp: DistanceProfile, max_sweeps: int = DEFAULT_MAX_SWEEPS, eps: float = DEFAULT_EPS) -> DistanceSpectrum:
    """Full D-spectrum, sorted descending, with the max eigenpair residual."""
    d = dp.d.astype(float)
    w, v, sweeps = jacobi_eigh(d, max_sweeps=max_sweeps)
    residual = float(np.abs(d @ v - v * w).max()) if dp.n else 0.0
    order = np.argsort(-w, kind="stable")
    w = w[order]
    w.flags.writeable = False
    return DistanceSpectrum(eigenvalues=w, n_plus=count_positive(w, eps), residual=residual, sweeps=sweeps)


def distance_estrada(spec: DistanceSpectrum) -> float:
    """Sum of ``exp(mu_i)`` over the D-eigenvalues."""
    with np.errstate(over="ignore"):
        total = float(np.sum(np.exp(spec.eigenvalues)))
    if not math.isfinite(total):
        raise OverflowError(f"exp(mu_1) overflows float64 (mu_1 = {spec.mu1:.6g})")
    return total


def distance_energy(spec: DistanceSpectrum) -> float:
    """Sum of ``|mu_i|``."""
    return float(np.sum(np.abs(spec.eigenvalues)))


def _mu1_upper(d: np.ndarray, iterations: int = 8) -> float:
    # Collatz-Wielandt: max_i (d x)_i / x_i >= mu_1 for any positive x; iterating
    # from the row sums tightens it toward mu_1 from above.
    x = d.sum(axis=1)
    best = float(x.max())
    for _ in range(iterations):
        y = d @ x
        best = min(best, float(np.max(y / x)))
        x = y / y.max()
    return best


def distance_estrada_series(dp: DistanceProfile, rel_tol: float = 1e-12, max_terms: int = DEFAULT_SERIES_CAP) -> float:
    """Distance Estrada index as ``sum_k trace(d^k) / k!``.

    The matrix ``d^k / k!`` is carried directly so that neither ``d^k`` nor
    ``k!`` overflows.  Traces of a nonnegative matrix are nonnegative, so the
    sum has no cancellation.  Summation stops once the a-priori bound on the
    remaining tail, built from the term bound ``n * mu_hat**k / k!``, drops
    below ``rel_tol`` times the running sum; ``mu_hat >= mu_1`` is a
    Collatz-Wielandt estimate.
    """
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    n = dp.n
    d = dp.d.astype(float)
    if n == 1:
        return 1.0
    mu_hat = _mu1_upper(d)
    log_mu = math.log(mu_hat)
    log_n = math.log(n)
    power = np.eye(n)
    total = float(n)
    for k in range(1, max_terms + 1):
        power = (power @ d) / k
        total += float(np.trace(power))
        if not math.isfinite(total):
            raise OverflowError("distance Estrada series overflows float64")
        if k + 2 <= 2 * mu_hat:
            continue
        # geometric majorant of the whole tail beyond term k
        log_tail = log_n + (k + 1) * log_mu - math.lgamma(k + 2) - math.log1p(-mu_hat / (k + 2))
        if log_tail < math.log(rel_tol * total):
            return total
    raise ConvergenceError(f"series tail bound not met after {max_terms} terms (mu_1 <= {mu_hat:.4g})")
