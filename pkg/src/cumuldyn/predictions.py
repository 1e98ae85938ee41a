"""Closed-form predictions of the search-process growth model.

Everything here is a pure function of the model parameters: the expected
backward-link count, the exact path-length distribution solving the growth
recurrence ``f_k(n+1) - f_k(n) = q * f_{k-1}(n)``, its normalized and
binomial-type variants, the growth-rate corrections for finite sizes, and
the expected number of initial (link-free) inventions.

Binomial coefficients and powers are evaluated in log space throughout, so
the normalized quantities remain finite for any n even when the raw path
counts overflow floats.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np
from scipy.special import digamma, gammaln

from .core import ModelParams, PathLengthDistribution, RatePredictions

__all__ = [
    "harmonic_number",
    "harmonic_real",
    "expected_id",
    "analytic_path_counts",
    "total_paths_closed",
    "normalized_path_dist",
    "analytic_ipl",
    "ipl_slope",
    "corrected_rate_a",
    "corrected_rate_b",
    "rate_predictions",
    "binomial_path_dist",
    "binomial_path_dist_np",
    "max_speed",
    "expected_initial_count",
]

_EULER_GAMMA = 0.5772156649015328606

# Exact harmonic summation is affordable up to a million terms; beyond that
# the asymptotic expansion is already accurate to ~1e-13.
_HARMONIC_EXACT_LIMIT = 1_000_000


def harmonic_number(n: int) -> float:
    """n-th harmonic number: exact summation up to 1e6, asymptotic beyond."""
    if n < 0:
        raise ValueError(f"harmonic number needs n >= 0, got {n}")
    if n <= _HARMONIC_EXACT_LIMIT:
        return math.fsum(1.0 / i for i in range(1, n + 1))
    return math.log(n) + _EULER_GAMMA + 1.0 / (2 * n)


def harmonic_real(x: float) -> float:
    """Harmonic number extended to real arguments via the digamma function."""
    return float(digamma(x + 1.0)) + _EULER_GAMMA


def expected_id(n: int, params: ModelParams) -> float:
    """Expected backward-link count of the invention arriving at size n."""
    return params.q * n + params.m0


def _log_binomial(n: float, k: np.ndarray) -> np.ndarray:
    """log C(n, k) for real n and integer k with n - k > -1."""
    return gammaln(n + 1.0) - gammaln(k + 1.0) - gammaln(n - k + 1.0)


def _log_expm1(x: float) -> float:
    """log(exp(x) - 1) without overflow for large x."""
    if x > 36.0:  # exp(-x) below double precision: log1p term negligible
        return x + math.log1p(-math.exp(-x))
    return math.log(math.expm1(x))


def total_paths_closed(n: int, params: ModelParams) -> float:
    """Total number of paths after n inventions: r*((1+q)^n - 1)/q."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return params.r * math.expm1(n * math.log1p(params.q)) / params.q


def analytic_path_counts(n: int, params: ModelParams) -> PathLengthDistribution:
    """Predicted path-length distribution after n inventions.

    The count of length-k paths is ``r * q^k * C(n, k+1)``, the solution of
    the growth recurrence with ``f_0(n) = r*n``.  Counts are exponentiated
    from log space and may overflow to ``inf`` for very large n; the
    normalized distribution and mean are always finite.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    ks = np.arange(n)
    logs = math.log(params.r) + ks * math.log(params.q) + _log_binomial(float(n), ks + 1.0)
    peak = float(np.max(logs))
    log_total = peak + math.log(float(np.sum(np.exp(logs - peak))))
    norm = np.exp(logs - log_total)
    with np.errstate(over="ignore"):
        raw = np.exp(logs)
    return PathLengthDistribution(
        n=n,
        counts={int(k): float(raw[k]) for k in ks},
        normalized={int(k): float(norm[k]) for k in ks},
        ipl=float(np.dot(ks, norm)),
        mipl=n - 1,
        log_counts={int(k): float(logs[k]) for k in ks},
    )


def normalized_path_dist(n: int, q: float) -> dict[int, float]:
    """Probability of a path having length k: C(n, k+1) * q^(k+1) / ((1+q)^n - 1)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if q <= 0:
        raise ValueError(f"q must be positive, got {q}")
    ks = np.arange(n)
    log_z = _log_expm1(n * math.log1p(q))
    logs = _log_binomial(float(n), ks + 1.0) + (ks + 1.0) * math.log(q) - log_z
    return {int(k): float(v) for k, v in zip(ks, np.exp(logs))}


def analytic_ipl(n: int, q: float) -> float:
    """Exact mean of the predicted path-length distribution.

    Equals ``n*q/(q+1) * 1/(1 - (1+q)^(-n)) - 1``, which approaches the
    linear form ``q/(q+1)*n - 1`` for large n.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    damping = -math.expm1(-n * math.log1p(q))  # 1 - (1+q)^(-n)
    return n * q / (q + 1.0) / damping - 1.0


def ipl_slope(q: float) -> float:
    """Large-n growth rate of the mean path length: p = q/(q+1)."""
    if q <= 0:
        raise ValueError(f"q must be positive, got {q}")
    return q / (q + 1.0)


def corrected_rate_a(backlinks: Sequence[float]) -> tuple[float, float]:
    """Finite-size growth-rate correction computed from per-invention data.

    Given the backward-link counts m_1..m_n in chronological order, returns
    ``q'_a = (1/n) * sum(m_i / i)`` and ``p'_a = q'_a / (1 + q'_a)``.
    """
    if len(backlinks) == 0:
        raise ValueError("backlink sequence must be nonempty")
    q_a = math.fsum(m / i for i, m in enumerate(backlinks, start=1)) / len(backlinks)
    return q_a, q_a / (1.0 + q_a)


def corrected_rate_b(q: float, m0: float, n: int) -> tuple[float, float]:
    """Finite-size growth-rate correction computed from fitted parameters.

    Returns ``q'_b = q + m0 * H(n) / n`` with H the harmonic number, and
    ``p'_b = q'_b / (1 + q'_b)``.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    q_b = q + m0 * harmonic_number(n) / n
    return q_b, q_b / (1.0 + q_b)


def max_speed(p: float) -> tuple[float, float]:
    """Maximum path-length growth rate v = 2p and its inverse delta_n = 1/v."""
    if not 0 < p < 1:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    v = 2.0 * p
    return v, 1.0 / v


def rate_predictions(
    q: float, m0: float, n: int, backlinks: Sequence[float] | None = None
) -> RatePredictions:
    """Assemble every rate prediction for a technology of size n.

    ``backlinks`` supplies the per-invention data for the a-correction; when
    absent those fields are NaN.
    """
    p = ipl_slope(q)
    if backlinks is not None:
        q_a, p_a = corrected_rate_a(backlinks)
    else:
        q_a = p_a = math.nan
    q_b, p_b = corrected_rate_b(q, m0, n)
    v, delta_n = max_speed(p)
    return RatePredictions(
        p=p,
        q_prime_a=q_a,
        p_prime_a=p_a,
        q_prime_b=q_b,
        p_prime_b=p_b,
        v=v,
        delta_n=delta_n,
    )


def binomial_path_dist(n_prime: int) -> dict[int, float]:
    """Binomial-type path-length distribution: C(n', k+1) / (2^n' - 1)."""
    if n_prime < 1:
        raise ValueError(f"n_prime must be >= 1, got {n_prime}")
    ks = np.arange(n_prime)
    log_z = _log_expm1(n_prime * math.log(2.0))
    logs = _log_binomial(float(n_prime), ks + 1.0) - log_z
    return {int(k): float(v) for k, v in zip(ks, np.exp(logs))}


def binomial_path_dist_np(n: int, p: float) -> dict[int, float]:
    """Binomial-type distribution parameterized by n and the rate p.

    Evaluates ``C(2pn, k+1)`` with the real-argument (log-gamma) binomial
    coefficient over k = 0 .. ceil(2pn) - 1 and normalizes by the sum of
    those terms, which equals ``4^(p*n) - 1`` whenever 2pn is an integer.
    Truncating at the last positive term keeps the result a probability
    distribution for non-integral 2pn as well.
    """
    x = 2.0 * p * n
    if x <= 0:
        raise ValueError(f"2*p*n must be positive, got {x}")
    top = math.ceil(x)
    ks = np.arange(top)
    logs = _log_binomial(x, ks + 1.0)
    peak = float(np.max(logs))
    log_z = peak + math.log(float(np.sum(np.exp(logs - peak))))
    return {int(k): float(v) for k, v in zip(ks, np.exp(logs - log_z))}


def expected_initial_count(n: int, params: ModelParams) -> tuple[float, float]:
    """Expected number of link-free inventions after n inventions.

    Returns the exact harmonic-sum value ``(H(n + m1/q) - H(m1/q)) / q``
    (real-argument harmonic numbers) and its logarithmic approximation
    ``log(1 + q*n/m1) / q``, which reduces to ``n/m1`` when ``q*n`` is small.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    a = params.m1 / params.q
    exact = (harmonic_real(n + a) - harmonic_real(a)) / params.q
    approx = math.log1p(params.q * n / params.m1) / params.q
    return exact, approx
