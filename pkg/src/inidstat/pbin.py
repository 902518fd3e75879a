"""Exact law of the success count among independent heterogeneous Bernoulli trials.

Given success probabilities p_1, ..., p_n (not necessarily equal), the count
S = sum_i 1{trial i succeeds} has the Poisson binomial law.  ``pmf`` builds the
full law by the O(n^2) convolution recurrence; ``tail_at_least`` computes a
single tail P{S >= k} in O(n * min(k, n - k + 1)) by truncating the recurrence:
states at or past k are absorbed (when k is small) or states past n - k
failures are dropped and the survivors summed (when k is close to n).
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union

import numpy as np

__all__ = [
    "SuccessVector",
    "pmf",
    "tail_at_least",
    "brute_force_tail",
    "ChebyshevGap",
    "chebyshev_bound_gap",
]

_BRUTE_FORCE_MAX_N = 20


@dataclass(frozen=True, eq=False)
class SuccessVector:
    """An immutable vector of per-trial success probabilities in [0, 1]."""

    p: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.p, dtype=float, copy=True).ravel()
        if arr.size == 0:
            raise ValueError("need at least one trial")
        if not np.all(np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
            raise ValueError("success probabilities must lie in [0, 1]")
        arr.setflags(write=False)
        object.__setattr__(self, "p", arr)

    @property
    def n(self) -> int:
        return int(self.p.size)

    @property
    def mean_sum(self) -> float:
        """E[S] = sum of the success probabilities."""
        return float(self.p.sum())


SuccessLike = Union[SuccessVector, Sequence[float], np.ndarray]


def _coerce(sv: SuccessLike) -> SuccessVector:
    return sv if isinstance(sv, SuccessVector) else SuccessVector(np.asarray(sv, dtype=float))


def _check_rank(k, n: int, *, allow_past_end: bool) -> int:
    k = operator.index(k)
    hi = n + 1 if allow_past_end else n
    if not 0 <= k <= hi:
        raise ValueError(f"k must be an integer in [0, {hi}], got {k}")
    return k


def pmf(sv: SuccessLike) -> np.ndarray:
    """Full law of S as an array of length n + 1 indexed by the count."""
    sv = _coerce(sv)
    n = sv.n
    out = np.zeros(n + 1)
    out[0] = 1.0
    for i, pi in enumerate(sv.p):
        shifted = out[: i + 1] * pi
        out[: i + 2] *= 1.0 - pi
        out[1 : i + 2] += shifted
    return out


def tail_at_least(sv: SuccessLike, k) -> float:
    """P{S >= k} without building the full law.

    Runs the convolution recurrence over a state vector truncated to
    min(k, n - k + 1) entries, so scanning every k for one fixed vector
    costs O(n^2) overall instead of O(n^2) per tail.
    """
    sv = _coerce(sv)
    n = sv.n
    k = _check_rank(k, n, allow_past_end=True)
    if k == 0:
        return 1.0
    if k == n + 1:
        return 0.0

    if k <= n + 1 - k:
        # Track success counts 0..k-1; mass reaching k is absorbed once and
        # can never drop back, so the absorbed total is exactly P{S >= k}.
        state = np.zeros(k)
        state[0] = 1.0
        buf = np.empty(k)
        absorbed = 0.0
        for pi in sv.p:
            absorbed += state[k - 1] * pi
            np.multiply(state, 1.0 - pi, out=buf)
            buf[1:] += state[: k - 1] * pi
            state, buf = buf, state
        return float(min(absorbed, 1.0))

    # Dual recurrence on failure counts 0..n-k; runs that stay within the
    # allowance end with S >= k, so the surviving mass is the tail.
    m = n - k
    state = np.zeros(m + 1)
    state[0] = 1.0
    buf = np.empty(m + 1)
    for pi in sv.p:
        np.multiply(state, pi, out=buf)
        buf[1:] += state[:m] * (1.0 - pi)
        state, buf = buf, state
    return float(min(state.sum(), 1.0))


def brute_force_tail(sv: SuccessLike, k) -> float:
    """P{S >= k} by enumerating all 2^n outcomes; guardrailed to n <= 20."""
    sv = _coerce(sv)
    n = sv.n
    if n > _BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute-force enumeration is limited to n <= {_BRUTE_FORCE_MAX_N}, got n = {n}")
    k = _check_rank(k, n, allow_past_end=True)
    probs = np.ones(1)
    counts = np.zeros(1, dtype=np.int64)
    for pi in sv.p:
        probs = np.concatenate([probs * (1.0 - pi), probs * pi])
        counts = np.concatenate([counts, counts + 1])
    return float(probs[counts >= k].sum())


class ChebyshevGap(NamedTuple):
    exact: float
    bound: float


def chebyshev_bound_gap(sv: SuccessLike, t) -> ChebyshevGap:
    """Exact P{|S - E[S]| >= t} next to the bound E[S] / t^2.

    The bound uses the mean sum rather than the variance, so it is coarser
    than the usual variance form but needs only the p_i.
    """
    sv = _coerce(sv)
    t = float(t)
    if not t > 0:
        raise ValueError(f"threshold t must be positive, got {t!r}")
    law = pmf(sv)
    mu = sv.mean_sum
    counts = np.arange(sv.n + 1)
    exact = float(law[np.abs(counts - mu) >= t].sum())
    return ChebyshevGap(exact=exact, bound=mu / (t * t))
