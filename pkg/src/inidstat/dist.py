"""Non-negative univariate laws: cdf, left limit, survival, left quantile.

Each law is an immutable value.  The ``scale`` field multiplies the underlying
variable, so ``Exponential(rate=1.0, scale=2.0)`` is the law of ``2 * X`` with
``X`` standard exponential.  Quantiles are the left generalized inverse
``inf {t >= 0 : F(t) >= r}``; by convention ``quantile(0) == 0`` on
non-negative laws, and ``quantile(1)`` may be ``+inf`` for unbounded support.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy import special as sps

__all__ = [
    "Distribution",
    "Uniform01",
    "ParetoPower",
    "Exponential",
    "HalfGaussian",
    "PiecewiseLinearCdf",
    "Atomic",
    "MixtureCdf",
    "left_quantile_bisect",
]

_SQRT2 = math.sqrt(2.0)

# Bracket-doubling and bisection limits for numeric quantile inversion.  The
# stopping width is min(abs_tol * max(1, hi), rel_tol * hi) so answers stay
# accurate in relative terms even when the quantile is far below 1.
_MAX_DOUBLINGS = 200
_BISECT_ABS_TOL = 1e-12
_BISECT_REL_TOL = 1e-10


def _split(x) -> tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _wrap(out: np.ndarray, scalar: bool):
    return float(out) if scalar else out


@dataclass(frozen=True)
class Distribution:
    """Base class for a non-negative scalar law with a multiplicative scale."""

    scale: float = field(default=1.0, kw_only=True)

    def __post_init__(self) -> None:
        s = self.scale
        if not (isinstance(s, (int, float)) and math.isfinite(s) and s > 0):
            raise ValueError(f"scale must be a finite positive real, got {s!r}")
        object.__setattr__(self, "scale", float(s))

    # Subclass hooks, all expressed on the unit-scale law.

    def _unit_cdf(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _unit_cdf_left(self, x: np.ndarray) -> np.ndarray:
        # Continuous laws: the left limit coincides with the cdf.
        return self._unit_cdf(x)

    def _unit_quantile(self, r: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _unit_special_points(self) -> tuple[float, ...]:
        return ()

    # Public surface.

    def cdf(self, t):
        """P{X <= t}; accepts a scalar or an array, returns the same shape."""
        x, scalar = _split(t)
        return _wrap(self._unit_cdf(x / self.scale), scalar)

    def cdf_left_limit(self, t):
        """P{X < t}, the left limit of the cdf at ``t``."""
        x, scalar = _split(t)
        return _wrap(self._unit_cdf_left(x / self.scale), scalar)

    def survival(self, t):
        """P{X > t}."""
        x, scalar = _split(t)
        return _wrap(1.0 - self._unit_cdf(x / self.scale), scalar)

    def quantile(self, r):
        """Left quantile inf{t : F(t) >= r} for r in [0, 1]."""
        x, scalar = _split(r)
        if np.any(np.isnan(x)) or np.any((x < 0.0) | (x > 1.0)):
            raise ValueError("quantile order must lie in [0, 1]")
        with np.errstate(divide="ignore"):
            out = self.scale * self._unit_quantile(x)
        out = np.where(x == 0.0, 0.0, out)
        return _wrap(out, scalar)

    def special_points(self) -> tuple[float, ...]:
        """Atom locations and cdf knots of the scaled law, ascending."""
        return tuple(self.scale * s for s in self._unit_special_points())

    def scaled(self, c: float) -> "Distribution":
        """The law of ``c * X`` for c > 0."""
        if not (math.isfinite(c) and c > 0):
            raise ValueError(f"scale factor must be a finite positive real, got {c!r}")
        return dataclasses.replace(self, scale=self.scale * float(c))


@dataclass(frozen=True)
class Uniform01(Distribution):
    """Uniform law on [0, scale]."""

    def _unit_cdf(self, x: np.ndarray) -> np.ndarray:
        return np.clip(x, 0.0, 1.0)

    def _unit_quantile(self, r: np.ndarray) -> np.ndarray:
        return np.asarray(r, dtype=float).copy()


@dataclass(frozen=True)
class ParetoPower(Distribution):
    """Power law F(t) = 1 - t**(-p) on [scale, inf), p > 0."""

    p: float = 1.0

    def __post_init__(self) -> None:
        super().__post_init__()
        if not (isinstance(self.p, (int, float)) and math.isfinite(self.p) and self.p > 0):
            raise ValueError(f"p must be a finite positive real, got {self.p!r}")
        object.__setattr__(self, "p", float(self.p))

    def _unit_cdf(self, x: np.ndarray) -> np.ndarray:
        xx = np.maximum(x, 1.0)
        return np.where(x >= 1.0, 1.0 - xx ** (-self.p), 0.0)

    def _unit_quantile(self, r: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return (1.0 - np.asarray(r, dtype=float)) ** (-1.0 / self.p)


@dataclass(frozen=True)
class Exponential(Distribution):
    """Exponential law with the given rate, F(t) = 1 - exp(-rate * t)."""

    rate: float = 1.0

    def __post_init__(self) -> None:
        super().__post_init__()
        if not (isinstance(self.rate, (int, float)) and math.isfinite(self.rate) and self.rate > 0):
            raise ValueError(f"rate must be a finite positive real, got {self.rate!r}")
        object.__setattr__(self, "rate", float(self.rate))

    def _unit_cdf(self, x: np.ndarray) -> np.ndarray:
        xx = np.maximum(x, 0.0)
        return np.where(x > 0.0, -np.expm1(-self.rate * xx), 0.0)

    def _unit_quantile(self, r: np.ndarray) -> np.ndarray:
        return -np.log1p(-np.asarray(r, dtype=float)) / self.rate


@dataclass(frozen=True)
class HalfGaussian(Distribution):
    """Law of |Z| for Z centered Gaussian with standard deviation sigma."""

    sigma: float = 1.0

    def __post_init__(self) -> None:
        super().__post_init__()
        if not (isinstance(self.sigma, (int, float)) and math.isfinite(self.sigma) and self.sigma > 0):
            raise ValueError(f"sigma must be a finite positive real, got {self.sigma!r}")
        object.__setattr__(self, "sigma", float(self.sigma))

    def _unit_cdf(self, x: np.ndarray) -> np.ndarray:
        xx = np.maximum(x, 0.0)
        return np.where(x > 0.0, sps.erf(xx / (self.sigma * _SQRT2)), 0.0)

    def _unit_quantile(self, r: np.ndarray) -> np.ndarray:
        return self.sigma * _SQRT2 * sps.erfinv(np.asarray(r, dtype=float))


@dataclass(frozen=True)
class PiecewiseLinearCdf(Distribution):
    """Continuous cdf interpolating (t, F) knots, flat outside the knot range.

    Knots must have strictly increasing ``t >= 0`` and nondecreasing ``F``
    starting at 0 and ending at 1.  Flat F-segments are allowed and make the
    left quantile land on the left edge of the flat stretch.
    """

    knots: tuple[tuple[float, float], ...] = ((0.0, 0.0), (1.0, 1.0))

    def __post_init__(self) -> None:
        super().__post_init__()
        try:
            knots = tuple((float(t), float(f)) for t, f in self.knots)
        except (TypeError, ValueError) as exc:
            raise ValueError(f"knots must be (t, F) pairs of reals, got {self.knots!r}") from exc
        if len(knots) < 2:
            raise ValueError("need at least two knots")
        ts = [t for t, _ in knots]
        fs = [f for _, f in knots]
        if ts[0] < 0 or not all(a < b for a, b in zip(ts, ts[1:])):
            raise ValueError("knot abscissae must be nonnegative and strictly increasing")
        if not all(a <= b for a, b in zip(fs, fs[1:])):
            raise ValueError("knot cdf values must be nondecreasing")
        if fs[0] != 0.0 or fs[-1] != 1.0:
            raise ValueError("knot cdf values must start at 0 and end at 1")
        object.__setattr__(self, "knots", knots)

    @cached_property
    def _kt(self) -> np.ndarray:
        return np.array([t for t, _ in self.knots])

    @cached_property
    def _kf(self) -> np.ndarray:
        return np.array([f for _, f in self.knots])

    def _unit_cdf(self, x: np.ndarray) -> np.ndarray:
        return np.interp(x, self._kt, self._kf, left=0.0, right=1.0)

    def _unit_quantile(self, r: np.ndarray) -> np.ndarray:
        rr = np.asarray(r, dtype=float)
        idx = np.searchsorted(self._kf, rr, side="left")
        idx = np.clip(idx, 1, self._kf.size - 1)
        lo_t, hi_t = self._kt[idx - 1], self._kt[idx]
        lo_f, hi_f = self._kf[idx - 1], self._kf[idx]
        with np.errstate(divide="ignore", invalid="ignore"):
            frac = (rr - lo_f) / (hi_f - lo_f)
        out = lo_t + np.where(hi_f > lo_f, frac, 1.0) * (hi_t - lo_t)
        # Orders at or below the first knot's cdf value resolve to that knot.
        return np.where(rr <= self._kf[0], self._kt[0], out)

    def _unit_special_points(self) -> tuple[float, ...]:
        return tuple(t for t, _ in self.knots)


@dataclass(frozen=True)
class Atomic(Distribution):
    """Purely atomic law on finitely many nonnegative points.

    ``atoms`` is a sequence of (value, weight) pairs with strictly increasing
    nonnegative values and positive weights summing to 1.
    """

    atoms: tuple[tuple[float, float], ...] = ((1.0, 1.0),)

    def __post_init__(self) -> None:
        super().__post_init__()
        try:
            atoms = tuple((float(v), float(w)) for v, w in self.atoms)
        except (TypeError, ValueError) as exc:
            raise ValueError(f"atoms must be (value, weight) pairs of reals, got {self.atoms!r}") from exc
        if not atoms:
            raise ValueError("need at least one atom")
        vs = [v for v, _ in atoms]
        ws = [w for _, w in atoms]
        if vs[0] < 0 or not all(a < b for a, b in zip(vs, vs[1:])):
            raise ValueError("atom values must be nonnegative and strictly increasing")
        if not all(w > 0 for w in ws):
            raise ValueError("atom weights must be positive")
        if abs(math.fsum(ws) - 1.0) > 1e-9:
            raise ValueError(f"atom weights must sum to 1, got {math.fsum(ws)!r}")
        object.__setattr__(self, "atoms", atoms)

    @cached_property
    def _values(self) -> np.ndarray:
        return np.array([v for v, _ in self.atoms])

    @cached_property
    def _cumw(self) -> np.ndarray:
        c = np.cumsum([w for _, w in self.atoms])
        c[-1] = 1.0
        return c

    def _unit_cdf(self, x: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(self._values, x, side="right")
        return np.where(idx > 0, self._cumw[np.maximum(idx, 1) - 1], 0.0)

    def _unit_cdf_left(self, x: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(self._values, x, side="left")
        return np.where(idx > 0, self._cumw[np.maximum(idx, 1) - 1], 0.0)

    def _unit_quantile(self, r: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(self._cumw, r, side="left")
        return self._values[np.minimum(idx, self._values.size - 1)]

    def _unit_special_points(self) -> tuple[float, ...]:
        return tuple(v for v, _ in self.atoms)


class _ComponentBatch:
    """Evaluates many component cdfs at one scalar t, grouped by family.

    The grouped formulas mirror the per-family ``_unit_cdf`` implementations
    operation for operation so results are bit-identical to calling
    ``d.cdf(t)`` on each component.
    """

    __slots__ = ("_n", "_uni", "_par", "_exp", "_hg", "_generic")

    def __init__(self, components: Sequence[Distribution]):
        self._n = len(components)
        uni_i, uni_s = [], []
        par_i, par_s, par_p = [], [], []
        exp_i, exp_s, exp_r = [], [], []
        hg_i, hg_s, hg_sig = [], [], []
        generic: list[tuple[int, Distribution]] = []
        for i, d in enumerate(components):
            if type(d) is Uniform01:
                uni_i.append(i)
                uni_s.append(d.scale)
            elif type(d) is ParetoPower:
                par_i.append(i)
                par_s.append(d.scale)
                par_p.append(d.p)
            elif type(d) is Exponential:
                exp_i.append(i)
                exp_s.append(d.scale)
                exp_r.append(d.rate)
            elif type(d) is HalfGaussian:
                hg_i.append(i)
                hg_s.append(d.scale)
                hg_sig.append(d.sigma)
            else:
                generic.append((i, d))
        self._uni = (np.array(uni_i, dtype=np.intp), np.array(uni_s)) if uni_i else None
        self._par = (np.array(par_i, dtype=np.intp), np.array(par_s), np.array(par_p)) if par_i else None
        self._exp = (np.array(exp_i, dtype=np.intp), np.array(exp_s), np.array(exp_r)) if exp_i else None
        self._hg = (np.array(hg_i, dtype=np.intp), np.array(hg_s), np.array(hg_sig)) if hg_i else None
        self._generic = generic

    def cdfs(self, t: float, left: bool = False) -> np.ndarray:
        out = np.empty(self._n)
        if self._uni is not None:
            idx, scales = self._uni
            out[idx] = np.clip(t / scales, 0.0, 1.0)
        if self._par is not None:
            idx, scales, ps = self._par
            x = t / scales
            xx = np.maximum(x, 1.0)
            out[idx] = np.where(x >= 1.0, 1.0 - xx ** (-ps), 0.0)
        if self._exp is not None:
            idx, scales, rates = self._exp
            x = t / scales
            xx = np.maximum(x, 0.0)
            out[idx] = np.where(x > 0.0, -np.expm1(-rates * xx), 0.0)
        if self._hg is not None:
            idx, scales, sigmas = self._hg
            x = t / scales
            xx = np.maximum(x, 0.0)
            out[idx] = np.where(x > 0.0, sps.erf(xx / (sigmas * _SQRT2)), 0.0)
        for i, d in self._generic:
            out[i] = d.cdf_left_limit(t) if left else d.cdf(t)
        return out


def left_quantile_bisect(
    cdf: Callable[[float], float],
    r: float,
    candidates: Iterable[float] = (),
) -> float:
    """Left quantile of a nondecreasing cdf on [0, inf) by bracketed bisection.

    ``candidates`` are abscissae where the cdf may jump or kink; after the
    bracket collapses, the smallest candidate inside it that already reaches
    ``r`` is returned so that atoms come out exact rather than within the
    bisection tolerance.
    """
    r = float(r)
    if not 0.0 <= r <= 1.0:
        raise ValueError("quantile order must lie in [0, 1]")
    if r == 0.0 or cdf(0.0) >= r:
        return 0.0

    hi = 1.0
    if cdf(hi) >= r:
        # Shrink downward so the bracket, and hence the stopping tolerance,
        # tracks the magnitude of the answer.
        for _ in range(_MAX_DOUBLINGS):
            if hi <= 5e-324 or cdf(hi / 2.0) < r:
                lo = hi / 2.0
                break
            hi /= 2.0
        else:
            lo = 0.0
    else:
        for _ in range(_MAX_DOUBLINGS):
            hi *= 2.0
            if cdf(hi) >= r:
                break
        else:
            raise ValueError(f"quantile order {r!r} not reached below t = {hi:g}")
        lo = hi / 2.0

    while hi - lo > min(_BISECT_ABS_TOL * max(1.0, hi), _BISECT_REL_TOL * hi):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if cdf(mid) >= r:
            hi = mid
        else:
            lo = mid

    eps = min(_BISECT_ABS_TOL * max(1.0, hi), _BISECT_REL_TOL * hi)
    for c in sorted(candidates):
        if lo < c <= hi + eps and cdf(c) >= r:
            below = float(np.nextafter(c, -np.inf))
            if below <= lo or cdf(below) < r:
                return float(c)
            break
    return float(hi)


@dataclass(frozen=True)
class MixtureCdf:
    """Equal-weight mixture of component laws: F(t) = (1/n) * sum_i F_i(t)."""

    components: tuple[Distribution, ...]

    def __post_init__(self) -> None:
        comps = tuple(self.components)
        if not comps:
            raise ValueError("mixture needs at least one component")
        for c in comps:
            if not isinstance(c, Distribution):
                raise TypeError(f"mixture components must be distributions, got {type(c).__name__}")
        object.__setattr__(self, "components", comps)

    @property
    def n(self) -> int:
        return len(self.components)

    @cached_property
    def _batch(self) -> _ComponentBatch:
        return _ComponentBatch(self.components)

    def cdf(self, t):
        x, scalar = _split(t)
        if scalar:
            return float(self._batch.cdfs(float(x)).mean())
        return np.mean([c.cdf(x) for c in self.components], axis=0)

    def cdf_left_limit(self, t):
        x, scalar = _split(t)
        if scalar:
            return float(self._batch.cdfs(float(x), left=True).mean())
        return np.mean([c.cdf_left_limit(x) for c in self.components], axis=0)

    def survival(self, t):
        x, scalar = _split(t)
        return _wrap(1.0 - np.asarray(self.cdf(x)), scalar)

    def quantile(self, r):
        x, scalar = _split(r)
        if not scalar:
            return np.array([self.quantile(float(v)) for v in x.ravel()]).reshape(x.shape)
        r = float(x)
        if np.isnan(r) or not 0.0 <= r <= 1.0:
            raise ValueError("quantile order must lie in [0, 1]")
        if r == 0.0:
            return 0.0
        if r == 1.0:
            return float(max(c.quantile(1.0) for c in self.components))
        return left_quantile_bisect(self.cdf, r, candidates=self.special_points())

    def special_points(self) -> tuple[float, ...]:
        pts: set[float] = set()
        for c in self.components:
            pts.update(c.special_points())
        return tuple(sorted(pts))
