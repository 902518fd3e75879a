"""Grid certificates for the odds-doubling growth condition on a cdf.

The central inequality, for a fixed K > 1 and all t > 0, is

    F(Kt) / (1 - F(Kt))  >=  2 * F(t) / (1 - F(t)),

checked here in the division-free form F(Kt)*(1-F(t)) >= 2*F(t)*(1-F(Kt)),
which is numerically total (no 1/0 special cases) and equivalent.  A passing
certificate is necessary evidence on finitely many grid points, not a proof
for all t > 0; every certificate carries that caveat.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .dist import Distribution, Exponential, HalfGaussian, Uniform01

__all__ = [
    "GridSpec",
    "DEFAULT_GRID",
    "MARGIN_TOL",
    "GRID_NOTE",
    "RegularityCertificate",
    "GrowthLemmaReport",
    "MinKResult",
    "RegularityPreconditionError",
    "pointwise_margins",
    "check_condition",
    "check_measure_form",
    "check_weak_condition",
    "check_lemma_growth",
    "check_logconcave_k3",
    "find_min_K",
]

MARGIN_TOL = 1e-12

GRID_NOTE = "grid certificate: necessary evidence at finitely many t, not a proof for all t > 0"


@dataclass(frozen=True)
class GridSpec:
    """Log-spaced evaluation grid on [t_min, t_max], endpoints included."""

    t_min: float = 1e-6
    t_max: float = 1e6
    points_per_decade: int = 64

    def __post_init__(self) -> None:
        if not (0 < self.t_min < self.t_max) or not math.isfinite(self.t_max):
            raise ValueError(f"need 0 < t_min < t_max finite, got ({self.t_min!r}, {self.t_max!r})")
        ppd = operator.index(self.points_per_decade)
        if ppd < 1:
            raise ValueError(f"points_per_decade must be a positive integer, got {ppd}")
        object.__setattr__(self, "t_min", float(self.t_min))
        object.__setattr__(self, "t_max", float(self.t_max))
        object.__setattr__(self, "points_per_decade", ppd)

    def points(self) -> np.ndarray:
        decades = math.log10(self.t_max) - math.log10(self.t_min)
        count = max(2, math.ceil(decades * self.points_per_decade) + 1)
        pts = np.logspace(math.log10(self.t_min), math.log10(self.t_max), count)
        pts[0] = self.t_min
        pts[-1] = self.t_max
        return pts

    def points_for(self, d: Distribution) -> np.ndarray:
        """Grid points plus the law's atoms/knots and their +-1 ulp neighbours.

        Jump points are the only places a step cdf can hide a violation
        between plain grid points, so they are probed regardless of whether
        they fall inside [t_min, t_max].
        """
        pts = [self.points()]
        for s in d.special_points():
            trio = np.array([np.nextafter(s, -np.inf), s, np.nextafter(s, np.inf)])
            pts.append(trio[trio > 0.0])
        merged = np.unique(np.concatenate(pts))
        return merged[merged > 0.0]

    def to_dict(self) -> dict:
        return {
            "t_min": self.t_min,
            "t_max": self.t_max,
            "points_per_decade": self.points_per_decade,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "GridSpec":
        return cls(
            t_min=obj["t_min"],
            t_max=obj["t_max"],
            points_per_decade=obj["points_per_decade"],
        )


DEFAULT_GRID = GridSpec()


@dataclass(frozen=True)
class RegularityCertificate:
    """Outcome of one grid check: worst margin, verdict, and fail witness."""

    check: str
    K: float
    grid_spec: GridSpec
    n_points: int
    margin: float
    verdict: str
    witness: Optional[tuple[float, float, float]]
    note: str = GRID_NOTE

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "K": self.K,
            "grid_spec": self.grid_spec.to_dict(),
            "n_points": self.n_points,
            "margin": self.margin,
            "verdict": self.verdict,
            "witness": list(self.witness) if self.witness is not None else None,
            "note": self.note,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "RegularityCertificate":
        w = obj["witness"]
        return cls(
            check=obj["check"],
            K=obj["K"],
            grid_spec=GridSpec.from_dict(obj["grid_spec"]),
            n_points=obj["n_points"],
            margin=obj["margin"],
            verdict=obj["verdict"],
            witness=tuple(w) if w is not None else None,
            note=obj["note"],
        )


class RegularityPreconditionError(ValueError):
    """Raised when an operation requires a passing condition certificate."""

    def __init__(self, message: str, certificate: RegularityCertificate):
        super().__init__(message)
        self.certificate = certificate


def _check_K(K) -> float:
    K = float(K)
    if not (math.isfinite(K) and K > 1.0):
        raise ValueError(f"K must be a finite real > 1, got {K!r}")
    return K


def _assemble(
    check: str,
    K: float,
    grid_spec: GridSpec,
    t: np.ndarray,
    lhs: np.ndarray,
    rhs: np.ndarray,
    n_points: int,
) -> RegularityCertificate:
    if lhs.size == 0:
        # Nothing applicable: vacuously true.
        return RegularityCertificate(check, K, grid_spec, n_points, math.inf, "pass", None)
    margin = lhs - rhs
    i = int(np.argmin(margin))
    worst = float(margin[i])
    verdict = "pass" if worst >= -MARGIN_TOL else "fail"
    witness = (float(t[i]), float(lhs[i]), float(rhs[i])) if verdict == "fail" else None
    return RegularityCertificate(check, K, grid_spec, n_points, worst, verdict, witness)


def pointwise_margins(
    d: Distribution,
    K,
    grid_spec: GridSpec = DEFAULT_GRID,
    form: str = "condition",
) -> tuple[np.ndarray, np.ndarray, np.ndarray, int]:
    """(t, lhs, rhs, n_grid) of the chosen inequality at each applicable point.

    Forms: "condition" compares F(Kt)*(1-F(t)) with 2*F(t)*(1-F(Kt));
    "measure-form" compares F(Kt)-F(t) with F(t)*(1-F(Kt)); "weak-condition"
    compares F(t) with 2*F(t/K^2) restricted to points where F(t) <= 1/2.
    """
    K = _check_K(K)
    t = grid_spec.points_for(d)
    ft = np.asarray(d.cdf(t))
    if form == "condition":
        fkt = np.asarray(d.cdf(K * t))
        return t, fkt * (1.0 - ft), 2.0 * ft * (1.0 - fkt), t.size
    if form == "measure-form":
        fkt = np.asarray(d.cdf(K * t))
        return t, fkt - ft, ft * (1.0 - fkt), t.size
    if form == "weak-condition":
        applicable = ft <= 0.5
        ta = t[applicable]
        rhs = 2.0 * np.asarray(d.cdf(ta / (K * K)))
        return ta, ft[applicable], rhs, t.size
    raise ValueError(f"unknown inequality form {form!r}")


def check_condition(d: Distribution, K, grid_spec: GridSpec = DEFAULT_GRID) -> RegularityCertificate:
    """Certify F(Kt)*(1-F(t)) >= 2*F(t)*(1-F(Kt)) on the grid."""
    t, lhs, rhs, n = pointwise_margins(d, K, grid_spec, "condition")
    return _assemble("condition", float(K), grid_spec, t, lhs, rhs, n)


def check_measure_form(d: Distribution, K, grid_spec: GridSpec = DEFAULT_GRID) -> RegularityCertificate:
    """Certify the mass form F(Kt) - F(t) >= F(t)*(1 - F(Kt)) on the grid.

    Both margins rearrange to F(Kt) - 2*F(t) + F(t)*F(Kt), so pointwise
    verdicts necessarily agree with check_condition.
    """
    t, lhs, rhs, n = pointwise_margins(d, K, grid_spec, "measure-form")
    return _assemble("measure-form", float(K), grid_spec, t, lhs, rhs, n)


def check_weak_condition(d: Distribution, K, grid_spec: GridSpec = DEFAULT_GRID) -> RegularityCertificate:
    """Certify F(t) >= 2*F(t/K^2) at grid points where F(t) <= 1/2."""
    t, lhs, rhs, n = pointwise_margins(d, K, grid_spec, "weak-condition")
    return _assemble("weak-condition", float(K), grid_spec, t, lhs, rhs, n)


@dataclass(frozen=True)
class GrowthLemmaReport:
    """Joint certificate for the two iterated-growth inequalities.

    For ell >= 1 and gamma in (0, 1):
      growth:    F(t) >= 2^ell * (1 - F(t)) * F(t / K^ell)       at all grid t,
      survival:  1 - F(t/K^ell) >= (2^ell / (2^ell * gamma + 1)) * (1 - F(t))
                 at grid t where F(t) >= 1 - gamma.
    """

    K: float
    ell: int
    gamma: float
    grid_spec: GridSpec
    n_points: int
    n_survival_points: int
    margin_growth: float
    margin_survival: float
    verdict: str
    witnesses: tuple[tuple[str, float, float, float], ...]
    note: str = GRID_NOTE

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        return {
            "K": self.K,
            "ell": self.ell,
            "gamma": self.gamma,
            "grid_spec": self.grid_spec.to_dict(),
            "n_points": self.n_points,
            "n_survival_points": self.n_survival_points,
            "margin_growth": self.margin_growth,
            "margin_survival": self.margin_survival,
            "verdict": self.verdict,
            "witnesses": [list(w) for w in self.witnesses],
            "note": self.note,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "GrowthLemmaReport":
        return cls(
            K=obj["K"],
            ell=obj["ell"],
            gamma=obj["gamma"],
            grid_spec=GridSpec.from_dict(obj["grid_spec"]),
            n_points=obj["n_points"],
            n_survival_points=obj["n_survival_points"],
            margin_growth=obj["margin_growth"],
            margin_survival=obj["margin_survival"],
            verdict=obj["verdict"],
            witnesses=tuple((w[0], w[1], w[2], w[3]) for w in obj["witnesses"]),
            note=obj["note"],
        )


def check_lemma_growth(
    d: Distribution,
    K,
    ell: int,
    gamma: float,
    grid_spec: GridSpec = DEFAULT_GRID,
) -> GrowthLemmaReport:
    """Certify the iterated consequences of the condition at step count ell.

    Requires a passing condition certificate at K first; the iteration is a
    consequence of the condition and is meaningless without it.
    """
    K = _check_K(K)
    ell = operator.index(ell)
    if ell < 1:
        raise ValueError(f"ell must be an integer >= 1, got {ell}")
    gamma = float(gamma)
    if not 0.0 < gamma < 1.0:
        raise ValueError(f"gamma must lie strictly in (0, 1), got {gamma!r}")

    pre = check_condition(d, K, grid_spec)
    if not pre.passed:
        raise RegularityPreconditionError(
            f"growth check needs the condition to hold at K={K:g}; "
            f"it fails on the grid with margin {pre.margin:.3e}",
            pre,
        )

    t = grid_spec.points_for(d)
    ft = np.asarray(d.cdf(t))
    ftl = np.asarray(d.cdf(t / K**ell))
    pow2 = 2.0**ell

    g_lhs = ft
    g_rhs = pow2 * (1.0 - ft) * ftl

    applicable = ft >= 1.0 - gamma
    s_lhs = 1.0 - ftl[applicable]
    s_rhs = (pow2 / (pow2 * gamma + 1.0)) * (1.0 - ft[applicable])

    witnesses: list[tuple[str, float, float, float]] = []

    g_margin = g_lhs - g_rhs
    gi = int(np.argmin(g_margin))
    margin_growth = float(g_margin[gi])
    if margin_growth < -MARGIN_TOL:
        witnesses.append(("growth", float(t[gi]), float(g_lhs[gi]), float(g_rhs[gi])))

    if s_lhs.size:
        s_margin = s_lhs - s_rhs
        si = int(np.argmin(s_margin))
        margin_survival = float(s_margin[si])
        if margin_survival < -MARGIN_TOL:
            ts = t[applicable]
            witnesses.append(("survival", float(ts[si]), float(s_lhs[si]), float(s_rhs[si])))
    else:
        margin_survival = math.inf

    verdict = "pass" if not witnesses else "fail"
    return GrowthLemmaReport(
        K=K,
        ell=ell,
        gamma=gamma,
        grid_spec=grid_spec,
        n_points=t.size,
        n_survival_points=int(np.count_nonzero(applicable)),
        margin_growth=margin_growth,
        margin_survival=margin_survival,
        verdict=verdict,
        witnesses=tuple(witnesses),
    )


def check_logconcave_k3(d: Distribution, grid_spec: GridSpec = DEFAULT_GRID) -> RegularityCertificate:
    """Condition check at K=3 for the builtin laws arising as |eta| with
    log-concave eta (exponential, half-Gaussian, uniform)."""
    if not isinstance(d, (Exponential, HalfGaussian, Uniform01)):
        raise TypeError(
            "K=3 shortcut applies to Exponential, HalfGaussian, or Uniform01, "
            f"got {type(d).__name__}"
        )
    return check_condition(d, 3.0, grid_spec)


@dataclass(frozen=True)
class MinKResult:
    """Smallest passing K found by bisection over a K-range.

    ``assumes_monotone_in_K`` records that the bisection treats the pass
    verdict as monotone in K.  At any fixed t the cross-multiplied margin is
    nondecreasing in K, which justifies this on the probed grid, but the
    result is still grid-limited and should not be read as sharp.
    """

    K: float
    bracket: tuple[float, float]
    grid_spec: GridSpec
    assumes_monotone_in_K: bool = True

    def to_dict(self) -> dict:
        return {
            "K": self.K,
            "bracket": list(self.bracket),
            "grid_spec": self.grid_spec.to_dict(),
            "assumes_monotone_in_K": self.assumes_monotone_in_K,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "MinKResult":
        return cls(
            K=obj["K"],
            bracket=(obj["bracket"][0], obj["bracket"][1]),
            grid_spec=GridSpec.from_dict(obj["grid_spec"]),
            assumes_monotone_in_K=obj["assumes_monotone_in_K"],
        )


def find_min_K(
    d: Distribution,
    grid_spec: GridSpec = DEFAULT_GRID,
    K_range: tuple[float, float] = (1.01, 8.0),
    tol: float = 1e-3,
) -> MinKResult:
    """Bisect for the smallest K in K_range whose condition check passes.

    Returns the passing end of the final bracket, so the reported K always
    certifies.  Raises ValueError when even the top of the range fails.
    """
    lo, hi = float(K_range[0]), float(K_range[1])
    if not (1.0 < lo < hi):
        raise ValueError(f"K_range must satisfy 1 < K_lo < K_hi, got {K_range!r}")
    tol = float(tol)
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol!r}")

    def passes(K: float) -> bool:
        return check_condition(d, K, grid_spec).passed

    if passes(lo):
        return MinKResult(K=lo, bracket=(lo, lo), grid_spec=grid_spec)
    if not passes(hi):
        raise ValueError(
            f"not found in range: no K in ({lo:g}, {hi:g}] passes the condition on the grid"
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if passes(mid):
            hi = mid
        else:
            lo = mid
    return MinKResult(K=hi, bracket=(lo, hi), grid_spec=grid_spec)
