"""End-to-end certification of the median sandwich and tail bounds.

For a model of n independent components each passing the odds-doubling
condition at K, write q for the mixture quantile of order (k - 1/2)/n and
Med for the median of the k-th smallest.  The certified statements are

    K^-10 * q  <=  Med  <=  K^13 * q,

together with, for thresholds expressed as multiples t of q,

    P{ k-th smallest < t*q }  <=  4 * t^( 1 / (4 ln K))   for 0 < t < K^-5,
    P{ k-th smallest > t*q }  <=  4 * t^(-1 / (6 ln K))   for t > K^5.

All logs are natural.  Exact probabilities come from the Poisson binomial
engine; nothing here is sampled or approximated beyond grid certification of
the regularity precondition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .ostat import OrderStatModel, averaged_quantile, kmin_cdf, kmin_median, kmin_strict_cdf
from .regularity import DEFAULT_GRID, GridSpec, RegularityCertificate, check_condition

__all__ = [
    "SANDWICH_LOWER_EXP",
    "SANDWICH_UPPER_EXP",
    "SANDWICH_REL_TOL",
    "TAIL_TOL",
    "lower_tail_bound",
    "upper_tail_bound",
    "default_lower_t_grid",
    "default_upper_t_grid",
    "TailBoundRow",
    "TheoremReport",
    "verify_theorem",
    "verify_lower_tail",
    "verify_upper_tail",
]

SANDWICH_LOWER_EXP = -10
SANDWICH_UPPER_EXP = 13
SANDWICH_REL_TOL = 1e-9
TAIL_TOL = 1e-12

Q_CONVENTION = "left-quantile"


def lower_tail_bound(t: float, K: float) -> float:
    """4 * t^(1/(4 ln K)), the lower-tail budget at threshold t*q."""
    return 4.0 * float(t) ** (1.0 / (4.0 * math.log(K)))


def upper_tail_bound(t: float, K: float) -> float:
    """4 * t^(-1/(6 ln K)), the upper-tail budget at threshold t*q."""
    return 4.0 * float(t) ** (-1.0 / (6.0 * math.log(K)))


def default_lower_t_grid(K: float, count: int = 10) -> tuple[float, ...]:
    """t = K^(-5-j) for j = 1..count, log-spaced below the K^-5 cutoff."""
    return tuple(float(K) ** -(5 + j) for j in range(1, count + 1))


def default_upper_t_grid(K: float, count: int = 10) -> tuple[float, ...]:
    """t = K^(5+j) for j = 1..count, log-spaced above the K^5 cutoff."""
    return tuple(float(K) ** (5 + j) for j in range(1, count + 1))


@dataclass(frozen=True)
class TailBoundRow:
    """One threshold comparison: exact tail probability against its budget."""

    t: float
    side: str
    threshold: float
    exact_prob: float
    bound: float
    verdict: str
    vacuous: bool

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "side": self.side,
            "threshold": self.threshold,
            "exact_prob": self.exact_prob,
            "bound": self.bound,
            "verdict": self.verdict,
            "vacuous": self.vacuous,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "TailBoundRow":
        return cls(
            t=obj["t"],
            side=obj["side"],
            threshold=obj["threshold"],
            exact_prob=obj["exact_prob"],
            bound=obj["bound"],
            verdict=obj["verdict"],
            vacuous=obj["vacuous"],
        )


@dataclass(frozen=True)
class TheoremReport:
    """Sandwich verdict for one model at one K, with regularity evidence.

    ``verdict`` is "pass" when every component certifies and the sandwich
    holds, "precondition-failed" when some component fails regularity (the
    sandwich numbers are still reported as diagnostics, in ``sandwich_holds``),
    and "fail" when regularity holds but the sandwich does not.
    """

    K: float
    n: int
    k: int
    q: float
    med: float
    ratio: float
    lower: float
    upper: float
    verdict: str
    sandwich_holds: bool
    certificates: tuple[RegularityCertificate, ...]
    q_convention: str = Q_CONVENTION

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        return {
            "K": self.K,
            "n": self.n,
            "k": self.k,
            "q": self.q,
            "med": self.med,
            "ratio": self.ratio,
            "lower": self.lower,
            "upper": self.upper,
            "verdict": self.verdict,
            "sandwich_holds": self.sandwich_holds,
            "certificates": [c.to_dict() for c in self.certificates],
            "q_convention": self.q_convention,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "TheoremReport":
        return cls(
            K=obj["K"],
            n=obj["n"],
            k=obj["k"],
            q=obj["q"],
            med=obj["med"],
            ratio=obj["ratio"],
            lower=obj["lower"],
            upper=obj["upper"],
            verdict=obj["verdict"],
            sandwich_holds=obj["sandwich_holds"],
            certificates=tuple(RegularityCertificate.from_dict(c) for c in obj["certificates"]),
            q_convention=obj["q_convention"],
        )


def _component_certificates(
    model: OrderStatModel, K: float, grid_spec: GridSpec
) -> tuple[RegularityCertificate, ...]:
    # Repeated components are common (homogeneous blocks); certify each
    # distinct law once and share the certificate object.
    cache: dict = {}
    certs = []
    for c in model.components:
        if c not in cache:
            cache[c] = check_condition(c, K, grid_spec)
        certs.append(cache[c])
    return tuple(certs)


def verify_theorem(model: OrderStatModel, K, grid_spec: GridSpec = DEFAULT_GRID) -> TheoremReport:
    """Certify the K^-10 / K^13 median sandwich for one model.

    Every component cdf is first grid-certified at K; the report keeps all
    per-component certificates so a precondition failure is attributable.
    """
    K = float(K)
    if not (math.isfinite(K) and K > 1.0):
        raise ValueError(f"K must be a finite real > 1, got {K!r}")
    certs = _component_certificates(model, K, grid_spec)
    regular = all(c.passed for c in certs)

    q = averaged_quantile(model)
    med = kmin_median(model)
    lower = K**SANDWICH_LOWER_EXP
    upper = K**SANDWICH_UPPER_EXP
    if q > 0.0:
        ratio = med / q
    else:
        ratio = 1.0 if med == 0.0 else math.inf

    lo_val = lower * q
    hi_val = upper * q
    holds = (
        lo_val <= med + SANDWICH_REL_TOL * max(lo_val, med)
        and med <= hi_val + SANDWICH_REL_TOL * max(med, hi_val)
    )
    if not regular:
        verdict = "precondition-failed"
    else:
        verdict = "pass" if holds else "fail"
    return TheoremReport(
        K=K,
        n=model.n,
        k=model.k,
        q=q,
        med=med,
        ratio=ratio,
        lower=lower,
        upper=upper,
        verdict=verdict,
        sandwich_holds=bool(holds),
        certificates=certs,
    )


def _tail_rows(model, K, t_grid, side) -> list[TailBoundRow]:
    K = float(K)
    if not (math.isfinite(K) and K > 1.0):
        raise ValueError(f"K must be a finite real > 1, got {K!r}")
    if t_grid is None:
        t_grid = default_lower_t_grid(K) if side == "lower" else default_upper_t_grid(K)
    ts = sorted(float(t) for t in t_grid)
    cutoff = K**-5 if side == "lower" else K**5
    for t in ts:
        if side == "lower" and not 0.0 < t < cutoff:
            raise ValueError(f"lower-side t must lie in (0, K^-5) = (0, {cutoff:g}), got {t!r}")
        if side == "upper" and not t > cutoff:
            raise ValueError(f"upper-side t must exceed K^5 = {cutoff:g}, got {t!r}")

    q = averaged_quantile(model)
    rows = []
    for t in ts:
        threshold = t * q
        if side == "lower":
            exact = kmin_strict_cdf(model, threshold)
            bound = lower_tail_bound(t, K)
        else:
            exact = 1.0 - kmin_cdf(model, threshold)
            bound = upper_tail_bound(t, K)
        verdict = "pass" if exact <= bound + TAIL_TOL else "fail"
        rows.append(
            TailBoundRow(
                t=t,
                side=side,
                threshold=threshold,
                exact_prob=exact,
                bound=bound,
                verdict=verdict,
                vacuous=bound >= 1.0,
            )
        )
    return rows


def verify_lower_tail(model: OrderStatModel, K, t_grid=None) -> list[TailBoundRow]:
    """Rows of P{k-th smallest < t*q} vs 4*t^(1/(4 ln K)) over t in (0, K^-5).

    Assumes the components already certify at K (see verify_theorem); the
    comparison itself never re-checks regularity.
    """
    return _tail_rows(model, K, t_grid, "lower")


def verify_upper_tail(model: OrderStatModel, K, t_grid=None) -> list[TailBoundRow]:
    """Rows of P{k-th smallest > t*q} vs 4*t^(-1/(6 ln K)) over t > K^5."""
    return _tail_rows(model, K, t_grid, "upper")
