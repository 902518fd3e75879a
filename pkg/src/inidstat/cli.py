"""Command-line front end.

Subcommands delegate 1:1 to the library modules and serialize results as a
human table (default), CSV, or JSON.  Exit codes: 0 all verdicts pass,
1 at least one verdict failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np
from scipy import stats as st

from . import bounds, mc, ostat, pbin, regularity
from .dist import (
    Atomic,
    Distribution,
    Exponential,
    HalfGaussian,
    ParetoPower,
    PiecewiseLinearCdf,
    Uniform01,
)
from .ostat import OrderStatModel

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

_FAMILY_PARAMS = {
    "uniform01": (),
    "pareto_power": ("p",),
    "exponential": ("rate",),
    "half_gaussian": ("sigma",),
    "piecewise_linear": ("knots",),
    "atomic": ("atoms",),
}

KNOWN_FAMILIES = tuple(sorted(_FAMILY_PARAMS))


def build_distribution(family: str, params: dict | None = None, scale: float = 1.0) -> Distribution:
    """Construct a component law from its spec-file description."""
    params = dict(params or {})
    if family not in _FAMILY_PARAMS:
        raise ValueError(f"unknown family {family!r}; known families: {', '.join(KNOWN_FAMILIES)}")
    allowed = _FAMILY_PARAMS[family]
    for key in params:
        if key not in allowed:
            raise ValueError(f"unknown parameter {key!r} for family {family!r}; allowed: {allowed or '()'}")
    if family == "uniform01":
        return Uniform01(scale=scale)
    if family == "pareto_power":
        return ParetoPower(p=params.get("p", 1.0), scale=scale)
    if family == "exponential":
        return Exponential(rate=params.get("rate", 1.0), scale=scale)
    if family == "half_gaussian":
        return HalfGaussian(sigma=params.get("sigma", 1.0), scale=scale)
    if family == "piecewise_linear":
        knots = params.get("knots", [[0.0, 0.0], [1.0, 1.0]])
        return PiecewiseLinearCdf(knots=tuple(tuple(p) for p in knots), scale=scale)
    atoms = params.get("atoms", [[1.0, 1.0]])
    return Atomic(atoms=tuple(tuple(p) for p in atoms), scale=scale)


def parse_model_spec(obj) -> OrderStatModel:
    """Validate a decoded model-spec document and expand it into a model."""
    if not isinstance(obj, dict):
        raise ValueError("model spec must be a JSON object")
    extra = set(obj) - {"k", "components"}
    if extra:
        raise ValueError(f"unknown model-spec keys: {sorted(extra)}")
    if "k" not in obj or "components" not in obj:
        raise ValueError('model spec needs "k" and "components"')
    comps_in = obj["components"]
    if not isinstance(comps_in, list) or not comps_in:
        raise ValueError('"components" must be a non-empty list')
    components: list[Distribution] = []
    for i, entry in enumerate(comps_in):
        if not isinstance(entry, dict):
            raise ValueError(f"component #{i} must be an object")
        extra = set(entry) - {"family", "params", "scale", "repeat"}
        if extra:
            raise ValueError(f"component #{i}: unknown keys {sorted(extra)}")
        if "family" not in entry:
            raise ValueError(f'component #{i}: missing "family"')
        repeat = entry.get("repeat", 1)
        if not isinstance(repeat, int) or repeat < 1:
            raise ValueError(f"component #{i}: repeat must be an integer >= 1, got {repeat!r}")
        d = build_distribution(entry["family"], entry.get("params"), entry.get("scale", 1.0))
        components.extend([d] * repeat)
    return OrderStatModel(components=tuple(components), k=obj["k"])


def load_model(path: str) -> OrderStatModel:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ValueError(f"cannot read model spec {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"model spec {path!r} is not valid JSON: {exc}") from exc
    return parse_model_spec(obj)


def parse_grid(text: str | None) -> regularity.GridSpec:
    if text is None:
        return regularity.DEFAULT_GRID
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must be tmin:tmax:ppd, got {text!r}")
    try:
        return regularity.GridSpec(float(parts[0]), float(parts[1]), int(parts[2]))
    except ValueError as exc:
        raise ValueError(f"bad grid {text!r}: {exc}") from exc


def _fmt(x) -> str:
    # 17 significant digits round-trips any double exactly.
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _csv(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _kv_table(pairs: list[tuple[str, object]]) -> str:
    width = max(len(k) for k, _ in pairs)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in pairs) + "\n"


def _emit(args, table: str, csv_text: str, payload) -> None:
    if args.format == "csv":
        text = csv_text
    elif args.format == "json":
        text = json.dumps(payload, indent=2) + "\n"
    else:
        text = table
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _family_from_args(args) -> Distribution:
    params = {}
    if args.p is not None:
        params["p"] = args.p
    if args.rate is not None:
        params["rate"] = args.rate
    if args.sigma is not None:
        params["sigma"] = args.sigma
    if args.knots is not None:
        params["knots"] = json.loads(args.knots)
    if args.atoms is not None:
        params["atoms"] = json.loads(args.atoms)
    return build_distribution(args.family, params, args.scale)


def _cmd_check_condition(args) -> int:
    d = _family_from_args(args)
    grid = parse_grid(args.grid)
    checker = {
        "condition": regularity.check_condition,
        "measure-form": regularity.check_measure_form,
        "weak-condition": regularity.check_weak_condition,
    }[args.form]
    cert = checker(d, args.K, grid)
    t, lhs, rhs, _ = regularity.pointwise_margins(d, args.K, grid, args.form)
    margin = lhs - rhs
    ok = margin >= -regularity.MARGIN_TOL
    rows = [
        [float(t[i]), float(lhs[i]), float(rhs[i]), float(margin[i]), "pass" if ok[i] else "fail"]
        for i in range(t.size)
    ]
    csv_text = _csv(["t", "lhs", "rhs", "margin", "verdict"], rows)
    pairs = [
        ("check", cert.check),
        ("law", repr(d)),
        ("K", _fmt(cert.K)),
        ("grid points", cert.n_points),
        ("worst margin", _fmt(cert.margin)),
        ("verdict", cert.verdict),
    ]
    if cert.witness is not None:
        wt, wl, wr = cert.witness
        pairs.append(("worst witness", f"t={_fmt(wt)} lhs={_fmt(wl)} rhs={_fmt(wr)}"))
    pairs.append(("note", cert.note))
    _emit(args, _kv_table(pairs), csv_text, cert.to_dict())
    return EXIT_PASS if cert.passed else EXIT_FAIL


def _cmd_min_k(args) -> int:
    d = _family_from_args(args)
    grid = parse_grid(args.grid)
    result = regularity.find_min_K(d, grid, (args.K_lo, args.K_hi), args.tol)
    rows = [[result.K, result.bracket[0], result.bracket[1]]]
    csv_text = _csv(["K", "bracket_lo", "bracket_hi"], rows)
    table = _kv_table(
        [
            ("law", repr(d)),
            ("smallest passing K", _fmt(result.K)),
            ("bracket", f"({_fmt(result.bracket[0])}, {_fmt(result.bracket[1])})"),
            ("assumes monotone in K", result.assumes_monotone_in_K),
        ]
    )
    _emit(args, table, csv_text, result.to_dict())
    return EXIT_PASS


def _cmd_median(args) -> int:
    model = load_model(args.model)
    med = ostat.kmin_median(model)
    payload = {"n": model.n, "k": model.k, "median": med}
    csv_text = _csv(["n", "k", "median"], [[model.n, model.k, med]])
    table = _kv_table([("n", model.n), ("k", model.k), ("median", _fmt(med))])
    _emit(args, table, csv_text, payload)
    return EXIT_PASS


def _cmd_quantile(args) -> int:
    model = load_model(args.model)
    value = ostat.kmin_quantile(model, args.r)
    payload = {"n": model.n, "k": model.k, "r": args.r, "quantile": value}
    csv_text = _csv(["n", "k", "r", "quantile"], [[model.n, model.k, args.r, value]])
    table = _kv_table(
        [("n", model.n), ("k", model.k), ("order r", _fmt(args.r)), ("quantile", _fmt(value))]
    )
    _emit(args, table, csv_text, payload)
    return EXIT_PASS


def _cmd_verify_theorem(args) -> int:
    model = load_model(args.model)
    grid = parse_grid(args.grid)
    report = bounds.verify_theorem(model, args.K, grid)
    if args.unsafe_override_bound is not None:
        # Test hook: rescale both sandwich bounds and re-derive the verdict.
        report = _override_theorem(report, args.unsafe_override_bound)
    n_pass = sum(1 for c in report.certificates if c.passed)
    table = _kv_table(
        [
            ("K", _fmt(report.K)),
            ("n", report.n),
            ("k", report.k),
            ("q (mixture quantile)", _fmt(report.q)),
            ("median of k-th smallest", _fmt(report.med)),
            ("ratio med/q", _fmt(report.ratio)),
            ("lower factor K^-10", _fmt(report.lower)),
            ("upper factor K^13", _fmt(report.upper)),
            ("sandwich holds", report.sandwich_holds),
            ("regular components", f"{n_pass}/{report.n}"),
            ("verdict", report.verdict),
        ]
    )
    csv_text = _csv(
        ["K", "n", "k", "q", "med", "ratio", "lower", "upper", "verdict"],
        [[report.K, report.n, report.k, report.q, report.med, report.ratio,
          report.lower, report.upper, report.verdict]],
    )
    _emit(args, table, csv_text, report.to_dict())
    return EXIT_PASS if report.passed else EXIT_FAIL


def _override_theorem(report: bounds.TheoremReport, factor: float) -> bounds.TheoremReport:
    lower = report.lower * factor
    upper = report.upper * factor
    lo_val, hi_val = lower * report.q, upper * report.q
    holds = (
        lo_val <= report.med + bounds.SANDWICH_REL_TOL * max(lo_val, report.med)
        and report.med <= hi_val + bounds.SANDWICH_REL_TOL * max(report.med, hi_val)
    )
    regular = all(c.passed for c in report.certificates)
    verdict = "precondition-failed" if not regular else ("pass" if holds else "fail")
    return bounds.TheoremReport(
        K=report.K, n=report.n, k=report.k, q=report.q, med=report.med,
        ratio=report.ratio, lower=lower, upper=upper, verdict=verdict,
        sandwich_holds=bool(holds), certificates=report.certificates,
        q_convention=report.q_convention,
    )


def _cmd_tail_bounds(args) -> int:
    model = load_model(args.model)
    sides = ["lower", "upper"] if args.side == "both" else [args.side]
    if args.t and args.side == "both":
        raise ValueError("--t requires an explicit --side lower or --side upper")
    rows: list[bounds.TailBoundRow] = []
    for side in sides:
        if args.t:
            grid = args.t
        elif side == "lower":
            grid = bounds.default_lower_t_grid(args.K, args.count)
        else:
            grid = bounds.default_upper_t_grid(args.K, args.count)
        fn = bounds.verify_lower_tail if side == "lower" else bounds.verify_upper_tail
        rows.extend(fn(model, args.K, grid))
    if args.unsafe_override_bound is not None:
        factor = args.unsafe_override_bound
        rows = [
            bounds.TailBoundRow(
                t=r.t, side=r.side, threshold=r.threshold, exact_prob=r.exact_prob,
                bound=r.bound * factor,
                verdict="pass" if r.exact_prob <= r.bound * factor + bounds.TAIL_TOL else "fail",
                vacuous=r.bound * factor >= 1.0,
            )
            for r in rows
        ]
    csv_text = _csv(
        ["t", "side", "threshold", "exact_prob", "bound", "verdict"],
        [[r.t, r.side, r.threshold, r.exact_prob, r.bound, r.verdict] for r in rows],
    )
    header = f"{'t':>12}  {'side':5}  {'threshold':>12}  {'exact_prob':>12}  {'bound':>12}  verdict"
    body = [
        f"{r.t:12.6g}  {r.side:5}  {r.threshold:12.6g}  {r.exact_prob:12.6g}  {r.bound:12.6g}  "
        + (r.verdict + (" (vacuous)" if r.vacuous else ""))
        for r in rows
    ]
    all_pass = all(r.passed for r in rows)
    table = "\n".join([header, *body, f"overall: {'pass' if all_pass else 'fail'}"]) + "\n"
    _emit(args, table, csv_text, [r.to_dict() for r in rows])
    return EXIT_PASS if all_pass else EXIT_FAIL


def _cmd_simulate(args) -> int:
    model = load_model(args.model)
    result = mc.simulate_median(model, args.replicates, args.seed, args.ci_level)
    exact = ostat.kmin_median(model)
    covered = result.ci_low <= exact <= result.ci_high
    pairs = [
        ("replicates", result.replicates),
        ("estimate", _fmt(result.estimate)),
        ("ci", f"[{_fmt(result.ci_low)}, {_fmt(result.ci_high)}] at {result.ci_level:g}"),
        ("exact median", _fmt(exact)),
        ("ci covers exact", covered),
        ("seed", result.seed),
        ("generator", result.generator),
        ("elapsed (s)", f"{result.elapsed:.3f}"),
    ]
    payload = dict(result.to_dict(), exact_median=exact, ci_covers_exact=bool(covered))
    csv_text = _csv(
        ["replicates", "estimate", "ci_low", "ci_high", "ci_level", "exact_median", "seed"],
        [[result.replicates, result.estimate, result.ci_low, result.ci_high,
          result.ci_level, exact, result.seed]],
    )
    _emit(args, _kv_table(pairs), csv_text, payload)
    return EXIT_PASS if covered else EXIT_FAIL


def _cmd_oracle(args) -> int:
    rng = np.random.Generator(np.random.Philox(key=args.seed & ((1 << 64) - 1)))

    # Tail engine vs exhaustive enumeration on small random vectors.
    worst_tail = 0.0
    for _ in range(args.trials):
        n = int(rng.integers(1, 13))
        probs = rng.random(n)
        sv = pbin.SuccessVector(probs)
        for k in range(0, n + 2):
            worst_tail = max(worst_tail, abs(pbin.tail_at_least(sv, k) - pbin.brute_force_tail(sv, k)))

    # Exact engine vs the binomial counting formula for i.i.d. uniforms.
    worst_iid = 0.0
    for n in (1, 2, 3, 5, 10, 25, 50):
        comps = tuple(Uniform01() for _ in range(n))
        for k in range(1, n + 1):
            model = OrderStatModel(comps, k)
            for t in np.linspace(0.1, 0.9, 9):
                ref = float(st.binom.sf(k - 1, n, t))
                worst_iid = max(worst_iid, abs(ostat.kmin_cdf(model, t) - ref))

    ok = worst_tail <= 1e-12 and worst_iid <= 1e-10
    pairs = [
        ("tail vs enumeration, max |diff|", _fmt(worst_tail)),
        ("tolerance", _fmt(1e-12)),
        ("iid uniform vs binomial, max |diff|", _fmt(worst_iid)),
        ("tolerance", _fmt(1e-10)),
        ("verdict", "pass" if ok else "fail"),
    ]
    csv_text = _csv(
        ["check", "max_abs_diff", "tolerance", "verdict"],
        [
            ["tail_vs_enumeration", worst_tail, 1e-12, "pass" if worst_tail <= 1e-12 else "fail"],
            ["iid_uniform_vs_binomial", worst_iid, 1e-10, "pass" if worst_iid <= 1e-10 else "fail"],
        ],
    )
    payload = {
        "tail_vs_enumeration": {"max_abs_diff": worst_tail, "tolerance": 1e-12},
        "iid_uniform_vs_binomial": {"max_abs_diff": worst_iid, "tolerance": 1e-10},
        "verdict": "pass" if ok else "fail",
    }
    _emit(args, _kv_table(pairs), csv_text, payload)
    return EXIT_PASS if ok else EXIT_FAIL


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p.add_argument("--out", default=None, help="write output to a file instead of stdout")
    p.add_argument("--threads", type=int, default=1,
                   help="accepted for pipeline compatibility; results are identical for any value")


def _add_family(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True, choices=KNOWN_FAMILIES)
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--p", type=float, default=None, help="pareto_power exponent")
    p.add_argument("--rate", type=float, default=None, help="exponential rate")
    p.add_argument("--sigma", type=float, default=None, help="half_gaussian sigma")
    p.add_argument("--knots", default=None, help="piecewise_linear knots as JSON [[t,F],...]")
    p.add_argument("--atoms", default=None, help="atomic atoms as JSON [[value,weight],...]")
    p.add_argument("--grid", default=None, help="tmin:tmax:ppd, default 1e-6:1e6:64")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="inidstat",
        description="Exact order statistics of independent non-identical laws, "
                    "with certified median and tail bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-condition", help="grid-certify the odds-doubling condition for one law")
    _add_family(p)
    p.add_argument("--K", type=float, required=True)
    p.add_argument("--form", choices=("condition", "measure-form", "weak-condition"), default="condition")
    _add_common(p)
    p.set_defaults(func=_cmd_check_condition)

    p = sub.add_parser("min-k", help="bisect for the smallest passing K")
    _add_family(p)
    p.add_argument("--K-lo", dest="K_lo", type=float, default=1.01)
    p.add_argument("--K-hi", dest="K_hi", type=float, default=8.0)
    p.add_argument("--tol", type=float, default=1e-3)
    _add_common(p)
    p.set_defaults(func=_cmd_min_k)

    p = sub.add_parser("median", help="exact median of the k-th smallest for a model file")
    p.add_argument("--model", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_median)

    p = sub.add_parser("quantile", help="exact quantile of the k-th smallest for a model file")
    p.add_argument("--model", required=True)
    p.add_argument("--r", type=float, required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_quantile)

    p = sub.add_parser("verify-theorem", help="median sandwich certificate for a model file")
    p.add_argument("--model", required=True)
    p.add_argument("--K", type=float, required=True)
    p.add_argument("--grid", default=None, help="tmin:tmax:ppd for the regularity grid")
    p.add_argument("--unsafe-override-bound", type=float, default=None,
                   help="test hook: multiply the sandwich factors by this value")
    _add_common(p)
    p.set_defaults(func=_cmd_verify_theorem)

    p = sub.add_parser("tail-bounds", help="tail probability vs budget rows for a model file")
    p.add_argument("--model", required=True)
    p.add_argument("--K", type=float, required=True)
    p.add_argument("--side", choices=("lower", "upper", "both"), default="both")
    p.add_argument("--count", type=int, default=10, help="points per side in the default grid")
    p.add_argument("--t", type=float, action="append", default=None,
                   help="explicit t value (repeatable); requires --side")
    p.add_argument("--unsafe-override-bound", type=float, default=None,
                   help="test hook: multiply every bound by this value")
    _add_common(p)
    p.set_defaults(func=_cmd_tail_bounds)

    p = sub.add_parser("simulate", help="Monte Carlo median with order-statistic CI")
    p.add_argument("--model", required=True)
    p.add_argument("--replicates", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ci-level", dest="ci_level", type=float, default=0.99)
    _add_common(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("oracle", help="cross-check the exact engines against brute force")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=50)
    _add_common(p)
    p.set_defaults(func=_cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help and 2 for usage errors.
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
