"""Command-line front end: JSON problem documents in, CSV/JSON plus verdict lines out.

Exit codes: 0 success (including TRUNCATED spectra, a legitimate outcome),
2 validation or I/O error (the message names the offending field),
3 an analysis verdict came out FAIL (so CI can gate on the claims).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import sys
from pathlib import Path

from .analysis import (
    growth_check,
    incompatibility_report,
    order_estimate,
    partial_sum_primes,
    partial_sum_spectrum,
)
from .coeff import (
    BoundaryCondition,
    CoefficientSet,
    Interval,
    PiecewiseConstant,
    SLProblem,
)
from .errors import BadConfig, SlprimeError
from .inverse import SearchConfig, search
from .nonlinear import NonlinearProblem, nonlinear_spectrum
from .primes import cesaro, nth_prime, pnt_asymptotic
from .spectrum import SolverOptions, compute_spectrum

__all__ = ["run", "main", "document_to_problem", "problem_to_document"]

_VERSION = "0.1.0"
_ANGLE_STRINGS = {"pi": math.pi, "pi/2": math.pi / 2}


# ---------------------------------------------------------------- documents


def _expect_fields(obj, path: str, required: set[str], optional: set[str] = frozenset()):
    if not isinstance(obj, dict):
        raise BadConfig(f"{path} must be a JSON object")
    for key in obj:
        if key not in required and key not in optional:
            raise BadConfig(f"{path}: unknown field '{key}'")
    for key in required:
        if key not in obj:
            raise BadConfig(f"{path}.{key} is required")


def _number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise BadConfig(f"{path} must be a number")
    out = float(value)
    if not math.isfinite(out):
        raise BadConfig(f"{path} must be finite")
    return out


def _angle(value, path: str) -> float:
    if isinstance(value, str):
        if value in _ANGLE_STRINGS:
            return _ANGLE_STRINGS[value]
        raise BadConfig(f"{path}: only 'pi' and 'pi/2' are accepted as strings, got '{value}'")
    return _number(value, path)


def _piecewise(obj, path: str) -> PiecewiseConstant:
    _expect_fields(obj, path, {"breakpoints", "values"})
    bp = obj["breakpoints"]
    vals = obj["values"]
    if not isinstance(bp, list) or not isinstance(vals, list):
        raise BadConfig(f"{path}.breakpoints and {path}.values must be arrays")
    bps = tuple(_number(x, f"{path}.breakpoints[{i}]") for i, x in enumerate(bp))
    vs = tuple(_number(x, f"{path}.values[{i}]") for i, x in enumerate(vals))
    try:
        return PiecewiseConstant(bps, vs)
    except SlprimeError as exc:
        raise BadConfig(f"{path}: {exc}") from exc


def document_to_problem(doc) -> tuple[SLProblem, SolverOptions]:
    """Validate a parsed JSON problem document into (SLProblem, SolverOptions)."""
    _expect_fields(doc, "document", {"interval", "coefficients", "bc"}, {"solver"})
    _expect_fields(doc["interval"], "interval", {"a", "b"})
    a = _number(doc["interval"]["a"], "interval.a")
    b = _number(doc["interval"]["b"], "interval.b")
    if b <= a:
        raise BadConfig(f"interval.b must exceed interval.a, got [{a}, {b}]")

    _expect_fields(doc["coefficients"], "coefficients", {"s", "q", "r"})
    s = _piecewise(doc["coefficients"]["s"], "coefficients.s")
    q = _piecewise(doc["coefficients"]["q"], "coefficients.q")
    r = _piecewise(doc["coefficients"]["r"], "coefficients.r")

    _expect_fields(doc["bc"], "bc", {"alpha", "beta"})
    alpha = _angle(doc["bc"]["alpha"], "bc.alpha")
    beta = _angle(doc["bc"]["beta"], "bc.beta")
    if not 0.0 <= alpha < math.pi:
        raise BadConfig(f"bc.alpha must lie in [0, π), got {alpha}")
    if not 0.0 < beta <= math.pi:
        raise BadConfig(f"bc.beta must lie in (0, π], got {beta}")

    opts = SolverOptions()
    if "solver" in doc:
        _expect_fields(doc["solver"], "solver", set(), {"angle_tol", "lambda_tol_rel", "lambda_cap"})
        kwargs = {}
        for key in ("angle_tol", "lambda_tol_rel", "lambda_cap"):
            if key in doc["solver"]:
                val = _number(doc["solver"][key], f"solver.{key}")
                if val <= 0.0:
                    raise BadConfig(f"solver.{key} must be positive, got {val}")
                kwargs[key] = val
        opts = SolverOptions(**kwargs)

    try:
        problem = SLProblem(
            interval=Interval(a, b),
            coeffs=CoefficientSet(s=s, q=q, r=r),
            bc=BoundaryCondition(alpha, beta),
        )
    except SlprimeError as exc:
        raise BadConfig(f"coefficients: {exc}") from exc
    return problem, opts


def problem_to_document(problem: SLProblem, opts: SolverOptions | None = None) -> dict:
    """Serialize back to the JSON document shape; parse(serialize(x)) == x."""
    opts = opts or SolverOptions()

    def pw(p: PiecewiseConstant):
        return {"breakpoints": list(p.breakpoints), "values": list(p.values)}

    return {
        "interval": {"a": problem.interval.a, "b": problem.interval.b},
        "coefficients": {
            "s": pw(problem.coeffs.s),
            "q": pw(problem.coeffs.q),
            "r": pw(problem.coeffs.r),
        },
        "bc": {"alpha": problem.bc.alpha, "beta": problem.bc.beta},
        "solver": {
            "angle_tol": opts.angle_tol,
            "lambda_tol_rel": opts.lambda_tol_rel,
            "lambda_cap": opts.lambda_cap,
        },
    }


def _load_problem(path: str) -> tuple[SLProblem, SolverOptions, dict]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise BadConfig(f"cannot read config '{path}': {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadConfig(f"{path}: invalid JSON: {exc}") from exc
    problem, opts = document_to_problem(doc)
    return problem, opts, problem_to_document(problem, opts)


# ---------------------------------------------------------------- output


def _config_hash(effective: dict) -> str:
    blob = json.dumps(effective, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_csv(out_path: str | None, header, rows, cfg_hash: str) -> None:
    buf = io.StringIO()
    buf.write(f"# slprime {_VERSION} config_sha256={cfg_hash}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    if out_path is None:
        sys.stdout.write(buf.getvalue())
    else:
        Path(out_path).write_text(buf.getvalue(), encoding="utf-8")


def _verdict(tag: str, verdict: str) -> int:
    print(f"VERDICT: {verdict} {tag}")
    return 3 if verdict == "FAIL" else 0


# ---------------------------------------------------------------- handlers


def _cmd_spectrum(args) -> int:
    problem, opts, doc = _load_problem(args.config)
    if args.n_max < 1:
        raise BadConfig(f"--n-max must be >= 1, got {args.n_max}")
    spec = compute_spectrum(problem, args.n_max, opts)
    cfg = _config_hash({"command": "spectrum", "doc": doc, "n_max": args.n_max})
    rows = [(ev.index, ev.value, ev.oscillation, ev.residual) for ev in spec.eigenvalues]
    _write_csv(args.out, ("n", "lambda", "oscillation", "residual"), rows, cfg)
    if spec.truncated:
        print(spec.truncation_note)
    return 0


def _cmd_nonlinear(args) -> int:
    if args.config is not None:
        problem, opts, doc = _load_problem(args.config)
        ivl = problem.interval
        ones_ok = (
            set(problem.coeffs.s.values) == {1.0}
            and set(problem.coeffs.r.values) == {1.0}
            and (ivl.a, ivl.b) == (0.0, 1.0)
        )
        if not ones_ok:
            raise BadConfig(
                "nonlinear needs s = r = 1 on [0, 1]; only coefficients.q may vary"
            )
        nl = NonlinearProblem(problem.coeffs.q)
    else:
        nl = NonlinearProblem(PiecewiseConstant((0.0, 1.0), (0.0,)))
        opts, doc = SolverOptions(), None
    if args.n_max < 1:
        raise BadConfig(f"--n-max must be >= 1, got {args.n_max}")
    rows_nl = nonlinear_spectrum(nl, args.n_max, opts)
    cfg = _config_hash({"command": "nonlinear", "doc": doc, "n_max": args.n_max})
    rows = []
    for row in rows_nl:
        p = nth_prime(row.index)
        gap = None if row.lam is None else row.lam - p
        rows.append((row.index, row.mu, row.lam, p, gap))
    _write_csv(args.out, ("n", "mu", "lambda", "p_n", "lambda_minus_p"), rows, cfg)
    return 0


def _prime_checkpoints(n_max: int) -> list[int]:
    pts = {n for n in range(1, 11) if n <= n_max}
    scale = 10
    while scale <= n_max:
        for mult in (1, 2, 5):
            if mult * scale <= n_max:
                pts.add(mult * scale)
        scale *= 10
    pts.add(n_max)
    return sorted(pts)


def _cmd_primes(args) -> int:
    if args.n_max < 1:
        raise BadConfig(f"--n-max must be >= 1, got {args.n_max}")
    cfg = _config_hash({"command": "primes", "n_max": args.n_max})
    rows = []
    for n in _prime_checkpoints(args.n_max):
        p = nth_prime(n)
        asym = pnt_asymptotic(n) if n >= 2 else None
        ces = cesaro(n) if n >= 3 else None
        err_a = None if asym is None else abs(asym - p) / p
        err_c = None if ces is None else abs(ces - p) / p
        rows.append((n, p, asym, ces, err_a, err_c))
    _write_csv(
        args.out,
        ("n", "p_n", "n_log_n", "cesaro", "rel_err_pnt", "rel_err_cesaro"),
        rows,
        cfg,
    )
    return 0


def _cmd_incompat(args) -> int:
    problem, opts, doc = _load_problem(args.config)
    spec = compute_spectrum(problem, args.n_max, opts)
    if spec.truncated:
        print(spec.truncation_note)
        raise BadConfig(
            f"spectrum truncated before n = {args.n_max}; incompat needs the full range"
        )
    report = incompatibility_report(spec, args.n_max)
    cfg = _config_hash({"command": "incompat", "doc": doc, "n_max": args.n_max})
    _write_csv(args.out, ("n", "lambda", "p_n", "ratio"), report.rows, cfg)
    print(report.note)
    return _verdict("incompat", report.verdict)


def _cmd_growth(args) -> int:
    problem, _, doc = _load_problem(args.config)
    lam = complex(args.lambda_re, args.lambda_im)
    report = growth_check(problem, lam, args.x_samples)
    cfg = _config_hash(
        {
            "command": "growth",
            "doc": doc,
            "lambda": [args.lambda_re, args.lambda_im],
            "x_samples": args.x_samples,
        }
    )
    rows = [(x, m, b, s) for x, m, b, s in report.samples]
    _write_csv(args.out, ("x", "measured", "bound", "slack"), rows, cfg)
    print(f"min_slack {report.min_slack!r}")
    return _verdict("growth", "PASS" if report.passed else "FAIL")


def _cmd_order(args) -> int:
    problem, _, doc = _load_problem(args.config)
    try:
        radii = [float(tok) for tok in args.radii.split(",") if tok.strip()]
    except ValueError as exc:
        raise BadConfig(f"--radii must be comma-separated numbers: {exc}") from exc
    est = order_estimate(problem, radii, args.angular_samples)
    cfg = _config_hash(
        {
            "command": "order",
            "doc": doc,
            "radii": radii,
            "angular_samples": args.angular_samples,
        }
    )
    rows = list(zip(est.radii, est.log_max_modulus, (int(u) for u in est.used)))
    _write_csv(args.out, ("radius", "log_max_modulus", "used_in_fit"), rows, cfg)
    print(f"slope {est.slope!r}")
    if est.low_confidence:
        verdict = "INCONCLUSIVE"
    elif 0.4 <= est.slope <= 0.6:
        verdict = "PASS"
    else:
        verdict = "FAIL"
    return _verdict("order", verdict)


def _cmd_series(args) -> int:
    prime_rows = partial_sum_primes(args.epsilon, args.n_max)
    model_rows = partial_sum_spectrum(args.growth_constant, args.epsilon, args.n_max)
    cfg = _config_hash(
        {
            "command": "series",
            "epsilon": args.epsilon,
            "n_max": args.n_max,
            "growth_constant": args.growth_constant,
        }
    )
    rows = [
        (m, sp, sm, tb)
        for (m, sp), (_, sm, tb) in zip(prime_rows, model_rows)
    ]
    _write_csv(args.out, ("M", "prime_sum", "model_sum", "model_tail_bound"), rows, cfg)

    sums = [sp for _, sp in prime_rows]
    increasing = all(a < b for a, b in zip(sums, sums[1:]))
    last_m = prime_rows[-1][0]
    anchor = [sp for m, sp in prime_rows if m * 100 <= last_m]
    model_ok = model_rows[-1][1] - model_rows[0][1] <= model_rows[0][2] * (1 + 1e-12)
    if not anchor:
        verdict = "INCONCLUSIVE"
    elif increasing and sums[-1] >= 2.0 * anchor[-1] and model_ok:
        verdict = "PASS"
    else:
        verdict = "FAIL"
    return _verdict("series", verdict)


def _cmd_invert(args) -> int:
    try:
        text = Path(args.config).read_text(encoding="utf-8")
    except OSError as exc:
        raise BadConfig(f"cannot read config '{args.config}': {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadConfig(f"{args.config}: invalid JSON: {exc}") from exc
    _expect_fields(
        doc,
        "document",
        set(),
        {"pieces", "bound", "targets", "seed", "restarts", "max_iters", "initial_step"},
    )
    kwargs = {}
    for key in ("pieces", "targets", "seed", "restarts", "max_iters"):
        if key in doc:
            if isinstance(doc[key], bool) or not isinstance(doc[key], int):
                raise BadConfig(f"document.{key} must be an integer")
            kwargs[key] = doc[key]
    for key in ("bound", "initial_step"):
        if key in doc and doc[key] is not None:
            kwargs[key] = _number(doc[key], f"document.{key}")
    if args.seed is not None:
        kwargs["seed"] = args.seed
    cfg_obj = SearchConfig(**kwargs)

    result = search(cfg_obj)
    cfg_dict = {
        "pieces": cfg_obj.pieces,
        "bound": cfg_obj.bound,
        "targets": cfg_obj.targets,
        "seed": cfg_obj.seed,
        "restarts": cfg_obj.restarts,
        "max_iters": cfg_obj.max_iters,
        "initial_step": cfg_obj.initial_step,
    }
    cfg_hash = _config_hash({"command": "invert", "config": cfg_dict})
    payload = {
        "config": cfg_dict,
        "baseline_objective": result.baseline_objective,
        "best_objective": result.best_objective,
        "best_q": {
            "breakpoints": list(result.best_q.breakpoints),
            "values": list(result.best_q.values),
        },
        "trace": [[[it, j] for it, j in tr] for tr in result.trace],
    }
    Path(args.out).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    csv_path = args.csv
    if csv_path is None:
        stem = args.out[:-5] if args.out.endswith(".json") else args.out
        csv_path = stem + "_targets.csv"
    rows = [
        (t.index, t.target, t.achieved, t.implied_lambda, t.prime)
        for t in result.per_target
    ]
    _write_csv(csv_path, ("n", "target_mu", "achieved_mu", "implied_lambda", "p_n"), rows, cfg_hash)
    print(
        f"invert: baseline {result.baseline_objective!r} "
        f"best {result.best_objective!r} -> {args.out}"
    )
    return 0


# ---------------------------------------------------------------- wiring


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slprime",
        description="Sturm-Liouville spectra, prime asymptotics, and the gap between them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="eigenvalues of a problem document")
    p.add_argument("--config", required=True)
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_spectrum)

    p = sub.add_parser("nonlinear", help="spectrum of the nonlinear eigenvalue problem")
    p.add_argument("--config", default=None)
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_nonlinear)

    p = sub.add_parser("primes", help="prime counts against their asymptotics")
    p.add_argument("--n-max", type=int, default=100)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_primes)

    p = sub.add_parser("incompat", help="p_n/lambda_n decay report")
    p.add_argument("--config", required=True)
    p.add_argument("--n-max", type=int, default=1000)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_incompat)

    p = sub.add_parser("growth", help="log-derivative growth bound check")
    p.add_argument("--config", required=True)
    p.add_argument("--lambda-re", type=float, default=-100.0)
    p.add_argument("--lambda-im", type=float, default=0.0)
    p.add_argument("--x-samples", type=int, default=32)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_growth)

    p = sub.add_parser("order", help="entire-function order estimate")
    p.add_argument("--config", required=True)
    p.add_argument("--radii", default="1e2,1e3,1e4,1e5,1e6")
    p.add_argument("--angular-samples", type=int, default=16)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_order)

    p = sub.add_parser("series", help="partial-sum dichotomy: primes vs model spectrum")
    p.add_argument("--epsilon", type=float, default=0.25)
    p.add_argument("--n-max", type=int, default=10**6)
    p.add_argument("--growth-constant", type=float, default=math.pi**2)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_series)

    p = sub.add_parser("invert", help="search potentials targeting the squared primes")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default="search_result.json")
    p.add_argument("--csv", default=None)
    p.set_defaults(handler=_cmd_invert)

    return parser


def run(argv) -> int:
    """Parse argv (without the program name) and execute; returns the exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return 0 if exc.code in (None, 0) else 2
    try:
        return args.handler(args)
    except BadConfig as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SlprimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
