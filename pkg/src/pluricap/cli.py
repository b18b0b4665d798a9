"""``pluricap`` command-line entry point.

Exit codes: 0 success, 1 error, 2 inconclusive, 3 a verified inequality failed.
Every JSON document carries ``schema_version``. The thread count comes from
``--threads`` or the PLURICAP_THREADS environment variable.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from ._jsonio import SCHEMA_VERSION, dumps

EXIT_OK, EXIT_ERROR, EXIT_INCONCLUSIVE, EXIT_FAIL = 0, 1, 2, 3


class CliError(Exception):
    pass


def _load_json(path, what):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise CliError(f"{what}: file not found: {path}")
    except json.JSONDecodeError as e:
        raise CliError(f"{what}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}")


def _field(d, key, what):
    if not isinstance(d, dict) or key not in d:
        raise CliError(f"{what}: missing field /{key}")
    return d[key]


def _emit(obj, args):
    text = dumps(obj)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _meta(args, **extra):
    out = {"seed": getattr(args, "seed", None), "threads": os.environ.get("PLURICAP_THREADS")}
    out.update(extra)
    return out


def _parse_complex_list(text):
    vals = []
    for tok in text.split(","):
        tok = tok.strip().replace(" ", "")
        if tok == "i":
            tok = "1j"
        elif tok == "-i":
            tok = "-1j"
        vals.append(complex(tok.replace("i", "j")))
    return vals


def _parse_grid(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise CliError("grids are written start:stop:count")
    a, b, k = float(parts[0]), float(parts[1]), int(parts[2])
    if k < 1:
        raise CliError("grid count must be positive")
    return np.linspace(a, b, k)


def _solver_cfg(args):
    from .capacity import DEFAULT_SOLVER, SolverConfig
    if getattr(args, "solver_config", None):
        return SolverConfig.from_json(_load_json(args.solver_config, "solver config"))
    return DEFAULT_SOLVER


# ---------------------------------------------------------------------------
# subcommands


def cmd_capacity(args) -> int:
    from .capacity import chebyshev_T, fekete_capacity_1d, product_T
    from .geometry import plane_set_from_json, region_or_ball_from_json
    cfg = _solver_cfg(args)
    if args.product:
        spec = _load_json(args.product, "product")
        pairs = _field(spec, "factors", "product")
        try:
            factors = [(plane_set_from_json(_field(p, "K", "factor")), plane_set_from_json(_field(p, "B", "factor")))
                       for p in pairs]
        except (KeyError, TypeError, ValueError) as e:
            raise CliError(f"product: malformed factor: {e}")
        est = product_T(factors, cfg, args.dmax, args.seed)
    else:
        if not args.set:
            raise CliError("capacity needs --set (with --ball or --fekete) or --product")
        K = region_or_ball_from_json(_load_json(args.set, "set"))
        if args.fekete:
            est = fekete_capacity_1d(K, args.kmax, cfg, args.seed)
        else:
            if not args.ball:
                raise CliError("capacity needs --ball for the Chebyshev route")
            from .geometry import BallRegion
            B = region_or_ball_from_json(_load_json(args.ball, "ball"))
            if isinstance(B, BallRegion):
                B = B.ball
            est = chebyshev_T(K, B, args.dmax, cfg, args.seed)
    out = est.to_json()
    out["meta"] = _meta(args, solver=cfg.to_json(), dmax=args.dmax)
    _emit(out, args)
    if est.direction == "two_sided" and not est.hi_sound:
        return EXIT_INCONCLUSIVE
    if est.direction == "heuristic":
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_volume(args) -> int:
    from .geometry import BallRegion, region_or_ball_from_json, relative_volume_mc, volume_mc
    from .geometry import Ball
    K = region_or_ball_from_json(_load_json(args.set, "set"))
    if isinstance(K, Ball):
        K = BallRegion(K)
    n = int(float(args.samples))
    if args.ball:
        B = region_or_ball_from_json(_load_json(args.ball, "ball"))
        B = B.ball if isinstance(B, BallRegion) else B
        est = relative_volume_mc(K, B, n, args.seed, args.threads)
    else:
        est = volume_mc(K, n, args.seed, args.threads)
    out = est.to_json()
    out["meta"] = _meta(args, samples=n)
    _emit(out, args)
    return EXIT_OK


def _build_extremal(args):
    from .extremal import DiscV, IntervalV, LundinV, extremal_from_json
    if args.spec:
        return extremal_from_json(_load_json(args.spec, "extremal function"))
    if args.fn == "lundin":
        return LundinV(args.n, (0.0,) * args.n, args.radius)
    if args.fn == "disc":
        return DiscV(0j, args.radius)
    if args.fn == "interval":
        return IntervalV(-args.radius, args.radius)
    raise CliError("extremal needs --fn or --spec")


def cmd_extremal(args) -> int:
    from .geometry import Ball
    F = _build_extremal(args)
    out = {"kind": "extremal_value", "schema_version": SCHEMA_VERSION, "function": F.to_json()}
    if args.point:
        z = np.array(_parse_complex_list(args.point))
        if z.shape[0] != F.n:
            raise CliError(f"point has {z.shape[0]} coordinates, the function lives on C^{F.n}")
        out["point"] = [[w.real, w.imag] for w in z]
        out["value"] = float(F(z[None, :])[0])
        out["direction"] = "exact"
    if args.max_over_ball is not None:
        B = Ball.unit(F.n) if args.max_over_ball == "unit" else Ball.from_json(_load_json(args.max_over_ball, "ball"))
        ev = F.max_over(B, n_samples=args.samples, seed=args.seed)
        out["max"] = ev.to_json()
    if "value" not in out and "max" not in out:
        raise CliError("extremal needs --point or --max-over-ball")
    out["meta"] = _meta(args)
    _emit(out, args)
    return EXIT_OK


def cmd_lemniscate(args) -> int:
    from .geometry import Ball, BallRegion, region_or_ball_from_json
    from .integrability import LogAbs, lemniscate_decay, polynomial_lemniscate_decay
    from .polynomials import Polynomial
    if args.ball:
        B = region_or_ball_from_json(_load_json(args.ball, "ball"))
        B = B.ball if isinstance(B, BallRegion) else B
    else:
        B = None
    n = int(float(args.samples))
    if args.poly:
        P = Polynomial.from_json(_load_json(args.poly, "polynomial"))
        B = B or Ball.unit(P.n)
        eps = _parse_grid(args.eps_grid or "0.1:0.9:9")
        table = polynomial_lemniscate_decay(P, B, eps, n, args.seed)
        header = "eps"
    else:
        B = B or Ball.unit(1)
        s = _parse_grid(args.s_grid or "0.1:3:20")
        table = lemniscate_decay(LogAbs(B.space.n), B, s, n, args.seed)
        header = "s"
    text = table.to_csv()
    if header == "eps":
        text = "eps" + text[1:]
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.reports:
        with open(args.reports, "w") as fh:
            fh.write(dumps({"kind": "report_list", "schema_version": SCHEMA_VERSION,
                            "reports": [r.to_json() for r in table.reports]}) + "\n")
    return _status_code([r.status for r in table.reports])


def _status_code(statuses):
    if "fail" in statuses:
        return EXIT_FAIL
    if "inconclusive" in statuses:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_verify(args) -> int:
    from . import harness
    if args.config:
        cfg = harness.SuiteConfig.from_json(_load_json(args.config, "suite config"))
    elif args.all:
        cfg = harness.SuiteConfig(budget=args.budget, seed=args.seed, n_max=args.n, jobs=args.jobs)
    elif args.suite:
        if args.suite == "sharpness":
            rep = harness.sharpness_probe(n=max(args.n, 2))
            out = rep.to_json()
            out["meta"] = _meta(args)
            if args.out:
                os.makedirs(args.out, exist_ok=True)
                with open(os.path.join(args.out, "sharpness.json"), "w") as fh:
                    fh.write(dumps(out) + "\n")
            _emit(out, args)
            return EXIT_OK if rep.ok else EXIT_FAIL
        if args.suite not in harness.SUITES:
            raise CliError(f"unknown suite {args.suite!r}; choose from {', '.join(harness.SUITES)}, sharpness")
        cfg = harness.SuiteConfig(suites=(args.suite,), budget=args.budget, seed=args.seed, n_max=args.n,
                                  jobs=args.jobs)
    else:
        raise CliError("verify needs --suite, --all or --config")
    t0 = time.time()
    results = harness.run_all(cfg)
    elapsed = time.time() - t0
    outdir = args.out or "pluricap-reports"
    paths = harness.write_bundle(results, cfg, outdir)
    from .reports import audit
    flat = [r for rs in results.values() for r in rs]
    problems = audit(flat)
    cov = harness.coverage(results)
    summary = {"kind": "verify_summary", "schema_version": SCHEMA_VERSION, "config": cfg.to_json(),
               "files": paths, "reports": len(flat), "status": harness.overall_status(flat),
               "audit_problems": problems, "elapsed_seconds": round(elapsed, 3),
               "coverage": {k: v for k, v in cov.items() if k in
                            {i for s in cfg.suites for i in harness._selected(cfg, s)}}}
    _emit(summary, args)
    if problems:
        return EXIT_FAIL
    return _status_code([r.status for r in flat])


def cmd_report(args) -> int:
    """Re-read a bundle directory, audit it and print the roll-up CSV."""
    from . import harness
    from .reports import InequalityReport, audit
    results = {}
    if not os.path.isdir(args.bundle):
        raise CliError(f"bundle directory not found: {args.bundle}")
    for name in sorted(os.listdir(args.bundle)):
        if not name.endswith(".json"):
            continue
        d = _load_json(os.path.join(args.bundle, name), name)
        if d.get("kind") != "report_bundle":
            continue
        if d.get("schema_version") != SCHEMA_VERSION:
            raise CliError(f"{name}: unsupported /schema_version {d.get('schema_version')!r}")
        results[d["suite"]] = [InequalityReport.from_json(r) for r in d["reports"]]
    if not results:
        raise CliError("no report bundles found")
    flat = [r for rs in results.values() for r in rs]
    problems = audit(flat)
    text = harness.rollup_csv(results)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for p in problems:
        print(p, file=sys.stderr)
    if problems:
        return EXIT_FAIL
    return _status_code([r.status for r in flat])


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pluricap", description="Relative capacities, extremal functions and "
                                "volume inequalities for plurisubharmonic functions.")
    p.add_argument("--threads", type=int, default=None, help="worker threads (default: PLURICAP_THREADS or 1)")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
        sp.add_argument("--output", "-o", default=None, help="write to this file instead of stdout")

    sp = sub.add_parser("capacity", help="relative logarithmic capacity T_B(K)")
    common(sp)
    sp.add_argument("--set", help="RegionSpec JSON for K")
    sp.add_argument("--ball", help="Ball or polydisc JSON for B")
    sp.add_argument("--product", help="JSON {factors: [{K, B}, ...]} of plane factors")
    sp.add_argument("--fekete", action="store_true", help="logarithmic capacity of a plane set by Fekete points")
    sp.add_argument("--dmax", type=int, default=8)
    sp.add_argument("--kmax", type=int, default=64)
    sp.add_argument("--solver-config", help="SolverConfig JSON")
    sp.set_defaults(func=cmd_capacity)

    sp = sub.add_parser("volume", help="Monte-Carlo volume of a region")
    common(sp)
    sp.add_argument("--set", required=True)
    sp.add_argument("--ball", help="report the volume relative to this ball")
    sp.add_argument("--samples", default="1e5")
    sp.set_defaults(func=cmd_volume)

    sp = sub.add_parser("extremal", help="evaluate or maximise an extremal function")
    common(sp)
    sp.add_argument("--fn", choices=["lundin", "disc", "interval"])
    sp.add_argument("--spec", help="extremal function JSON")
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--radius", type=float, default=1.0)
    sp.add_argument("--point", help='comma-separated complex coordinates, e.g. "i,0"')
    sp.add_argument("--max-over-ball", help='"unit" or a Ball JSON')
    sp.add_argument("--samples", type=int, default=4096)
    sp.set_defaults(func=cmd_extremal)

    sp = sub.add_parser("lemniscate", help="sublevel decay tables as CSV")
    common(sp)
    sp.add_argument("--poly", help="Polynomial JSON")
    sp.add_argument("--ball", help="Ball JSON (default: unit ball)")
    sp.add_argument("--eps-grid", help="start:stop:count for polynomial lemniscates")
    sp.add_argument("--s-grid", help="start:stop:count for log|z|")
    sp.add_argument("--samples", default="2e5")
    sp.add_argument("--reports", help="also write the inequality reports as JSON")
    sp.set_defaults(func=cmd_lemniscate)

    sp = sub.add_parser("verify", help="run verification suites and write a report bundle")
    common(sp)
    sp.add_argument("--suite", help="polya, lemniscate, capacity, integrability or sharpness")
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--config", help="SuiteConfig JSON")
    sp.add_argument("--budget", default="small", choices=["small", "medium"])
    sp.add_argument("--n", type=int, default=2, help="largest dimension n")
    sp.add_argument("--jobs", type=int, default=1, help="parallel suite jobs")
    sp.add_argument("--out", help="bundle directory (default ./pluricap-reports)")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("report", help="audit a report bundle and print the roll-up CSV")
    sp.add_argument("bundle")
    sp.add_argument("--output", "-o", default=None)
    sp.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is not None:
        if args.threads < 1:
            print("error: --threads must be positive", file=sys.stderr)
            return EXIT_ERROR
        os.environ["PLURICAP_THREADS"] = str(args.threads)
    try:
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except KeyError as e:
        print(f"error: missing field /{e.args[0] if e.args else ''}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, TypeError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
