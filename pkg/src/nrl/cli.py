"""Command-line entry point.

Exit codes: 0 clean, 1 any FAILS, 2 only INDETERMINATE, 3 usage error,
4 configuration error, 5 runtime error (ceilings, missing checkpoints).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

from . import audit
from .arith import ArithmeticRangeError
from .checks import Precision, PrimorialScan, RobinScan, ScanRangeError, ScanSummary, hr_scan
from .primes import PrimeRangeError
from .config import ConfigError, GridSpec, load_config
from .constants import MERTENS, estimate_mertens, get_constant
from .runner import ScanRunner, summary_doc
from .store import CheckpointNotFoundError, CheckpointVersionError, write_json

EXIT_OK, EXIT_FAILS, EXIT_INDETERMINATE = 0, 1, 2
EXIT_USAGE, EXIT_CONFIG, EXIT_RUNTIME = 3, 4, 5
ROBIN_LAST_EXCEPTION = 5040
CLM_CLAIM_FROM = 5  # the CLM claim is stated for k > 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    # SUPPRESS keeps a subcommand's unset flags from clobbering global ones
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    g = common.add_argument_group("global options")
    g.add_argument("--config", help="key = value config file")
    g.add_argument("--out", help="output directory (fallback: $NRL_OUT_DIR)")
    g.add_argument("--workers", type=int, help="worker processes (0: one per CPU)")
    g.add_argument("--precision", choices=["fast64", "guarded", "high"])
    g.add_argument("--checkpoint-every", type=int, help="subjects between checkpoints")
    g.add_argument("--format", choices=["csv", "jsonl"], help="row file format")
    g.add_argument("--no-timestamps", action="store_true",
                   help="omit wall times and timestamps so output is byte-reproducible")

    p = _Parser(prog="nrl", description="Nicolas, Robin and CLM inequality scans "
                "and an audit of a reciprocal-prime recurrence.", parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, help):
        return sub.add_parser(name, help=help, parents=[common])

    c = cmd("nicolas", "scan N_k/phi(N_k) > e^gamma log log N_k over k_lo..k_hi")
    c.add_argument("k_lo", type=int)
    c.add_argument("k_hi", type=int)
    c.add_argument("--stride", default="all", help="'all' or 'geometric:RATIO'")
    c.add_argument("--scan-id")

    c = cmd("clm", "scan prod (p+1)/p < e^gamma log log N_k^2 over k_lo..k_hi")
    c.add_argument("k_lo", type=int)
    c.add_argument("k_hi", type=int)
    c.add_argument("--reading", choices=["clm", "clm_alt", "both"], default="both")
    c.add_argument("--stride", default="all")
    c.add_argument("--scan-id")

    c = cmd("robin", "scan sigma(n)/n < e^gamma log log n over lo <= n < hi")
    c.add_argument("lo", type=int)
    c.add_argument("hi", type=int)
    c.add_argument("--expect-small-exceptions", action="store_true",
                   help=f"FAILS at n <= {ROBIN_LAST_EXCEPTION} do not set the exit code")
    c.add_argument("--rows", choices=["all", "failures", "none"], default=None)
    c.add_argument("--scan-id")

    c = cmd("hr-scan", "Robin verdicts on Hardy-Ramanujan numbers")
    c.add_argument("--max-m", type=int, required=True)
    c.add_argument("--max-log-n", type=float, required=True)
    c.add_argument("--expect-small-exceptions", action="store_true")

    c = cmd("audit", "assemble the recurrence and confront it with scan data")
    c.add_argument("--track", choices=list(audit.TRACKS), default="as_claimed")
    c.add_argument("--kmax", type=int, default=10**4)

    c = cmd("fit", "fit C and D in the Mertens remainder")
    c.add_argument("--grid", help="lo:hi[:geometric[:per_decade]]")

    c = cmd("probe", "empirical eta_s in the theta(p_m) bound")
    c.add_argument("--s", type=int, choices=[1, 2, 3], default=1)
    c.add_argument("--grid", help="lo:hi[:geometric[:per_decade]] over m")
    c.add_argument("--eta", type=float)

    cmd("constants", "print gamma, e^gamma and M with radii")

    c = cmd("resume", "continue an interrupted scan from its checkpoint")
    c.add_argument("scan_id")
    return p


def _config(args):
    opt = vars(args)
    return load_config(
        opt.get("config"), out_dir=opt.get("out"), workers=opt.get("workers"),
        precision=opt.get("precision"), checkpoint_every=opt.get("checkpoint_every"),
        format=opt.get("format"), rows=opt.get("rows"),
        timestamps=False if opt.get("no_timestamps") else None)


def _scan_exit(s: ScanSummary, ignore_fails_upto: int = 0) -> int:
    fails = [v for v in s.failures if v.subject > ignore_fails_upto]
    if fails:
        return EXIT_FAILS
    if s.indeterminate:
        return EXIT_INDETERMINATE
    return EXIT_OK


def _report(s: ScanSummary, scan_id: str) -> None:
    print(f"{scan_id}: total={s.total} holds={s.holds} fails={s.fails} "
          f"indeterminate={s.indeterminate} undefined={s.undefined}")
    if s.failures:
        shown = ", ".join(str(v.subject) for v in s.failures[:20])
        more = f" (+{len(s.failures) - 20} more)" if len(s.failures) > 20 else ""
        print(f"  failures: {shown}{more}")


def _runner(cfg, scan, scan_id):
    return ScanRunner(scan, scan_id, Path(cfg.out_dir), cfg.format, cfg.rows,
                      cfg.checkpoint_every, cfg.checkpoint_seconds, cfg.timestamps)


def cmd_nicolas(args, cfg) -> int:
    if not 1 <= args.k_lo <= args.k_hi:
        raise UsageError(f"need 1 <= k_lo <= k_hi, got {args.k_lo} {args.k_hi}")
    sid = args.scan_id or f"nicolas-{args.k_lo}-{args.k_hi}"
    scan = PrimorialScan("nicolas", args.k_lo, args.k_hi, args.stride, cfg.precision,
                         cfg.prime_ceiling, chunk_span=cfg.segment_size)
    s = _runner(cfg, scan, sid).run()
    _report(s, sid)
    return _scan_exit(s)


def cmd_clm(args, cfg) -> int:
    if not 1 <= args.k_lo <= args.k_hi:
        raise UsageError(f"need 1 <= k_lo <= k_hi, got {args.k_lo} {args.k_hi}")
    readings = ["clm", "clm_alt"] if args.reading == "both" else [args.reading]
    code = EXIT_OK
    for i, reading in enumerate(readings):
        if args.scan_id:
            sid = args.scan_id + ("" if reading == "clm" else "_alt")
        else:
            sid = f"{reading}-{args.k_lo}-{args.k_hi}"
        scan = PrimorialScan(reading, args.k_lo, args.k_hi, args.stride, cfg.precision,
                             cfg.prime_ceiling, chunk_span=cfg.segment_size)
        s = _runner(cfg, scan, sid).run()
        _report(s, sid)
        informational = sum(v.subject < CLM_CLAIM_FROM for v in s.failures)
        if informational:
            print(f"  {informational} failure(s) at k <= 4 are outside the claim")
        if i == 0:  # the first reading listed sets the exit code
            code = _scan_exit(s, CLM_CLAIM_FROM - 1)
    return code


def cmd_robin(args, cfg) -> int:
    if not 1 <= args.lo < args.hi:
        raise UsageError(f"empty range [{args.lo}, {args.hi})")
    sid = args.scan_id or f"robin-{args.lo}-{args.hi}"
    scan = RobinScan(args.lo, args.hi, cfg.precision, workers=cfg.worker_count,
                     ceiling=cfg.range_ceiling)
    s = _runner(cfg, scan, sid).run()
    _report(s, sid)
    print(f"  failures by omega: {json.dumps(s.extras.get('by_omega', {}), sort_keys=True)}")
    return _scan_exit(s, ROBIN_LAST_EXCEPTION if args.expect_small_exceptions else 0)


def cmd_hr_scan(args, cfg) -> int:
    if args.max_m < 1 or args.max_log_n <= 0:
        raise UsageError("need --max-m >= 1 and --max-log-n > 0")
    s = hr_scan(args.max_m, args.max_log_n, Precision(cfg.precision))
    sid = f"hr-{args.max_m}-{args.max_log_n:g}"
    params = {"kind": "hr", "max_m": args.max_m, "max_log_n": args.max_log_n,
              "precision": cfg.precision}
    write_json(Path(cfg.out_dir) / f"{sid}.summary.json",
               summary_doc(sid, s, params, cfg.timestamps))
    _report(s, sid)
    return _scan_exit(s, ROBIN_LAST_EXCEPTION if args.expect_small_exceptions else 0)


def cmd_audit(args, cfg) -> int:
    if args.kmax < 1:
        raise UsageError("--kmax must be >= 1")
    g = GridSpec.parse(cfg.fit_grid, "fit_grid")
    tops = sorted({t for t in (10**4, 10**5, 10**6) if g.lo * 10 <= t <= g.hi} | {g.hi})
    doc = audit.audit_report(args.track, args.kmax, tuple(tops))
    path = write_json(Path(cfg.out_dir) / f"audit-{args.track}.json", doc)
    rec = doc["recurrence"]
    print(f"track {args.track}: {rec['leading_consistency']}")
    for c in rec["coefficients"]:
        print(f"  {c['order']}: recomputed {c['recomputed']}  claimed {c['claimed']} "
              f"{c['claimed_relation']}  -> {c['match']}")
    print(f"  C = {rec['C']}, D = {rec['D']}")
    print(f"  {doc['confrontation']['data_support']}")
    print(f"report: {path}")
    return EXIT_OK


def _write_csv(path: Path, header, rows) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    return path


def cmd_fit(args, cfg) -> int:
    g = GridSpec.parse(args.grid or cfg.fit_grid, "grid")
    pts = g.points()
    # nested fits ending at each power of ten past lo, and at hi
    tops = sorted({t for t in pts if t >= 10 * g.lo and math.log10(t).is_integer()}
                  | {g.hi})
    rows = []
    for top in tops:
        sub = [m for m in pts if m <= top]
        if len(sub) < 6:
            continue
        c, d = audit.fit_cd(sub)
        rows.append([g.lo, top, len(sub), repr(c.fitted), repr(c.stderr),
                     repr(d.fitted), repr(d.stderr), repr(c.residual_norm)])
    if not rows:
        raise UsageError(f"grid {g} has fewer than 6 points")
    out = Path(cfg.out_dir)
    _write_csv(out / "fit.csv", ["lo", "top", "points", "C", "C_stderr", "D", "D_stderr",
                                 "residual_norm"], rows)
    logp, r = audit.mertens_remainder(pts)
    c, d = audit.fit_cd(pts)
    _write_csv(out / "fit_points.csv", ["m", "log_p_m", "remainder", "fitted"],
               [[m, repr(float(lp)), repr(float(rv)),
                 repr(c.fitted / float(lp) + d.fitted / float(lp) ** 2)]
                for m, lp, rv in zip(pts, logp, r)])
    est = estimate_mertens(g.hi)
    print(f"C = {c.fitted:.6g} ± {c.stderr:.2g}, D = {d.fitted:.6g} ± {d.stderr:.2g} "
          f"on {len(pts)} points; Mertens estimate {est.value:.10f} "
          f"(pinned {MERTENS.value:.10f})")
    return EXIT_OK


def cmd_probe(args, cfg) -> int:
    g = GridSpec.parse(args.grid or cfg.probe_grid, "grid")
    eta = args.eta if args.eta is not None else cfg.eta[args.s]
    res = audit.theta_bound_probe(args.s, g.points(), eta)
    out = Path(cfg.out_dir)
    _write_csv(out / f"probe-s{args.s}.csv",
               ["m", "p_m", "theta", "theta_over_p_minus_1", "scaled", "abs_scaled"],
               [[r["m"], r["p_m"], repr(r["theta"]), repr(r["theta_over_p_minus_1"]),
                 repr(r["scaled"]), repr(r["abs_scaled"])] for r in res["rows"]])
    write_json(out / f"probe-s{args.s}.json", {k: v for k, v in res.items() if k != "rows"})
    print(f"s={args.s}: empirical eta (two-sided) = {res['empirical_eta']:.6g}, "
          f"one-sided = {res['empirical_eta_one_sided']:.6g}, configured = {eta} "
          f"({res['eta_provenance']})")
    return EXIT_OK


def cmd_constants(args, cfg) -> int:
    for name in ("gamma", "exp_gamma", "mertens"):
        print(get_constant(name))
    return EXIT_OK


def cmd_resume(args, cfg) -> int:
    out = Path(cfg.out_dir)
    runner = ScanRunner.resume(out, args.scan_id, workers=cfg.worker_count,
                               checkpoint_every=cfg.checkpoint_every,
                               checkpoint_seconds=cfg.checkpoint_seconds,
                               timestamps=cfg.timestamps)
    s = runner.run()
    _report(s, args.scan_id)
    kind = runner.scan.params["kind"]
    return _scan_exit(s, CLM_CLAIM_FROM - 1 if kind.startswith("clm") else 0)


COMMANDS = {"nicolas": cmd_nicolas, "clm": cmd_clm, "robin": cmd_robin,
            "hr-scan": cmd_hr_scan, "audit": cmd_audit, "fit": cmd_fit,
            "probe": cmd_probe, "constants": cmd_constants, "resume": cmd_resume}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
    except ConfigError as e:
        print(f"nrl: {e}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return COMMANDS[args.command](args, cfg)
    except (UsageError, ScanRangeError) as e:
        print(f"nrl: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as e:
        print(f"nrl: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (PrimeRangeError, ArithmeticRangeError, CheckpointNotFoundError,
            CheckpointVersionError, OSError) as e:
        print(f"nrl: error: {e}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
