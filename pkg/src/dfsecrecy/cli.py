"""Command-line front-end: ``eval``, ``mc``, ``sweep`` and ``validate``.

Exit codes: 0 success, 1 a ``validate`` check failed, 2 usage or parameter error.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from typing import Optional, Sequence

from . import analytic
from .core import (
    THEOREM_CASES,
    CaseId,
    RateThreshold,
    ScenarioScaling,
    SnrTriple,
    ValidationError,
    db_to_linear,
)
from .montecarlo import estimate_sop_adaptive, estimate_sop_paired
from .sweep import FIXED_EVE, SCALED_EVE, SweepSpec, fit_diversity_order, run_sweep, write_table
from .validation import run_validation

log = logging.getLogger("dfsecrecy")

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


def _add_snr_flags(p: argparse.ArgumentParser, need_point: bool = True) -> None:
    g = p.add_argument_group("SNRs (dB flags and linear flags are alternatives)")
    if need_point:
        g.add_argument("--gamma-d-db", type=float, help="average R-D SNR in dB")
        g.add_argument("--gamma-d", type=float, help="average R-D SNR, linear")
        g.add_argument("--gamma-r-db", type=float, help="average S-R SNR in dB")
        g.add_argument("--gamma-r", type=float, help="average S-R SNR, linear")
    g.add_argument("--gamma-e-db", type=float, help="average eavesdropper SNR in dB")
    g.add_argument("--gamma-e", type=float,
                   help="average eavesdropper SNR, linear (0 = no eavesdropper)")
    g.add_argument("--alpha", type=float,
                   help="gamma_r / gamma_d ratio, linear (used when gamma_r is not given)")
    g.add_argument("--beta", type=float,
                   help="gamma_r / gamma_e ratio, linear (used when gamma_e is not given)")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rate", type=float, default=1.0,
                   help="target secrecy rate R in bits per channel use (default 1)")
    p.add_argument("-v", "--verbose", action="count", default=0, help="more logging")


def _case_list(value: str, allow_conv: bool) -> list[CaseId]:
    if value == "all":
        return list(THEOREM_CASES) + ([CaseId.CASE1_CONV] if allow_conv else [])
    case = CaseId.parse(value)
    if case is CaseId.CASE1_CONV and not allow_conv:
        raise ValidationError("case 1conv has no closed form; use the 'mc' subcommand")
    return [case]


def _pick(args, name: str) -> Optional[float]:
    """Linear value of an SNR given by either ``--name-db`` or ``--name``."""
    db = getattr(args, f"{name}_db", None)
    lin = getattr(args, name, None)
    if db is not None and lin is not None:
        raise ValidationError(f"give only one of --{name.replace('_', '-')}-db / "
                              f"--{name.replace('_', '-')}")
    return db_to_linear(db) if db is not None else lin


def _point(args) -> tuple[SnrTriple, float, Optional[float]]:
    """Resolve the operating point and the (alpha, beta) ratios it implies."""
    gd = _pick(args, "gamma_d")
    if gd is None:
        raise ValidationError("--gamma-d-db (or --gamma-d) is required")
    gr = _pick(args, "gamma_r")
    if (gr is None) == (args.alpha is None):
        raise ValidationError("give exactly one of --gamma-r-db/--gamma-r or --alpha")
    if gr is None:
        gr = ScenarioScaling(args.alpha).alpha * gd
    ge = _pick(args, "gamma_e")
    if (ge is None) == (args.beta is None):
        raise ValidationError("give exactly one of --gamma-e-db/--gamma-e or --beta")
    if ge is None:
        ge = gr / ScenarioScaling(1.0, args.beta).beta
    snrs = SnrTriple(gr, gd, ge)
    alpha = snrs.gamma_r / snrs.gamma_d
    beta = snrs.gamma_r / snrs.gamma_e if snrs.gamma_e > 0 else None
    return snrs, alpha, beta


def _fmt_db(x: float) -> str:
    return "-inf" if x <= 0 else f"{10 * math.log10(x):.3f}"


def cmd_eval(args) -> int:
    cases = _case_list(args.case, allow_conv=False)
    rate = RateThreshold(args.rate).r
    snrs, alpha, beta = _point(args)
    print(f"gamma_r = {_fmt_db(snrs.gamma_r)} dB, gamma_d = {_fmt_db(snrs.gamma_d)} dB, "
          f"gamma_e = {_fmt_db(snrs.gamma_e)} dB, R = {rate:g} bit/use "
          f"(alpha = {alpha:.6g}" + (f", beta = {beta:.6g})" if beta else ")"))
    header = f"{'case':>4}  {'sop':>12}  {'M':>10}  {'M/gd':>12}"
    if beta is not None:
        header += f"  {'P_lim':>10}  {'M_hat':>10}  {'P_lim+M_hat/gd':>14}"
    print(header)
    for case in cases:
        p = analytic.sop_closed_form(case, snrs, rate)
        fixed = analytic.sop_asymptotic(case, snrs.gamma_d, ScenarioScaling(alpha),
                                        snrs.gamma_e, rate)
        line = f"{case.value:>4}  {p:12.5f}  {fixed.slope:10.5g}  {fixed.approx:12.5g}"
        if beta is not None:
            scaled = analytic.sop_asymptotic(case, snrs.gamma_d, ScenarioScaling(alpha, beta),
                                             None, rate)
            line += f"  {scaled.limit:10.5f}  {scaled.slope:10.5g}  {scaled.approx:14.5g}"
        print(line)
    return EXIT_OK


def cmd_mc(args) -> int:
    cases = _case_list(args.case, allow_conv=True)
    rate = RateThreshold(args.rate).r
    snrs, _, _ = _point(args)
    if args.target_rel is not None:
        ests = {c: estimate_sop_adaptive(c, snrs, rate, args.target_rel, args.samples,
                                         args.seed, args.workers) for c in cases}
    else:
        ests = estimate_sop_paired(cases, snrs, rate, args.samples, args.seed, args.workers)
    print(f"{'case':>5}  {'sop_mc':>12}  {'ci_low':>12}  {'ci_high':>12}  "
          f"{'n':>10}  {'exact':>12}")
    for c, est in ests.items():
        exact = (f"{analytic.sop_closed_form(c, snrs, rate):12.5g}"
                 if c in THEOREM_CASES else f"{'-':>12}")
        flag = "" if est.target_met in (None, True) else "  target not met"
        print(f"{c.value:>5}  {est.value:12.5g}  {est.ci_low:12.5g}  {est.ci_high:12.5g}  "
              f"{est.n:>10}  {exact}{flag}")
    return EXIT_OK


def _sweep_spec(args) -> SweepSpec:
    ge = _pick(args, "gamma_e")
    if args.scenario == FIXED_EVE and ge is None:
        ge = db_to_linear(1.0)
    if args.scenario == SCALED_EVE and args.beta is None:
        args.beta = 1.0
    return SweepSpec(
        scenario=args.scenario,
        cases=tuple(_case_list(args.case, allow_conv=False)),
        gamma_d_db_start=args.from_db,
        gamma_d_db_stop=args.to_db,
        gamma_d_db_step=args.step_db,
        alpha=args.alpha if args.alpha is not None else 0.5,
        beta=args.beta if args.scenario == SCALED_EVE else None,
        gamma_e_fixed=ge if args.scenario == FIXED_EVE else None,
        rate=args.rate,
        mc_samples=args.samples,
        seed=args.seed,
        mc_min_sop=args.mc_min_sop,
        workers=args.workers,
    )


def cmd_sweep(args) -> int:
    spec = _sweep_spec(args)
    rows = run_sweep(spec)
    if args.out:
        write_table(rows, args.out, args.format)
        with open(f"{args.out}.meta.json", "w") as fh:
            json.dump(spec.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
        log.info("wrote %d rows to %s", len(rows), args.out)
    else:
        write_table(rows, sys.stdout, args.format)
    if args.verbose and spec.scenario == FIXED_EVE:
        for c in spec.cases:
            mine = [r for r in rows if r.case is c]
            try:
                sdo = fit_diversity_order(mine, (30.0, 50.0))
            except ValidationError as exc:
                log.info("case %s: no diversity fit (%s)", c, exc)
            else:
                print(f"case {c}: diversity order over 30-50 dB = {sdo:.4f}", file=sys.stderr)
    return EXIT_OK


def cmd_validate(args) -> int:
    report = run_validation(mc_samples=args.samples, seed=args.seed)
    print(report.render())
    return EXIT_OK if report.ok else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dfsecrecy",
        description="Secrecy outage analysis of decode-and-forward relay wiretap systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="closed-form SOP, limits and slope constants at one point")
    p.add_argument("--case", default="all", choices=["1", "2", "3", "all"])
    _add_snr_flags(p)
    _add_common(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("mc", help="Monte Carlo SOP estimate at one point")
    p.add_argument("--case", default="all", choices=["1", "2", "3", "1conv", "all"])
    _add_snr_flags(p)
    _add_common(p)
    p.add_argument("--samples", type=int, default=1_000_000,
                   help="channel draws (maximum draws with --target-rel)")
    p.add_argument("--target-rel", type=float,
                   help="stop once 95%% CI half-width / estimate <= this (0..1)")
    p.add_argument("--seed", type=int, default=0, help="64-bit RNG seed")
    p.add_argument("--workers", type=int, default=1, help="worker threads")
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("sweep", help="SOP versus gamma_d over a dB grid")
    p.add_argument("--case", default="all", choices=["1", "2", "3", "all"])
    p.add_argument("--scenario", default=FIXED_EVE, choices=[FIXED_EVE, SCALED_EVE])
    _add_snr_flags(p, need_point=False)
    _add_common(p)
    p.add_argument("--from-db", type=float, default=0.0, help="first gamma_d in dB (default 0)")
    p.add_argument("--to-db", type=float, default=50.0, help="last gamma_d in dB (default 50)")
    p.add_argument("--step-db", type=float, default=2.0, help="gamma_d step in dB (default 2)")
    p.add_argument("--samples", type=int, default=0,
                   help="Monte Carlo draws per grid point (0 disables simulation)")
    p.add_argument("--mc-min-sop", type=float, default=1e-6,
                   help="skip simulation where the exact SOP is below this probability")
    p.add_argument("--seed", type=int, default=0, help="64-bit RNG seed")
    p.add_argument("--workers", type=int, default=1, help="worker threads")
    p.add_argument("--out", help="output file (default stdout); metadata goes to OUT.meta.json")
    p.add_argument("--format", default="csv", choices=["csv", "jsonl"])
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("validate", help="run the property suite; exit 1 on any failure")
    p.add_argument("--samples", type=int, default=1_000_000,
                   help="Monte Carlo draws per grid cell (0 skips simulation checks)")
    p.add_argument("--seed", type=int, default=20240601, help="64-bit RNG seed")
    p.add_argument("-v", "--verbose", action="count", default=0, help="more logging")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
