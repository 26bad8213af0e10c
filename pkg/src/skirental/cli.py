"""Command-line entry point: generation, simulation, sweeps, bound calculators.

Subcommands: gen, run, sweep-cc, sweep-theta, bounds, oracle-check.
Exit codes: 0 success, 1 validation error, 2 I/O error. Every subcommand
echoes its resolved configuration so a run can be reproduced from its output.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .algorithms import (
    ThresholdSet,
    dtsr_simulate,
    ftp_simulate,
    ladtsr_simulate,
    rdtsr_simulate,
)
from .analysis import (
    InstanceTooLargeError,
    all_small_sequences,
    brute_force_opt,
    ladtsr_cr_bound,
    opt_offline,
    rdtsr_cr_bound,
)
from .core import (
    ConfigError,
    PriceConfig,
    SequenceError,
    evaluate_cost,
    total_demand,
)
from .datagen import (
    GenConfig,
    PredictorConfig,
    TraceError,
    gen_prediction,
    gen_sequence,
    load_prediction,
    load_trace,
    subseed,
    write_prediction,
    write_trace,
)
from .harness import (
    EnsembleSpec,
    run_cc_sweep,
    run_theta_bias_sweep,
    write_results_csv,
    write_results_json,
)

DEFAULT_SINGLE_PRICE = 9
DEFAULT_COMBO_PRICE = 30
DEFAULT_NUM_ITEMS = 6


class _UsageError(ValueError):
    """Bad flags or flag combinations."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; the contract reserves 2 for
    # I/O errors, so surface parse failures as validation errors instead.
    def error(self, message):
        raise _UsageError(message)


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise _UsageError(
            f"expected a rational like '1/4' or '0.25', got {text!r}"
        ) from None


def _parse_int_list(text: str) -> tuple[int, ...]:
    """Parse '15:40', '15:40:5', or '15,20,25' into integers."""
    try:
        if ":" in text:
            parts = [int(p) for p in text.split(":")]
            if len(parts) == 2:
                lo, hi, step = parts[0], parts[1], 1
            elif len(parts) == 3:
                lo, hi, step = parts
            else:
                raise ValueError
            if step < 1 or hi < lo:
                raise ValueError
            return tuple(range(lo, hi + 1, step))
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise _UsageError(
            f"expected 'lo:hi', 'lo:hi:step', or a comma list, got {text!r}"
        ) from None


def _fraction_text(value: Fraction) -> str:
    return f"{value} ≈ {float(value):.6f}"


def _echo(command: str, config: dict) -> None:
    print(f"# config: {json.dumps({'command': command, **config}, sort_keys=True)}")


def _add_price_flags(parser, k_default=DEFAULT_NUM_ITEMS):
    parser.add_argument(
        "--cs", type=int, default=DEFAULT_SINGLE_PRICE,
        help=f"single purchase price C_s, currency units (default {DEFAULT_SINGLE_PRICE})",
    )
    parser.add_argument(
        "--k", type=int, default=k_default,
        help=f"number of items K (default {k_default})",
    )


def _cmd_gen(args) -> int:
    prices = PriceConfig(args.k, args.cs, args.cc)
    cfg = GenConfig(
        kind=args.kind,
        num_items=args.k,
        horizon_max=args.horizon_max,
        multi_unit=args.multi_unit,
        amount_max=args.amount_max,
        seed=args.seed,
    )
    seq = gen_sequence(cfg, prices)
    write_trace(seq, args.out)
    echo = {
        "kind": args.kind, "k": args.k, "cs": args.cs, "cc": args.cc,
        "horizon_max": args.horizon_max, "multi_unit": args.multi_unit,
        "amount_max": args.amount_max, "seed": args.seed, "out": args.out,
    }
    if args.pred_out:
        z = total_demand(seq, prices)
        pred = gen_prediction(
            z,
            PredictorConfig(bias=args.bias, noise_halfwidth=args.noise,
                            seed=subseed(args.seed, 0, stream=1)),
        )
        write_prediction(pred, args.pred_out)
        echo.update(pred_out=args.pred_out, bias=args.bias, noise=args.noise)
    _echo("gen", echo)
    print(f"wrote {seq.horizon} slots to {args.out}")
    return 0


def _cmd_run(args) -> int:
    prices = PriceConfig(args.k, args.cs, args.cc)
    seq = load_trace(args.trace, prices)
    echo = {
        "trace": args.trace, "algo": args.algo,
        "cs": args.cs, "cc": args.cc, "k": args.k,
    }
    if args.algo in ("rdtsr", "dtsr"):
        lam_s = args.lambda_s if args.lambda_s is not None else args.cs
        lam_c = args.lambda_c if args.lambda_c is not None else args.cc
        thresholds = ThresholdSet.shared(lam_s, lam_c, args.k)
        simulate = rdtsr_simulate if args.algo == "rdtsr" else dtsr_simulate
        record = simulate(seq, prices, thresholds)
        echo.update(lambda_s=lam_s, lambda_c=lam_c)
    else:
        if not args.pred:
            raise _UsageError(f"--pred is required for --algo {args.algo}")
        pred = load_prediction(args.pred, prices)
        echo.update(pred=args.pred)
        if args.algo == "ftp":
            record = ftp_simulate(seq, prices, pred)
        else:
            if args.theta is None:
                raise _UsageError("--theta is required for --algo ladtsr")
            record = ladtsr_simulate(seq, prices, pred, args.theta)
            echo.update(theta=str(args.theta))
    _echo("run", echo)
    cost = evaluate_cost(seq, record, prices)
    opt = opt_offline(total_demand(seq, prices), prices)
    print(
        f"rent={cost.rent_cost} single={cost.single_cost} "
        f"combo={cost.combo_cost} total={cost.total}"
    )
    if opt > 0:
        print(f"opt={opt} ratio={_fraction_text(Fraction(cost.total, opt))}")
    else:
        print(f"opt={opt} ratio=undefined (no demand)")
    return 0


def _cmd_sweep_cc(args) -> int:
    cc_values = _parse_int_list(args.cc)
    ensemble = EnsembleSpec(
        count=args.count, num_items=args.k, horizon_max=args.horizon_max,
        multi_unit=args.multi_unit, amount_max=args.amount_max,
        seed=args.seed, mix=args.mix,
    )
    algos = tuple(args.algos.split(","))
    results = run_cc_sweep(
        args.cs, args.k, cc_values, ensemble, algos=algos, jobs=args.jobs
    )
    write_results_csv(results, args.out)
    meta = {
        "command": "sweep-cc", "cs": args.cs, "k": args.k, "cc": list(cc_values),
        "count": args.count, "seed": args.seed, "mix": args.mix,
        "multi_unit": args.multi_unit, "amount_max": args.amount_max,
        "horizon_max": args.horizon_max, "algos": list(algos),
        "jobs": args.jobs, "version": _version(),
    }
    if args.json:
        write_results_json(results, args.json, meta)
    _echo("sweep-cc", {k: v for k, v in meta.items() if k != "command"})
    print(f"wrote {len(results)} axis points to {args.out}")
    return 0


def _cmd_sweep_theta(args) -> int:
    prices = PriceConfig(args.k, args.cs, args.cc)
    thetas = tuple(_parse_fraction(t) for t in args.thetas.split(","))
    biases = _parse_int_list(args.biases)
    ensemble = EnsembleSpec(
        count=args.count, num_items=args.k, horizon_max=args.horizon_max,
        multi_unit=args.multi_unit, amount_max=args.amount_max,
        seed=args.seed, mix=args.mix,
    )
    results = run_theta_bias_sweep(
        prices, thetas, biases, ensemble, noise=args.noise, jobs=args.jobs
    )
    write_results_csv(results, args.out)
    meta = {
        "command": "sweep-theta", "cs": args.cs, "cc": args.cc, "k": args.k,
        "thetas": [str(t) for t in thetas], "biases": list(biases),
        "noise": args.noise, "count": args.count, "seed": args.seed,
        "mix": args.mix, "multi_unit": args.multi_unit,
        "amount_max": args.amount_max, "horizon_max": args.horizon_max,
        "jobs": args.jobs, "version": _version(),
    }
    if args.json:
        write_results_json(results, args.json, meta)
    _echo("sweep-theta", {k: v for k, v in meta.items() if k != "command"})
    print(f"wrote {len(results)} axis points to {args.out}")
    return 0


def _cmd_bounds(args) -> int:
    prices = PriceConfig(args.k, args.cs, args.cc)
    if args.theta is None:
        _echo("bounds", {"cs": args.cs, "cc": args.cc, "k": args.k})
        print(_fraction_text(rdtsr_cr_bound(prices)))
        return 0
    if args.opt is None:
        raise _UsageError("--opt is required together with --theta")
    _echo("bounds", {
        "cs": args.cs, "cc": args.cc, "k": args.k,
        "theta": str(args.theta), "eta": args.eta, "opt": args.opt,
    })
    print(_fraction_text(ladtsr_cr_bound(args.theta, args.eta, args.opt)))
    return 0


def _cmd_oracle_check(args) -> int:
    import numpy as np

    failures = 0
    checks = 0
    prices = PriceConfig(2, 3, 5)
    for seq in all_small_sequences(2, args.exhaustive_horizon, 3):
        checks += 1
        if opt_offline(total_demand(seq, prices), prices) != brute_force_opt(seq, prices):
            failures += 1
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(args.seed)))
    for _ in range(args.random):
        k = int(rng.integers(3, 4, endpoint=True))
        c_s = int(rng.integers(2, 8, endpoint=True))
        c_c = int(rng.integers(c_s + 1, k * c_s - 1, endpoint=True))
        prices = PriceConfig(k, c_s, c_c)
        t_end = int(rng.integers(1, 8, endpoint=True))
        pairs = []
        for _ in range(t_end):
            item = int(rng.integers(0, k, endpoint=True))
            amount = int(rng.integers(1, 6)) if item else 0
            pairs.append((item, amount))
        seq = _sequence_from_pairs(pairs)
        checks += 1
        if opt_offline(total_demand(seq, prices), prices) != brute_force_opt(seq, prices):
            failures += 1
    _echo("oracle-check", {
        "exhaustive_horizon": args.exhaustive_horizon,
        "random": args.random, "seed": args.seed,
    })
    print(f"oracle-check: {checks - failures} passed, {failures} failed")
    return 1 if failures else 0


def _sequence_from_pairs(pairs):
    from .core import DemandSequence

    return DemandSequence.from_pairs(pairs)


def _version() -> str:
    from importlib.metadata import PackageNotFoundError, version

    try:
        return version("skirental")
    except PackageNotFoundError:
        return "unknown"


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="skirental",
        description=(
            "Two-level rent-or-buy laboratory: generate demand traces, "
            "simulate payment policies, sweep experiment grids, and "
            "evaluate worst-case ratio bounds."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a demand trace CSV")
    _add_price_flags(p)
    p.add_argument("--cc", type=int, default=DEFAULT_COMBO_PRICE,
                   help=f"combo purchase price C_c, currency units (default {DEFAULT_COMBO_PRICE})")
    p.add_argument("--kind", choices=("uniform", "long_tailed"),
                   default="uniform", help="item distribution (default uniform)")
    p.add_argument("--horizon-max", type=int, default=60,
                   help="horizon drawn uniformly from [1, this] slots (default 60)")
    p.add_argument("--multi-unit", action="store_true",
                   help="draw amounts uniformly from [1, amount-max] instead of 1")
    p.add_argument("--amount-max", type=int, default=5,
                   help="largest multi-unit amount, units (default 5)")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    p.add_argument("--out", required=True, help="output trace CSV path")
    p.add_argument("--pred-out", default=None,
                   help="also write a prediction CSV for the generated totals")
    p.add_argument("--bias", type=int, default=0,
                   help="prediction bias mu, units (default 0)")
    p.add_argument("--noise", type=int, default=0,
                   help="prediction noise half-width, units (default 0)")
    p.set_defaults(handler=_cmd_gen)

    p = sub.add_parser("run", help="simulate one policy on a trace")
    _add_price_flags(p)
    p.add_argument("--cc", type=int, default=DEFAULT_COMBO_PRICE,
                   help=f"combo purchase price C_c (default {DEFAULT_COMBO_PRICE})")
    p.add_argument("--trace", required=True, help="input trace CSV path")
    p.add_argument("--algo", required=True,
                   choices=("rdtsr", "ladtsr", "ftp", "dtsr"),
                   help="policy to simulate")
    p.add_argument("--lambda-s", type=int, default=None,
                   help="single threshold for rdtsr/dtsr (default C_s)")
    p.add_argument("--lambda-c", type=int, default=None,
                   help="combo threshold for rdtsr/dtsr (default C_c)")
    p.add_argument("--theta", type=_parse_fraction, default=None,
                   help="trust in [0,1] for ladtsr, e.g. '1/2' or '0.5'")
    p.add_argument("--pred", default=None,
                   help="prediction CSV for ladtsr/ftp")
    p.set_defaults(handler=_cmd_run)

    p = sub.add_parser("sweep-cc",
                       help="empirical CR of rdtsr/dtsr across combo prices")
    _add_price_flags(p)
    p.add_argument("--cc", default="15:40",
                   help="combo prices: 'lo:hi', 'lo:hi:step', or comma list (default 15:40)")
    p.add_argument("--count", type=int, default=10000,
                   help="sequences per axis point (default 10000)")
    p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    p.add_argument("--mix", choices=("uniform", "long_tailed", "mixed"),
                   default="mixed",
                   help="ensemble composition (default mixed: 40%% uniform, 60%% long-tailed)")
    p.add_argument("--multi-unit", action="store_true",
                   help="multi-unit amounts instead of unit demands")
    p.add_argument("--amount-max", type=int, default=5,
                   help="largest multi-unit amount (default 5)")
    p.add_argument("--horizon-max", type=int, default=60,
                   help="max horizon, slots (default 60)")
    p.add_argument("--algos", default="rdtsr,dtsr",
                   help="comma list of policies (default rdtsr,dtsr)")
    p.add_argument("--jobs", type=int, default=1,
                   help="worker processes; results are identical for any value (default 1)")
    p.add_argument("--out", required=True, help="output results CSV path")
    p.add_argument("--json", default=None, help="optional results JSON path")
    p.set_defaults(handler=_cmd_sweep_cc)

    p = sub.add_parser("sweep-theta",
                       help="average cost ratio of ladtsr across prediction bias")
    _add_price_flags(p)
    p.add_argument("--cc", type=int, default=DEFAULT_COMBO_PRICE,
                   help=f"combo purchase price C_c (default {DEFAULT_COMBO_PRICE})")
    p.add_argument("--thetas", default="0,1/4,1/2,3/4,1",
                   help="comma list of trust values (default 0,1/4,1/2,3/4,1)")
    p.add_argument("--biases", default="-50:20:10",
                   help="prediction biases: 'lo:hi', 'lo:hi:step', or comma list; "
                        "use --biases=-50:20:10 for negative values (default -50:20:10)")
    p.add_argument("--noise", type=int, default=0,
                   help="prediction noise half-width, units (default 0)")
    p.add_argument("--count", type=int, default=1000,
                   help="sequences per axis point (default 1000)")
    p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    p.add_argument("--mix", choices=("uniform", "long_tailed", "mixed"),
                   default="mixed", help="ensemble composition (default mixed)")
    p.add_argument("--multi-unit", action="store_true",
                   help="multi-unit amounts instead of unit demands")
    p.add_argument("--amount-max", type=int, default=5,
                   help="largest multi-unit amount (default 5)")
    p.add_argument("--horizon-max", type=int, default=60,
                   help="max horizon, slots (default 60)")
    p.add_argument("--jobs", type=int, default=1,
                   help="worker processes; results are identical for any value (default 1)")
    p.add_argument("--out", required=True, help="output results CSV path")
    p.add_argument("--json", default=None, help="optional results JSON path")
    p.set_defaults(handler=_cmd_sweep_theta)

    p = sub.add_parser("bounds", help="print worst-case ratio bounds")
    _add_price_flags(p)
    p.add_argument("--cc", type=int, default=DEFAULT_COMBO_PRICE,
                   help=f"combo purchase price C_c (default {DEFAULT_COMBO_PRICE})")
    p.add_argument("--theta", type=_parse_fraction, default=None,
                   help="trust in (0,1); switches to the augmented-policy bound")
    p.add_argument("--eta", type=int, default=0,
                   help="prediction error for the augmented bound (default 0)")
    p.add_argument("--opt", type=int, default=None,
                   help="offline-optimal cost for the augmented bound")
    p.set_defaults(handler=_cmd_bounds)

    p = sub.add_parser("oracle-check",
                       help="verify the offline-optimum formula against brute force")
    p.add_argument("--exhaustive-horizon", type=int, default=3,
                   help="exhaustive grid horizon cap, slots (default 3)")
    p.add_argument("--random", type=int, default=200,
                   help="random instances at K=3-4 (default 200)")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    p.set_defaults(handler=_cmd_oracle_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # argparse exits directly for --help
        return 0 if exc.code in (0, None) else 1
    try:
        return args.handler(args)
    except (_UsageError, ConfigError, SequenceError, TraceError,
            InstanceTooLargeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
