"""Batch experiment runner: seeded ensembles, ratio metrics, result files.

Two sweeps mirror the study protocol: `run_cc_sweep` varies the combo price
and reports each policy's worst and mean cost ratio against the offline
optimum over the same seeded ensemble; `run_theta_bias_sweep` varies the
prediction bias and the trust parameter for the learning-augmented policy.

Metrics per (axis point, policy): empirical CR (max ratio), average ratio,
cumulative normalized cost (sum of costs / sum of optima), plus the relevant
analytical bound when one exists. Instances with OPT = 0 are skipped and
counted. Ratios are exact rationals internally; decimals appear only in the
output files.

Determinism contract: results are byte-identical for a fixed master seed
regardless of the parallelism degree. Sequences draw per-index sub-seeds, so
any partition into chunks sees the same instances; chunk results merge in
sorted index order (and are exact, so order cannot matter anyway).
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .algorithms import (
    ACTION_COMBO,
    ACTION_RENT,
    ACTION_SINGLE,
    ThresholdSet,
    dtsr_policy,
    ladtsr_policy,
    rdtsr_policy,
)
from .analysis import dtsr_claimed_bound, rdtsr_cr_bound
from .core import ConfigError, DemandSequence, PriceConfig, TotalDemand
from .datagen import GenConfig, PredictorConfig, gen_prediction, gen_sequence, subseed

RESULTS_HEADER = (
    "axis", "algo", "count", "skipped",
    "empirical_cr", "avg_ratio", "bound", "cum_norm_cost",
)

CC_SWEEP_ALGOS = ("rdtsr", "dtsr")


@dataclass(frozen=True)
class EnsembleSpec:
    """A seeded ensemble of generated sequences.

    mix: "uniform", "long_tailed", or "mixed" (40% uniform / 60% long-tailed,
    assigned deterministically by index: indices with index % 5 < 2 are
    uniform).
    """

    count: int
    num_items: int
    horizon_max: int = 60
    multi_unit: bool = False
    amount_max: int = 5
    seed: int = 0
    mix: str = "mixed"

    def __post_init__(self):
        if self.count < 1:
            raise ConfigError(f"count must be >= 1, got {self.count}")
        if self.mix not in ("uniform", "long_tailed", "mixed"):
            raise ConfigError(f"unknown mix {self.mix!r}")

    def kind_for_index(self, index: int) -> str:
        if self.mix == "mixed":
            return "uniform" if index % 5 < 2 else "long_tailed"
        return self.mix


@dataclass(frozen=True)
class AlgoStats:
    """Aggregated metrics for one policy at one axis point."""

    count: int
    skipped: int
    empirical_cr: Fraction | None
    avg_ratio: Fraction | None
    bound: Fraction | None
    cum_norm_cost: Fraction | None


@dataclass(frozen=True)
class SweepResult:
    """One axis point: the axis value and per-policy metrics."""

    axis_value: int
    per_algo: dict[str, AlgoStats]


class _Agg:
    """Running exact aggregate of cost ratios for one (axis, algo) cell."""

    __slots__ = ("count", "skipped", "max_num", "max_den",
                 "ratio_sums", "sum_cost", "sum_opt")

    def __init__(self):
        self.count = 0
        self.skipped = 0
        self.max_num = 0
        self.max_den = 1
        self.ratio_sums: dict[int, int] = {}  # opt value -> summed costs
        self.sum_cost = 0
        self.sum_opt = 0

    def add(self, cost: int, opt: int) -> None:
        self.count += 1
        if cost * self.max_den > self.max_num * opt:
            self.max_num, self.max_den = cost, opt
        self.ratio_sums[opt] = self.ratio_sums.get(opt, 0) + cost
        self.sum_cost += cost
        self.sum_opt += opt

    def skip(self) -> None:
        self.skipped += 1

    def merge(self, other: "_Agg") -> None:
        self.count += other.count
        self.skipped += other.skipped
        if other.max_num * self.max_den > self.max_num * other.max_den:
            self.max_num, self.max_den = other.max_num, other.max_den
        for den, num in other.ratio_sums.items():
            self.ratio_sums[den] = self.ratio_sums.get(den, 0) + num
        self.sum_cost += other.sum_cost
        self.sum_opt += other.sum_opt

    def stats(self, bound: Fraction | None) -> AlgoStats:
        if self.count == 0:
            return AlgoStats(0, self.skipped, None, None, bound, None)
        avg = sum(
            (Fraction(num, den) for den, num in sorted(self.ratio_sums.items())),
            start=Fraction(0),
        ) / self.count
        return AlgoStats(
            self.count,
            self.skipped,
            Fraction(self.max_num, self.max_den),
            avg,
            bound,
            Fraction(self.sum_cost, self.sum_opt),
        )


def _policy_cost(policy, pairs, prices: PriceConfig) -> int:
    """Drive a policy over (item, amount) pairs, accumulating cost online."""
    rent = 0
    singles = 0
    combo = False
    step = policy.step
    for item, amount in pairs:
        action = step(item, amount)
        if action == ACTION_RENT:
            rent += amount
        elif action == ACTION_SINGLE:
            singles += 1
        elif action == ACTION_COMBO:
            combo = True
    return (
        rent
        + singles * prices.single_price
        + (prices.combo_price if combo else 0)
    )


def _ensemble_pairs(spec: EnsembleSpec, index: int, prices: PriceConfig):
    cfg = GenConfig(
        kind=spec.kind_for_index(index),
        num_items=spec.num_items,
        horizon_max=spec.horizon_max,
        multi_unit=spec.multi_unit,
        amount_max=spec.amount_max,
        seed=subseed(spec.seed, index),
    )
    return gen_sequence(cfg, prices).pairs()


def _totals(pairs, num_items: int) -> list[int]:
    totals = [0] * num_items
    for item, amount in pairs:
        if item:
            totals[item - 1] += amount
    return totals


def _cc_chunk(task) -> dict:
    """Evaluate one index range against every combo price; exact aggregates."""
    (start, stop, spec, single_price, cc_values, algos, sequences) = task
    num_items = spec.num_items
    aggs = {(cc, algo): _Agg() for cc in cc_values for algo in algos}
    bounds = {
        cc: rdtsr_cr_bound(PriceConfig(num_items, single_price, cc))
        for cc in cc_values
    }
    probe = PriceConfig(num_items, single_price, cc_values[0])
    for index in range(start, stop):
        if sequences is not None:
            pairs = sequences[index].pairs()
        else:
            pairs = _ensemble_pairs(spec, index, probe)
        totals = _totals(pairs, num_items)
        base_opt = sum(min(z, single_price) for z in totals)
        for cc in cc_values:
            prices = PriceConfig(num_items, single_price, cc)
            opt = min(cc, base_opt)
            if opt == 0:
                for algo in algos:
                    aggs[(cc, algo)].skip()
                continue
            thresholds = ThresholdSet.shared(single_price, cc, num_items)
            for algo in algos:
                if algo == "rdtsr":
                    policy = rdtsr_policy(prices, thresholds)
                else:
                    policy = dtsr_policy(prices, thresholds)
                cost = _policy_cost(policy, pairs, prices)
                if algo == "rdtsr":
                    bound = bounds[cc]
                    # Per-instance guarantee at thresholds (C_s, C_c); a
                    # violation is a bug, not noise.
                    assert cost * bound.denominator <= bound.numerator * opt, (
                        f"ratio {cost}/{opt} above bound {bound} "
                        f"(cc={cc}, index={index})"
                    )
                aggs[(cc, algo)].add(cost, opt)
    return aggs


def _theta_chunk(task) -> dict:
    """Evaluate one index range across (bias, trust) grid; exact aggregates."""
    (start, stop, spec, prices, thetas, biases, noise, sequences) = task
    aggs = {
        (bias, theta): _Agg() for bias in biases for theta in thetas
    }
    for index in range(start, stop):
        if sequences is not None:
            pairs = sequences[index].pairs()
        else:
            pairs = _ensemble_pairs(spec, index, prices)
        totals = _totals(pairs, prices.num_items)
        opt = min(
            prices.combo_price,
            sum(min(zk, prices.single_price) for zk in totals),
        )
        z = TotalDemand(tuple(totals))
        pred_seed = subseed(spec.seed, index, stream=1)
        for bias in biases:
            pred = gen_prediction(
                z, PredictorConfig(bias=bias, noise_halfwidth=noise,
                                   seed=pred_seed)
            )
            for theta in thetas:
                agg = aggs[(bias, theta)]
                if opt == 0:
                    agg.skip()
                    continue
                policy = ladtsr_policy(prices, pred, theta)
                cost = _policy_cost(policy, pairs, prices)
                agg.add(cost, opt)
    return aggs


def _run_chunks(worker, tasks, jobs: int):
    if jobs <= 1 or len(tasks) <= 1:
        return [worker(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, tasks))


def _chunk_ranges(count: int, jobs: int):
    chunk = max(1, -(-count // max(jobs * 4, 1)))
    return [(start, min(start + chunk, count)) for start in range(0, count, chunk)]


def run_cc_sweep(
    single_price: int,
    num_items: int,
    cc_values,
    ensemble: EnsembleSpec,
    algos=CC_SWEEP_ALGOS,
    jobs: int = 1,
    sequences: list[DemandSequence] | None = None,
) -> list[SweepResult]:
    """Simulate the threshold policies over one ensemble per combo price.

    Every axis point sees the identical seeded ensemble; thresholds are
    (C_s, C_c). Pass `sequences` to bypass generation (ensemble.count must
    match). Returns one SweepResult per combo price, in input order.
    """
    cc_values = tuple(int(cc) for cc in cc_values)
    for cc in cc_values:
        PriceConfig(num_items, single_price, cc)  # validate every axis point
    for algo in algos:
        if algo not in CC_SWEEP_ALGOS:
            raise ConfigError(f"unknown sweep policy {algo!r}")
    if sequences is not None and len(sequences) != ensemble.count:
        raise ConfigError(
            f"got {len(sequences)} sequences for count={ensemble.count}"
        )
    tasks = [
        (start, stop, ensemble, single_price, cc_values, tuple(algos), sequences)
        for start, stop in _chunk_ranges(ensemble.count, jobs)
    ]
    merged = {(cc, algo): _Agg() for cc in cc_values for algo in algos}
    for chunk in _run_chunks(_cc_chunk, tasks, jobs):
        for key, agg in sorted(chunk.items(), key=lambda kv: str(kv[0])):
            merged[key].merge(agg)
    results = []
    for cc in cc_values:
        prices = PriceConfig(num_items, single_price, cc)
        per_algo = {}
        for algo in algos:
            bound = (
                rdtsr_cr_bound(prices) if algo == "rdtsr"
                else dtsr_claimed_bound(prices)
            )
            per_algo[algo] = merged[(cc, algo)].stats(bound)
        results.append(SweepResult(cc, per_algo))
    return results


def theta_label(theta: Fraction) -> str:
    """Column label for one trust setting; endpoints name their equivalents."""
    theta = Fraction(theta)
    if theta == 0:
        return "ladtsr(theta=0)[ftp]"
    if theta == 1:
        return "ladtsr(theta=1)[rdtsr]"
    return f"ladtsr(theta={theta})"


def run_theta_bias_sweep(
    prices: PriceConfig,
    thetas,
    biases,
    ensemble: EnsembleSpec,
    noise: int = 0,
    jobs: int = 1,
    sequences: list[DemandSequence] | None = None,
) -> list[SweepResult]:
    """Sweep prediction bias against trust settings for the augmented policy.

    Axis = bias. One labeled column per trust value; trust 0 and 1 rows are
    the follow-the-prediction and robust-policy equivalents. Prediction noise
    draws depend on (seed, index) only, so bias points are paired.
    """
    thetas = tuple(Fraction(t) for t in thetas)
    for theta in thetas:
        if not 0 <= theta <= 1:
            raise ConfigError(f"trust must lie in [0, 1], got {theta}")
    biases = tuple(int(b) for b in biases)
    if ensemble.num_items != prices.num_items:
        raise ConfigError(
            f"ensemble items {ensemble.num_items} != price config items "
            f"{prices.num_items}"
        )
    if sequences is not None and len(sequences) != ensemble.count:
        raise ConfigError(
            f"got {len(sequences)} sequences for count={ensemble.count}"
        )
    tasks = [
        (start, stop, ensemble, prices, thetas, biases, noise, sequences)
        for start, stop in _chunk_ranges(ensemble.count, jobs)
    ]
    merged = {(bias, theta): _Agg() for bias in biases for theta in thetas}
    for chunk in _run_chunks(_theta_chunk, tasks, jobs):
        for key, agg in sorted(chunk.items(), key=lambda kv: str(kv[0])):
            merged[key].merge(agg)
    results = []
    for bias in biases:
        per_algo = {}
        for theta in thetas:
            if theta == 0:
                bound = None
            elif theta == 1:
                bound = rdtsr_cr_bound(prices)
            else:
                bound = 1 + 1 / theta + 1 / theta**3
            per_algo[theta_label(theta)] = merged[(bias, theta)].stats(bound)
        results.append(SweepResult(bias, per_algo))
    return results


def _decimal(value: Fraction | None) -> str:
    if value is None:
        return ""
    return format(float(value), ".12g")


def write_results_csv(results: list[SweepResult], path) -> None:
    """Write sweep results as CSV (fixed header, LF endings, 12 sig digits)."""
    lines = [",".join(RESULTS_HEADER)]
    for result in results:
        for algo, stats in result.per_algo.items():
            lines.append(",".join((
                str(result.axis_value),
                algo,
                str(stats.count),
                str(stats.skipped),
                _decimal(stats.empirical_cr),
                _decimal(stats.avg_ratio),
                _decimal(stats.bound),
                _decimal(stats.cum_norm_cost),
            )))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def _json_ratio(value: Fraction | None):
    if value is None:
        return None
    return {
        "decimal": _decimal(value),
        "num": value.numerator,
        "den": value.denominator,
    }


def write_results_json(results: list[SweepResult], path, meta: dict) -> None:
    """Write sweep results plus a meta block (everything needed to rerun)."""
    payload = {
        "meta": meta,
        "results": [
            {
                "axis": result.axis_value,
                "algos": {
                    algo: {
                        "count": stats.count,
                        "skipped": stats.skipped,
                        "empirical_cr": _json_ratio(stats.empirical_cr),
                        "avg_ratio": _json_ratio(stats.avg_ratio),
                        "bound": _json_ratio(stats.bound),
                        "cum_norm_cost": _json_ratio(stats.cum_norm_cost),
                    }
                    for algo, stats in result.per_algo.items()
                },
            }
            for result in results
        ],
    }
    with open(path, "w", encoding="utf-8", newline="") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
