"""Offline optimum, brute-force oracle, analytical bounds, standard forms.

The offline optimum has the closed form OPT(z) = min(C_c, sum_k min(z_k, C_s)):
either buy the combo up front or treat each item as an independent rent-or-buy
decision on its total. `brute_force_opt` is the independent oracle for that
formula: it enumerates every purchase-time assignment directly.

Cost upper bounds (`rdtsr_cost_upper_bound`, `ladtsr_cost_upper_bound`) bound a
policy's cost over every ordering of a fixed total-demand vector; dividing by
OPT gives a ratio bound U_CR. The standard-form constructions canonicalize a
total-demand vector without decreasing U_CR, which is what makes the worst
case analyzable; here they serve as property-test machinery.

All bound arithmetic is exact (Fraction); decimals appear only at reporting
boundaries.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algorithms import ThresholdSet, Prediction, ladtsr_thresholds, \
    _validate_shared_thresholds
from .core import ConfigError, DemandSequence, PriceConfig, TotalDemand

BRUTE_FORCE_MAX_ITEMS = 4
BRUTE_FORCE_MAX_HORIZON = 8


class InstanceTooLargeError(ValueError):
    """Brute-force enumeration refused: search space above the caps."""


@dataclass(frozen=True)
class BoundReport:
    """A worst-case ratio bound c, a cost bound U_ALG, and their quotient U_CR."""

    cr_bound: Fraction
    u_alg: Fraction
    u_cr: Fraction


@dataclass(frozen=True)
class StdForm:
    """Shape of a standard total demand for the shared-threshold policy.

    m items have totals >= C_s, n items have totals equal to lambda_s (and
    below C_s), the rest lie in [0, lambda_s) and sum to x. An item worth
    exactly C_s when lambda_s = C_s counts under m.
    """

    m: int
    n: int
    x: int


@dataclass(frozen=True)
class StdFormLA:
    """Shape of a standard total demand under prediction-adjusted thresholds.

    Items split by threshold kind: among the C_s/theta-threshold items, m1
    have totals >= ceil(C_s/theta); among the theta*C_s-threshold items, m2
    have totals >= C_s and n2 have totals equal to ceil(theta*C_s) (and below
    C_s). Remaining items lie in [0, min(C_s, threshold)) and sum to x.
    """

    m1: int
    m2: int
    n2: int
    x: int


def opt_offline(z: TotalDemand, prices: PriceConfig) -> int:
    """Cost of the optimal offline algorithm on a total-demand vector."""
    c_s = prices.single_price
    return min(prices.combo_price, sum(min(zk, c_s) for zk in z.per_item))


def brute_force_opt(seq: DemandSequence, prices: PriceConfig) -> int:
    """Exhaustive offline optimum: try every purchase-time assignment.

    Enumerates (t_1, ..., t_K, t_c) over ({1..T} plus "never")^(K+1), rents
    every demand not covered by a purchase, and returns the minimum total.
    Deliberately ignores all structure of the problem so it can vouch for
    `opt_offline`. Capped at K <= 4 and T <= 8.
    """
    k = prices.num_items
    t_end = seq.horizon
    if k > BRUTE_FORCE_MAX_ITEMS or t_end > BRUTE_FORCE_MAX_HORIZON:
        raise InstanceTooLargeError(
            f"brute force capped at K <= {BRUTE_FORCE_MAX_ITEMS}, "
            f"T <= {BRUTE_FORCE_MAX_HORIZON}; got K={k}, T={t_end}"
        )
    never = t_end + 1  # sentinel: covers nothing, costs nothing
    choices = np.arange(1, t_end + 2, dtype=np.int64)
    grids = np.meshgrid(*([choices] * (k + 1)), indexing="ij", copy=False)
    assign = np.stack([g.reshape(-1) for g in grids])  # rows: t_1..t_K, t_c
    t_singles, t_combo = assign[:k], assign[k]
    cost = (
        prices.single_price * (t_singles < never).sum(axis=0)
        + prices.combo_price * (t_combo < never)
    )
    for ev in seq.events:
        if ev.amount == 0:
            continue
        uncovered = (ev.slot < t_singles[ev.item - 1]) & (ev.slot < t_combo)
        cost = cost + ev.amount * uncovered
    return int(cost.min())


def rdtsr_cr_bound(prices: PriceConfig) -> Fraction:
    """Worst-case ratio bound of the robust policy at thresholds (C_s, C_c).

    Exact value of 3 - 1/C_s - (1/C_c) * (2 - 1/C_s); always below 3.
    """
    c_s = Fraction(prices.single_price)
    c_c = Fraction(prices.combo_price)
    return 3 - 1 / c_s - (2 - 1 / c_s) / c_c


def dtsr_claimed_bound(prices: PriceConfig) -> Fraction:
    """Ratio bound claimed for the baseline: 3 - 1/C_s.

    Holds only under unit demand arrivals; multi-unit slots break it (the
    baseline can make K single purchases and never reach the combo trigger).
    """
    return 3 - Fraction(1, prices.single_price)


def ladtsr_cr_bound(trust: Fraction, eta: int, opt: int) -> Fraction:
    """Worst-case ratio bound of the learning-augmented policy.

    min(1 + t + t^2 + ((1 + 2t) / (1 - t)) * eta/OPT, 1 + 1/t + 1/t^3) for
    trust t in (0, 1). The first term is the accurate-prediction guarantee,
    the second the error-independent guarantee.
    """
    trust = Fraction(trust)
    if not 0 < trust < 1:
        raise ConfigError(
            f"trust must lie strictly in (0, 1), got {trust}; the endpoints "
            "are covered by the policy equivalences, not this formula"
        )
    if eta < 0:
        raise ConfigError(f"eta must be >= 0, got {eta}")
    if opt <= 0:
        raise ConfigError(f"opt must be > 0, got {opt}")
    consistency = (
        1 + trust + trust**2
        + (1 + 2 * trust) / (1 - trust) * Fraction(eta, opt)
    )
    robustness = 1 + 1 / trust + 1 / trust**3
    return min(consistency, robustness)


def _combo_taken(per_item, singles, combo) -> bool:
    """Combo-purchase characterization: sum_k min(z_k, lambda_s_k) >= lambda_c.

    Matches the simulated decision on every ordering of z whenever the combo
    threshold is positive.
    """
    return sum(min(zk, lam) for zk, lam in zip(per_item, singles)) >= combo


def rdtsr_cost_upper_bound(
    z: TotalDemand, prices: PriceConfig, thresholds: ThresholdSet
) -> Fraction:
    """Bound on the robust policy's cost over all orderings of z.

    Combo case: lambda_c - 1 + C_c plus (C_s - 1) per single purchase, with
    the single-purchase count capped at min(#{z_k >= lambda_s},
    (lambda_c - 1)/lambda_s). No-combo case: each item contributes z_k if
    z_k < lambda_s, else lambda_s - 1 + C_s.
    """
    lam_s, lam_c = _validate_shared_thresholds(thresholds, prices)
    c_s = prices.single_price
    if _combo_taken(z.per_item, [lam_s] * len(z.per_item), lam_c):
        heavy = sum(1 for zk in z.per_item if zk >= lam_s)
        singles = min(Fraction(heavy), Fraction(lam_c - 1, lam_s))
        return lam_c - 1 + prices.combo_price + singles * (c_s - 1)
    return Fraction(
        sum(zk if zk < lam_s else lam_s - 1 + c_s for zk in z.per_item)
    )


def ladtsr_cost_upper_bound(
    z: TotalDemand,
    prices: PriceConfig,
    pred: Prediction,
    trust: Fraction,
) -> Fraction:
    """Bound on the learning-augmented policy's cost over all orderings of z.

    Combo case: lambda_c + C_c + f(s1, s2) * C_s, where s1 counts
    high-threshold items (C_s/theta) with z_k at or above that threshold, s2
    counts low-threshold items (theta*C_s) likewise, and

        f(s1, s2) = min(lambda_c / (theta C_s),
                        s2 + (lambda_c - theta C_s s2) / (C_s / theta),
                        s1 + s2).

    No-combo case: each item contributes z_k if z_k < lambda_s_k, else
    lambda_s_k + C_s. (One restatement of the middle f term swaps s2 for s1;
    the s2 form implemented here is the consistent one.)
    """
    trust = Fraction(trust)
    if not 0 < trust < 1:
        raise ConfigError(
            f"trust must lie strictly in (0, 1) for this bound, got {trust}"
        )
    ts = ladtsr_thresholds(pred, prices, trust)
    singles = ts.single_thresholds
    lam_c = ts.combo_threshold
    c_s = prices.single_price
    low = trust * c_s
    high = c_s / trust
    if _combo_taken(z.per_item, singles, lam_c):
        s1 = sum(
            1 for zk, lam in zip(z.per_item, singles)
            if lam == high and zk >= high
        )
        s2 = sum(
            1 for zk, lam in zip(z.per_item, singles)
            if lam == low and zk >= low
        )
        f = min(lam_c / low, s2 + (lam_c - low * s2) / high, Fraction(s1 + s2))
        return lam_c + prices.combo_price + f * c_s
    return sum(
        (Fraction(zk) if zk < lam else lam + c_s
         for zk, lam in zip(z.per_item, singles)),
        start=Fraction(0),
    )


def prediction_error(
    pred: Prediction, z: TotalDemand
) -> tuple[tuple[int, ...], int]:
    """Per-item absolute errors |y_k - z_k| and their total."""
    if len(pred.per_item) != len(z.per_item):
        raise ConfigError(
            f"prediction has {len(pred.per_item)} items, totals have "
            f"{len(z.per_item)}"
        )
    per_item = tuple(abs(y - zk) for y, zk in zip(pred.per_item, z.per_item))
    return per_item, sum(per_item)


def is_standard(
    z: TotalDemand, prices: PriceConfig, thresholds: ThresholdSet
) -> bool:
    """True iff every total is >= C_s, equal to lambda_s, or below lambda_s."""
    lam_s, _ = _validate_shared_thresholds(thresholds, prices)
    c_s = prices.single_price
    return all(
        zk >= c_s or zk == lam_s or zk < lam_s for zk in z.per_item
    )


def standardize_rdtsr(
    z: TotalDemand, prices: PriceConfig, thresholds: ThresholdSet
) -> tuple[TotalDemand, StdForm]:
    """Canonicalize z for the shared-threshold policy; U_CR never decreases.

    Totals in [lambda_s, C_s) collapse to lambda_s; everything else is
    already standard. Idempotent.
    """
    lam_s, _ = _validate_shared_thresholds(thresholds, prices)
    c_s = prices.single_price
    std = tuple(
        lam_s if lam_s <= zk < c_s else zk for zk in z.per_item
    )
    m = sum(1 for zk in std if zk >= c_s)
    n = sum(1 for zk in std if zk == lam_s and zk < c_s)
    x = sum(zk for zk in std if zk < lam_s)
    return TotalDemand(std), StdForm(m, n, x)


def is_standard_la(
    z: TotalDemand, prices: PriceConfig, pred: Prediction, trust: Fraction
) -> bool:
    """Standard-form predicate under prediction-adjusted thresholds."""
    ts = ladtsr_thresholds(pred, prices, Fraction(trust))
    c_s = prices.single_price
    low = Fraction(trust) * c_s
    for zk, lam in zip(z.per_item, ts.single_thresholds):
        if lam == low:
            if not (zk >= c_s or zk == math.ceil(low) or zk < low):
                return False
        else:
            if not (zk >= math.ceil(lam) or zk < c_s):
                return False
    return True


def standardize_ladtsr(
    z: TotalDemand, prices: PriceConfig, pred: Prediction, trust: Fraction
) -> tuple[TotalDemand, StdFormLA]:
    """Canonicalize z under prediction-adjusted thresholds; U_CR never decreases.

    High-threshold items in [C_s, ceil(C_s/theta)) lift to ceil(C_s/theta);
    low-threshold items in [ceil(theta*C_s), C_s) collapse to
    ceil(theta*C_s). Idempotent.
    """
    trust = Fraction(trust)
    if not 0 < trust < 1:
        raise ConfigError(
            f"trust must lie strictly in (0, 1) for standardization, "
            f"got {trust}"
        )
    ts = ladtsr_thresholds(pred, prices, trust)
    c_s = prices.single_price
    low = trust * c_s
    low_ceil = math.ceil(low)
    high_ceil = math.ceil(c_s / trust)
    std = []
    for zk, lam in zip(z.per_item, ts.single_thresholds):
        if lam == low:
            std.append(low_ceil if low_ceil <= zk < c_s else zk)
        else:
            std.append(high_ceil if c_s <= zk < high_ceil else zk)
    m1 = m2 = n2 = x = 0
    for zk, lam in zip(std, ts.single_thresholds):
        if lam == low:
            if zk >= c_s:
                m2 += 1
            elif zk == low_ceil:
                n2 += 1
            else:
                x += zk
        else:
            if zk >= high_ceil:
                m1 += 1
            else:
                x += zk
    return TotalDemand(tuple(std)), StdFormLA(m1, m2, n2, x)


def rdtsr_bound_report(
    z: TotalDemand, prices: PriceConfig, thresholds: ThresholdSet
) -> BoundReport:
    """Bundle the robust policy's ratio bound, cost bound, and U_CR on z."""
    u_alg = rdtsr_cost_upper_bound(z, prices, thresholds)
    opt = opt_offline(z, prices)
    if opt == 0:
        raise ConfigError("U_CR is undefined when OPT(z) = 0")
    return BoundReport(rdtsr_cr_bound(prices), u_alg, u_alg / opt)


def ladtsr_bound_report(
    z: TotalDemand,
    prices: PriceConfig,
    pred: Prediction,
    trust: Fraction,
) -> BoundReport:
    """Bundle the learning-augmented policy's bounds and U_CR on z."""
    u_alg = ladtsr_cost_upper_bound(z, prices, pred, trust)
    opt = opt_offline(z, prices)
    if opt == 0:
        raise ConfigError("U_CR is undefined when OPT(z) = 0")
    _, eta = prediction_error(pred, z)
    return BoundReport(ladtsr_cr_bound(trust, eta, opt), u_alg, u_alg / opt)


def all_small_sequences(num_items: int, max_horizon: int, max_amount: int):
    """Yield every dense demand sequence up to the given caps.

    Includes the empty sequence; per slot the options are "no demand" or one
    of num_items * max_amount positive demands. Used by the oracle-equivalence
    suite.
    """
    per_slot = [(0, 0)] + [
        (item, amount)
        for item in range(1, num_items + 1)
        for amount in range(1, max_amount + 1)
    ]
    for t_end in range(max_horizon + 1):
        for combo in itertools.product(per_slot, repeat=t_end):
            yield DemandSequence.from_pairs(combo)
