"""Online payment policies for the two-level rent-or-buy problem.

All policies share a step-wise interface: observe one slot's demand, emit one
action ("none", "rent", "single", "combo"). The threshold family keeps an
indicative cost psi_k per item (uncovered demand accumulated so far) and an
overall indicative cost psi_c = sum_k min(psi_k, lambda_s_k); a purchase fires
when the relevant indicative cost reaches its threshold.

Policies:
  * RDTSR  - shared integer thresholds, combo checked before single.
  * LADTSR - prediction-driven per-item thresholds (trust parameter theta).
  * FTP    - commits purchases exactly as the prediction suggests.
  * DTSR   - baseline variant: single checked before combo, and a purchased
             item's contribution to psi_c freezes at its pre-purchase value.

Threshold comparisons use exact rational arithmetic (Fraction, with
math.inf for "never purchase"); since indicative costs are integers, the
engine scales thresholds to a common integer denominator so the hot loop is
pure integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    ConfigError,
    DecisionRecord,
    DemandSequence,
    PriceConfig,
)

INFINITE_THRESHOLD = math.inf

ACTION_NONE = "none"
ACTION_RENT = "rent"
ACTION_SINGLE = "single"
ACTION_COMBO = "combo"

Threshold = Fraction | float  # exact rational, or math.inf


@dataclass(frozen=True)
class ThresholdSet:
    """Per-item single-purchase thresholds, combo threshold, optional trust.

    A shared single threshold is the special case of all entries equal.
    Entries are exact rationals; math.inf means "never purchase".
    """

    single_thresholds: tuple[Threshold, ...]
    combo_threshold: Threshold
    trust: Fraction | None = None

    @classmethod
    def shared(cls, single: int, combo: int, num_items: int) -> "ThresholdSet":
        """Uniform integer thresholds lambda_s, lambda_c for all items."""
        return cls(
            (Fraction(single),) * num_items, Fraction(combo), trust=None
        )


@dataclass(frozen=True)
class Prediction:
    """Predicted per-item demand totals y_k, all non-negative integers."""

    per_item: tuple[int, ...]

    def __post_init__(self):
        if any(y < 0 for y in self.per_item):
            raise ConfigError(f"predictions must be >= 0, got {self.per_item}")


@dataclass(frozen=True)
class IndicativeState:
    """Snapshot of a threshold policy's internal accumulators."""

    per_item: tuple[int, ...]
    overall: Fraction
    current_slot: int


def _validate_shared_thresholds(
    thresholds: ThresholdSet, prices: PriceConfig
) -> tuple[int, int]:
    """Check the shared-integer-threshold contract; return (lam_s, lam_c)."""
    singles = set(thresholds.single_thresholds)
    if len(thresholds.single_thresholds) != prices.num_items:
        raise ConfigError(
            f"expected {prices.num_items} single thresholds, "
            f"got {len(thresholds.single_thresholds)}"
        )
    if len(singles) != 1:
        raise ConfigError("this policy requires one shared single threshold")
    lam_s = singles.pop()
    lam_c = thresholds.combo_threshold
    for name, lam, cap in (
        ("single", lam_s, prices.single_price),
        ("combo", lam_c, prices.combo_price),
    ):
        if not isinstance(lam, Fraction) or lam.denominator != 1:
            raise ConfigError(f"{name} threshold must be an integer, got {lam}")
        if not 1 < lam <= cap:
            raise ConfigError(
                f"{name} threshold must lie in (1, {cap}], got {lam}"
            )
    return int(lam_s), int(lam_c)


class ThresholdPolicy:
    """Step-wise engine for the indicative-cost threshold policies.

    `single_first` swaps the purchase priority (baseline behaviour);
    `freeze_overall_on_single` rolls an item's contribution to the overall
    indicative cost back to its pre-purchase value when its single purchase
    fires, and skips its increments afterwards (baseline behaviour).
    """

    def __init__(
        self,
        prices: PriceConfig,
        thresholds: ThresholdSet,
        *,
        single_first: bool = False,
        freeze_overall_on_single: bool = False,
    ):
        k = prices.num_items
        singles = thresholds.single_thresholds
        combo = thresholds.combo_threshold
        if len(singles) != k:
            raise ConfigError(
                f"expected {k} single thresholds, got {len(singles)}"
            )
        denominators = [
            lam.denominator for lam in (*singles, combo)
            if isinstance(lam, Fraction)
        ]
        scale = math.lcm(*denominators) if denominators else 1
        # Integer demand makes psi >= lam equivalent to psi >= ceil(lam).
        self._single_trigger = [
            math.ceil(lam) if isinstance(lam, Fraction) else INFINITE_THRESHOLD
            for lam in singles
        ]
        self._single_cap = [
            int(lam * scale) if isinstance(lam, Fraction) else INFINITE_THRESHOLD
            for lam in singles
        ]
        self._combo_trigger = (
            int(combo * scale) if isinstance(combo, Fraction)
            else INFINITE_THRESHOLD
        )
        self._scale = scale
        self._single_first = single_first
        self._freeze = freeze_overall_on_single
        self._psi = [0] * k
        self._contrib = [0] * k  # scaled min(psi_k, lam_k), frozen variant for DTSR
        self._psi_c = 0          # scaled overall indicative cost
        self._slot = 0
        self._rent_flags: list[bool] = []
        self._single_times: list[int | None] = [None] * k
        self._combo_time: int | None = None

    @property
    def state(self) -> IndicativeState:
        return IndicativeState(
            tuple(self._psi),
            Fraction(self._psi_c, self._scale),
            self._slot,
        )

    def step(self, item: int, amount: int) -> str:
        """Consume one slot's demand, return the action taken."""
        self._slot = t = self._slot + 1
        self._rent_flags.append(False)
        if item == 0:
            return ACTION_NONE
        k = item - 1
        if self._combo_time is not None or self._single_times[k] is not None:
            return ACTION_NONE  # covered; indicative cost stays frozen
        prev_psi = self._psi[k]
        psi = prev_psi + amount
        self._psi[k] = psi
        cap = self._single_cap[k]
        scaled = psi * self._scale
        contrib = scaled if scaled < cap else cap
        self._psi_c += contrib - self._contrib[k]
        self._contrib[k] = contrib

        if self._single_first:
            if psi >= self._single_trigger[k]:
                return self._buy_single(k, t, prev_psi)
            if self._psi_c >= self._combo_trigger:
                self._combo_time = t
                return ACTION_COMBO
        else:
            if self._psi_c >= self._combo_trigger:
                self._combo_time = t
                return ACTION_COMBO
            if psi >= self._single_trigger[k]:
                return self._buy_single(k, t, prev_psi)
        self._rent_flags[-1] = True
        return ACTION_RENT

    def _buy_single(self, k: int, t: int, prev_psi: int) -> str:
        self._single_times[k] = t
        if self._freeze:
            cap = self._single_cap[k]
            scaled = prev_psi * self._scale
            frozen = scaled if scaled < cap else cap
            self._psi_c += frozen - self._contrib[k]
            self._contrib[k] = frozen
        return ACTION_SINGLE

    def record(self) -> DecisionRecord:
        return DecisionRecord(
            tuple(self._rent_flags),
            tuple(self._single_times),
            self._combo_time,
        )


class FollowPrediction:
    """Commit to the purchase plan the prediction suggests, rent otherwise.

    Buys the combo at the first uncovered-demand slot when
    sum_k min(C_s, y_k) >= C_c; otherwise buys item k at its first demand
    slot when y_k >= C_s and rents the rest.
    """

    def __init__(self, prices: PriceConfig, pred: Prediction):
        if len(pred.per_item) != prices.num_items:
            raise ConfigError(
                f"expected {prices.num_items} predictions, "
                f"got {len(pred.per_item)}"
            )
        c_s = prices.single_price
        self._combo_planned = (
            sum(min(c_s, y) for y in pred.per_item) >= prices.combo_price
        )
        self._single_planned = [y >= c_s for y in pred.per_item]
        self._slot = 0
        self._rent_flags: list[bool] = []
        self._single_times: list[int | None] = [None] * prices.num_items
        self._combo_time: int | None = None

    def step(self, item: int, amount: int) -> str:
        self._slot = t = self._slot + 1
        self._rent_flags.append(False)
        if item == 0:
            return ACTION_NONE
        k = item - 1
        if self._combo_time is not None or self._single_times[k] is not None:
            return ACTION_NONE
        if self._combo_planned:
            self._combo_time = t
            return ACTION_COMBO
        if self._single_planned[k]:
            self._single_times[k] = t
            return ACTION_SINGLE
        self._rent_flags[-1] = True
        return ACTION_RENT

    def record(self) -> DecisionRecord:
        return DecisionRecord(
            tuple(self._rent_flags),
            tuple(self._single_times),
            self._combo_time,
        )


def run_policy(policy, seq: DemandSequence) -> DecisionRecord:
    """Drive a step-wise policy over a whole sequence."""
    step = policy.step
    for ev in seq.events:
        step(ev.item, ev.amount)
    return policy.record()


def rdtsr_policy(prices: PriceConfig, thresholds: ThresholdSet) -> ThresholdPolicy:
    """Combo-priority threshold policy with shared integer thresholds."""
    _validate_shared_thresholds(thresholds, prices)
    return ThresholdPolicy(prices, thresholds)


def dtsr_policy(prices: PriceConfig, thresholds: ThresholdSet) -> ThresholdPolicy:
    """Baseline (reconstructed): single priority, frozen overall contributions.

    Once an item's single purchase fires, its contribution to the overall
    indicative cost is rolled back to the pre-purchase value and never grows
    again, so heavy per-slot demands can starve the combo trigger.
    """
    _validate_shared_thresholds(thresholds, prices)
    return ThresholdPolicy(
        prices, thresholds, single_first=True, freeze_overall_on_single=True
    )


def ladtsr_thresholds(
    pred: Prediction, prices: PriceConfig, trust: Fraction
) -> ThresholdSet:
    """Prediction-adjusted thresholds for the learning-augmented policy.

    lambda_s_k = trust * C_s when the prediction suggests buying item k
    (y_k >= C_s), else C_s / trust; lambda_c = trust^2 * C_c when the
    prediction suggests the combo (sum_k min(C_s, y_k) >= C_c), else
    C_c / trust. Division by trust = 0 yields an infinite threshold.
    """
    trust = Fraction(trust)
    if not 0 <= trust <= 1:
        raise ConfigError(f"trust must lie in [0, 1], got {trust}")
    if len(pred.per_item) != prices.num_items:
        raise ConfigError(
            f"expected {prices.num_items} predictions, got {len(pred.per_item)}"
        )
    c_s, c_c = prices.single_price, prices.combo_price
    singles = tuple(
        trust * c_s if y >= c_s
        else (c_s / trust if trust else INFINITE_THRESHOLD)
        for y in pred.per_item
    )
    if sum(min(c_s, y) for y in pred.per_item) >= c_c:
        combo: Threshold = trust * trust * c_c
    else:
        combo = c_c / trust if trust else INFINITE_THRESHOLD
    return ThresholdSet(singles, combo, trust=trust)


def ladtsr_policy(
    prices: PriceConfig, pred: Prediction, trust: Fraction
) -> ThresholdPolicy:
    """Combo-priority threshold policy with prediction-adjusted thresholds."""
    return ThresholdPolicy(prices, ladtsr_thresholds(pred, prices, trust))


def rdtsr_simulate(
    seq: DemandSequence, prices: PriceConfig, thresholds: ThresholdSet
) -> DecisionRecord:
    """Run the robust threshold policy over a sequence."""
    return run_policy(rdtsr_policy(prices, thresholds), seq)


def dtsr_simulate(
    seq: DemandSequence, prices: PriceConfig, thresholds: ThresholdSet
) -> DecisionRecord:
    """Run the baseline threshold policy over a sequence."""
    return run_policy(dtsr_policy(prices, thresholds), seq)


def ladtsr_simulate(
    seq: DemandSequence,
    prices: PriceConfig,
    pred: Prediction,
    trust: Fraction,
) -> DecisionRecord:
    """Run the learning-augmented threshold policy over a sequence."""
    return run_policy(ladtsr_policy(prices, pred, trust), seq)


def ftp_simulate(
    seq: DemandSequence, prices: PriceConfig, pred: Prediction
) -> DecisionRecord:
    """Run the follow-the-prediction policy over a sequence."""
    return run_policy(FollowPrediction(prices, pred), seq)
