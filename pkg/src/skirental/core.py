"""Domain types and cost accounting for the two-level rent-or-buy problem.

A user faces per-slot demands for K items and covers each demand by renting
(unit cost per demand unit), buying the demanded item outright (price C_s,
covers that item from the purchase slot onward), or buying the combo (price
C_c, covers every item from the purchase slot onward).

All money and demand quantities are integers; cost accounting never touches
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass


class ConfigError(ValueError):
    """Invalid prices, thresholds, or generator parameters."""


class SequenceError(ValueError):
    """A demand sequence violates its structural invariants."""


@dataclass(frozen=True)
class PriceConfig:
    """Problem prices: K items, single price C_s, combo price C_c.

    Requires C_s > 1 and C_s < C_c < K * C_s, so a combo is strictly more
    expensive than one single purchase but cheaper than buying every item.
    Note the bounds force K >= 2; there is no valid combo price for K = 1.
    """

    num_items: int
    single_price: int
    combo_price: int

    def __post_init__(self):
        if self.num_items < 1:
            raise ConfigError(f"num_items must be >= 1, got {self.num_items}")
        if self.single_price <= 1:
            raise ConfigError(
                f"single_price must be > 1, got {self.single_price}"
            )
        if not self.single_price < self.combo_price < self.num_items * self.single_price:
            raise ConfigError(
                f"combo_price must lie in ({self.single_price}, "
                f"{self.num_items * self.single_price}) = (C_s, K*C_s), "
                f"got {self.combo_price}"
            )


@dataclass(frozen=True)
class DemandEvent:
    """One slot's demand: item index (1-based, 0 = no demand) and amount.

    item == 0 if and only if amount == 0; a slot carries demand for at most
    one item.
    """

    slot: int
    item: int
    amount: int

    def __post_init__(self):
        if self.slot < 1:
            raise SequenceError(f"slot must be >= 1, got {self.slot}")
        if self.item < 0:
            raise SequenceError(f"item must be >= 0, got {self.item}")
        if self.amount < 0:
            raise SequenceError(f"amount must be >= 0, got {self.amount}")
        if (self.item == 0) != (self.amount == 0):
            raise SequenceError(
                f"slot {self.slot}: item == 0 and amount == 0 must coincide, "
                f"got item={self.item}, amount={self.amount}"
            )


@dataclass(frozen=True)
class DemandSequence:
    """Dense demand sequence over slots 1..horizon.

    Slots without demand are materialized as (item=0, amount=0) events so
    the horizon is explicit.
    """

    events: tuple[DemandEvent, ...]
    horizon: int

    def __post_init__(self):
        if self.horizon != len(self.events):
            raise SequenceError(
                f"horizon {self.horizon} != number of events {len(self.events)}"
            )
        for t, ev in enumerate(self.events, start=1):
            if ev.slot != t:
                raise SequenceError(
                    f"slots must be dense 1..T; position {t} has slot {ev.slot}"
                )

    @classmethod
    def from_pairs(cls, pairs) -> "DemandSequence":
        """Build from (item, amount) pairs; slots are assigned 1..len(pairs)."""
        events = tuple(
            DemandEvent(t, item, amount)
            for t, (item, amount) in enumerate(pairs, start=1)
        )
        return cls(events, len(events))

    def pairs(self) -> list[tuple[int, int]]:
        """(item, amount) per slot, the compact form used by simulators."""
        return [(ev.item, ev.amount) for ev in self.events]


@dataclass(frozen=True)
class TotalDemand:
    """Per-item demand totals z_k aggregated over a whole sequence."""

    per_item: tuple[int, ...]

    def __post_init__(self):
        if any(z < 0 for z in self.per_item):
            raise SequenceError(f"totals must be >= 0, got {self.per_item}")


@dataclass(frozen=True)
class DecisionRecord:
    """A policy's full output: rent flags per slot and purchase times.

    Purchase times are slot indices; None means the purchase was never made.
    At most one single purchase per item and at most one combo purchase.
    """

    rent_flags: tuple[bool, ...]
    single_times: tuple[int | None, ...]
    combo_time: int | None


@dataclass(frozen=True)
class CostBreakdown:
    """Rental / single-purchase / combo cost split; total is their exact sum."""

    rent_cost: int
    single_cost: int
    combo_cost: int
    total: int


def total_demand(seq: DemandSequence, prices: PriceConfig) -> TotalDemand:
    """Aggregate a sequence into per-item totals z_k.

    Raises SequenceError if any event demands an item index above K.
    """
    k = prices.num_items
    totals = [0] * k
    for ev in seq.events:
        if ev.item > k:
            raise SequenceError(
                f"slot {ev.slot}: item {ev.item} exceeds num_items {k}"
            )
        if ev.item > 0:
            totals[ev.item - 1] += ev.amount
    return TotalDemand(tuple(totals))


def evaluate_cost(
    seq: DemandSequence, decisions: DecisionRecord, prices: PriceConfig
) -> CostBreakdown:
    """Price a decision record against a sequence.

    rent = sum of rented amounts, single = C_s per item bought within the
    horizon, combo = C_c if bought within the horizon.
    """
    t_end = seq.horizon
    rent = 0
    for ev, flag in zip(seq.events, decisions.rent_flags):
        if flag:
            rent += ev.amount
    singles = sum(
        1 for t in decisions.single_times if t is not None and t <= t_end
    )
    combo = (
        prices.combo_price
        if decisions.combo_time is not None and decisions.combo_time <= t_end
        else 0
    )
    single = prices.single_price * singles
    return CostBreakdown(rent, single, combo, rent + single + combo)


def check_feasible(seq: DemandSequence, decisions: DecisionRecord) -> bool:
    """True iff every positive demand is rented or covered by a purchase.

    A demand in slot t for item k is covered when t >= t_k or t >= t_c.
    """
    t_c = decisions.combo_time
    for ev, flag in zip(seq.events, decisions.rent_flags):
        if ev.amount == 0:
            continue
        if flag:
            continue
        if t_c is not None and ev.slot >= t_c:
            continue
        t_k = decisions.single_times[ev.item - 1]
        if t_k is not None and ev.slot >= t_k:
            continue
        return False
    return True
