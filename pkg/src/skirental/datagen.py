"""Synthetic demand generators, a parametric biased predictor, trace files.

Generators are pure functions of their config: the RNG is PCG64 seeded
through SeedSequence, so output is identical across runs and platforms for a
fixed seed. Sub-seeds for ensemble members are derived by hashing
(master_seed, index, stream) so parallel generation is order-independent.

Trace CSV format: header ``t,item,amount``; one row per demand with 1-based
slot, 1-based item, positive integer amount; slots missing from the file are
implicitly (0, 0); UTF-8, LF line endings, trailing newline. A sequence whose
last slots carry no demand therefore round-trips with a shorter horizon.

Prediction CSV format: header ``item,y``; one row per item, 1-based item
index, non-negative integer prediction.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .algorithms import Prediction
from .core import (
    ConfigError,
    DemandEvent,
    DemandSequence,
    PriceConfig,
    TotalDemand,
)

GeneratorKind = Literal["uniform", "long_tailed"]

HOT_SHARE = 0.8   # fraction of demands routed to the hot item set
HOT_ITEMS = 0.2   # fraction of items in the hot set (rounded up)


class TraceError(ValueError):
    """A trace or prediction file failed to parse or validate."""


@dataclass(frozen=True)
class GenConfig:
    """Demand-sequence generator settings.

    The horizon is drawn uniformly from [1, horizon_max]; each slot carries
    one demand whose item is uniform over all items (``uniform``) or routed
    to the first ceil(0.2 K) items with probability 0.8 (``long_tailed``).
    Amounts are 1, or uniform on [1, amount_max] when multi_unit is set.
    """

    kind: GeneratorKind
    num_items: int
    horizon_max: int = 60
    multi_unit: bool = False
    amount_max: int = 5
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("uniform", "long_tailed"):
            raise ConfigError(f"unknown generator kind {self.kind!r}")
        if self.num_items < 1:
            raise ConfigError(f"num_items must be >= 1, got {self.num_items}")
        if self.horizon_max < 1:
            raise ConfigError(
                f"horizon_max must be >= 1, got {self.horizon_max}"
            )
        if self.amount_max < 1:
            raise ConfigError(f"amount_max must be >= 1, got {self.amount_max}")


@dataclass(frozen=True)
class PredictorConfig:
    """Biased predictor settings: y_k = max(0, z_k + bias + noise_k).

    noise_k is a uniform integer on [-noise_halfwidth, +noise_halfwidth].
    The bias models a systematic shift (distribution drift); the clamp keeps
    predictions non-negative.
    """

    bias: int = 0
    noise_halfwidth: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.noise_halfwidth < 0:
            raise ConfigError(
                f"noise_halfwidth must be >= 0, got {self.noise_halfwidth}"
            )


def subseed(master_seed: int, index: int, stream: int = 0) -> int:
    """Hash (master_seed, index, stream) into an independent 128-bit seed."""
    ss = np.random.SeedSequence((master_seed, index, stream))
    return int.from_bytes(ss.generate_state(4, np.uint32).tobytes(), "little")


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def gen_sequence(cfg: GenConfig, prices: PriceConfig) -> DemandSequence:
    """Draw one demand sequence; deterministic given cfg.seed."""
    if cfg.num_items != prices.num_items:
        raise ConfigError(
            f"generator items {cfg.num_items} != price config items "
            f"{prices.num_items}"
        )
    k = cfg.num_items
    rng = _rng(cfg.seed)
    horizon = int(rng.integers(1, cfg.horizon_max, endpoint=True))
    if cfg.kind == "uniform":
        items = rng.integers(1, k, endpoint=True, size=horizon)
    else:
        hot = math.ceil(HOT_ITEMS * k)
        if hot >= k:
            items = rng.integers(1, k, endpoint=True, size=horizon)
        else:
            take_hot = rng.random(horizon) < HOT_SHARE
            hot_picks = rng.integers(1, hot, endpoint=True, size=horizon)
            cold_picks = rng.integers(hot + 1, k, endpoint=True, size=horizon)
            items = np.where(take_hot, hot_picks, cold_picks)
    if cfg.multi_unit:
        amounts = rng.integers(1, cfg.amount_max, endpoint=True, size=horizon)
    else:
        amounts = np.ones(horizon, dtype=np.int64)
    events = tuple(
        DemandEvent(t, int(item), int(amount))
        for t, (item, amount) in enumerate(zip(items, amounts), start=1)
    )
    return DemandSequence(events, horizon)


def gen_prediction(z: TotalDemand, cfg: PredictorConfig) -> Prediction:
    """Perturb actual totals into a prediction; deterministic given cfg.seed."""
    k = len(z.per_item)
    if cfg.noise_halfwidth:
        rng = _rng(cfg.seed)
        noise = rng.integers(
            -cfg.noise_halfwidth, cfg.noise_halfwidth, endpoint=True, size=k
        )
    else:
        noise = np.zeros(k, dtype=np.int64)
    return Prediction(
        tuple(max(0, zk + cfg.bias + int(u)) for zk, u in zip(z.per_item, noise))
    )


TRACE_HEADER = ("t", "item", "amount")
PREDICTION_HEADER = ("item", "y")


def write_trace(seq: DemandSequence, path) -> None:
    """Write a sequence as a trace CSV; slots without demand are omitted."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(TRACE_HEADER)
        for ev in seq.events:
            if ev.item > 0:
                writer.writerow((ev.slot, ev.item, ev.amount))


def _parse_int(field: str, name: str, line_no: int) -> int:
    try:
        return int(field)
    except ValueError:
        raise TraceError(
            f"line {line_no}: {name} must be an integer, got {field!r}"
        ) from None


def load_trace(path, prices: PriceConfig) -> DemandSequence:
    """Parse a trace CSV into a dense sequence; horizon = largest slot seen."""
    demands: dict[int, tuple[int, int]] = {}
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise TraceError("line 1: missing header 't,item,amount'") from None
        if tuple(h.strip() for h in header) != TRACE_HEADER:
            raise TraceError(
                f"line 1: expected header 't,item,amount', got {','.join(header)!r}"
            )
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise TraceError(
                    f"line {line_no}: expected 3 fields, got {len(row)}"
                )
            slot = _parse_int(row[0], "t", line_no)
            item = _parse_int(row[1], "item", line_no)
            amount = _parse_int(row[2], "amount", line_no)
            if slot < 1:
                raise TraceError(f"line {line_no}: t must be >= 1, got {slot}")
            if not 1 <= item <= prices.num_items:
                raise TraceError(
                    f"line {line_no}: item {item} out of range "
                    f"1..{prices.num_items}"
                )
            if amount < 1:
                raise TraceError(
                    f"line {line_no}: amount must be >= 1 "
                    "(empty slots are implicit)"
                )
            if slot in demands:
                raise TraceError(f"line {line_no}: duplicate slot {slot}")
            demands[slot] = (item, amount)
    horizon = max(demands) if demands else 0
    events = tuple(
        DemandEvent(t, *demands.get(t, (0, 0))) for t in range(1, horizon + 1)
    )
    return DemandSequence(events, horizon)


def write_prediction(pred: Prediction, path) -> None:
    """Write a prediction as a CSV with one row per item."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(PREDICTION_HEADER)
        for item, y in enumerate(pred.per_item, start=1):
            writer.writerow((item, y))


def load_prediction(path, prices: PriceConfig) -> Prediction:
    """Parse a prediction CSV; every item 1..K must appear exactly once."""
    values: dict[int, int] = {}
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise TraceError("line 1: missing header 'item,y'") from None
        if tuple(h.strip() for h in header) != PREDICTION_HEADER:
            raise TraceError(
                f"line 1: expected header 'item,y', got {','.join(header)!r}"
            )
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2:
                raise TraceError(
                    f"line {line_no}: expected 2 fields, got {len(row)}"
                )
            item = _parse_int(row[0], "item", line_no)
            y = _parse_int(row[1], "y", line_no)
            if not 1 <= item <= prices.num_items:
                raise TraceError(
                    f"line {line_no}: item {item} out of range "
                    f"1..{prices.num_items}"
                )
            if y < 0:
                raise TraceError(f"line {line_no}: y must be >= 0, got {y}")
            if item in values:
                raise TraceError(f"line {line_no}: duplicate item {item}")
            values[item] = y
    missing = [i for i in range(1, prices.num_items + 1) if i not in values]
    if missing:
        raise TraceError(f"missing predictions for items {missing}")
    return Prediction(tuple(values[i] for i in range(1, prices.num_items + 1)))
