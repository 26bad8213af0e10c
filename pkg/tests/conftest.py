"""Shared instance builders for the test suite (all seeded, no global state)."""

import random

import pytest

from skirental import DemandSequence, PriceConfig, Prediction, TotalDemand


def random_prices(rng: random.Random, k_max: int = 6) -> PriceConfig:
    k = rng.randint(2, k_max)
    c_s = rng.randint(2, 12)
    c_c = rng.randint(c_s + 1, k * c_s - 1)
    return PriceConfig(k, c_s, c_c)


def random_sequence(
    rng: random.Random,
    num_items: int,
    max_horizon: int = 25,
    max_amount: int = 6,
    allow_empty_slots: bool = True,
) -> DemandSequence:
    horizon = rng.randint(0, max_horizon)
    pairs = []
    for _ in range(horizon):
        item = rng.randint(0 if allow_empty_slots else 1, num_items)
        pairs.append((item, rng.randint(1, max_amount) if item else 0))
    return DemandSequence.from_pairs(pairs)


def random_totals(rng: random.Random, prices: PriceConfig, cap=None) -> TotalDemand:
    cap = cap if cap is not None else 2 * prices.single_price + 3
    return TotalDemand(
        tuple(rng.randint(0, cap) for _ in range(prices.num_items))
    )


def random_prediction(rng: random.Random, prices: PriceConfig) -> Prediction:
    cap = 2 * prices.single_price + 3
    return Prediction(
        tuple(rng.randint(0, cap) for _ in range(prices.num_items))
    )


def realize(rng: random.Random, z: TotalDemand, max_amount: int = 6) -> DemandSequence:
    """Random demand sequence whose totals equal z (random chunking + order)."""
    chunks = []
    for item, remaining in enumerate(z.per_item, start=1):
        while remaining > 0:
            take = rng.randint(1, min(max_amount, remaining))
            chunks.append((item, take))
            remaining -= take
    rng.shuffle(chunks)
    return DemandSequence.from_pairs(chunks)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
