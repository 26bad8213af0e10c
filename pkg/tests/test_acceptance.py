"""Acceptance suite: one test per release criterion, exact tolerances.

Every check prints one ``ACCEPTANCE <name>: PASS/FAIL`` line; run with
``pytest tests/test_acceptance.py -v -s`` to see them live. All comparisons
on ratios and bounds are exact rational comparisons, no floating point.
"""

import random
import time
from contextlib import contextmanager
from fractions import Fraction

from skirental import (
    DemandSequence,
    EnsembleSpec,
    GenConfig,
    PredictorConfig,
    PriceConfig,
    Prediction,
    ThresholdSet,
    all_small_sequences,
    brute_force_opt,
    check_feasible,
    dtsr_simulate,
    evaluate_cost,
    ftp_simulate,
    gen_prediction,
    gen_sequence,
    is_standard,
    is_standard_la,
    ladtsr_cost_upper_bound,
    ladtsr_cr_bound,
    ladtsr_simulate,
    ladtsr_thresholds,
    opt_offline,
    prediction_error,
    rdtsr_cost_upper_bound,
    rdtsr_cr_bound,
    rdtsr_simulate,
    run_cc_sweep,
    run_theta_bias_sweep,
    standardize_ladtsr,
    standardize_rdtsr,
    subseed,
    total_demand,
)
from skirental.cli import main

from conftest import (
    random_prediction,
    random_prices,
    random_sequence,
    random_totals,
    realize,
)


@contextmanager
def criterion(name):
    start = time.time()
    try:
        yield
    except BaseException:
        print(f"\nACCEPTANCE {name}: FAIL")
        raise
    print(f"\nACCEPTANCE {name}: PASS ({time.time() - start:.1f}s)")


def simulate_cost(simulate, seq, prices, *args) -> int:
    record = simulate(seq, prices, *args)
    assert check_feasible(seq, record)
    return evaluate_cost(seq, record, prices).total


def test_robust_policy_empirical_bound():
    # C_s=9, K=6, thresholds (C_s, C_c), every C_c in 15..40, 10^4 mixed
    # sequences per mode; worst ratio <= 3 - 1/C_s - (1/C_c)(2 - 1/C_s),
    # exact comparison, in both unit and multi-unit modes.
    with criterion("robust-policy-empirical-bound"):
        start = time.time()
        for multi_unit in (False, True):
            ensemble = EnsembleSpec(
                count=10_000, num_items=6, seed=2024, multi_unit=multi_unit
            )
            results = run_cc_sweep(
                9, 6, range(15, 41), ensemble, algos=("rdtsr",), jobs=2
            )
            for result in results:
                stats = result.per_algo["rdtsr"]
                assert stats.count + stats.skipped == 10_000
                assert stats.empirical_cr <= stats.bound, (
                    multi_unit, result.axis_value, stats.empirical_cr
                )
        elapsed = time.time() - start
        print(f"  worst-case sweep over 2x10^4 sequences: {elapsed:.1f}s")
        assert elapsed < 120


def test_baseline_gap_reproduction():
    # one C_s-sized demand per item: the baseline buys K singles and never
    # the combo (ratio K*C_s/C_c = 6 > 3 - 1/C_s); the robust policy stays
    # within its bound and pays exactly 57 at K=6
    with criterion("baseline-gap-reproduction"):
        prices = PriceConfig(20, 9, 30)
        seq = DemandSequence.from_pairs([(k, 9) for k in range(1, 21)])
        thresholds = ThresholdSet.shared(9, 30, 20)
        opt = opt_offline(total_demand(seq, prices), prices)
        baseline = simulate_cost(dtsr_simulate, seq, prices, thresholds)
        assert Fraction(baseline, opt) == Fraction(20 * 9, 30) == 6
        assert Fraction(baseline, opt) > 3 - Fraction(1, 9)
        robust = simulate_cost(rdtsr_simulate, seq, prices, thresholds)
        assert Fraction(robust, opt) <= Fraction(763, 270)

        prices6 = PriceConfig(6, 9, 30)
        seq6 = DemandSequence.from_pairs([(k, 9) for k in range(1, 7)])
        cost6 = simulate_cost(
            rdtsr_simulate, seq6, prices6, ThresholdSet.shared(9, 30, 6)
        )
        assert cost6 == 57


def test_offline_oracle_equivalence():
    # formula == brute force on the full small grid and on 1000 random
    # instances at K=3-4; 100% agreement, exact
    with criterion("offline-oracle-equivalence"):
        for c_s, c_c in ((2, 3), (3, 5), (9, 12)):
            prices = PriceConfig(2, c_s, c_c)
            for seq in all_small_sequences(2, 4, 3):
                assert opt_offline(total_demand(seq, prices), prices) == \
                    brute_force_opt(seq, prices)
        rng = random.Random(3141)
        for _ in range(1000):
            k = rng.randint(3, 4)
            c_s = rng.randint(2, 9)
            c_c = rng.randint(c_s + 1, k * c_s - 1)
            prices = PriceConfig(k, c_s, c_c)
            seq = random_sequence(rng, k, max_horizon=8, max_amount=5)
            assert opt_offline(total_demand(seq, prices), prices) == \
                brute_force_opt(seq, prices)


def test_follow_prediction_error_bound():
    # FTP cost <= OPT + eta on 10^4 random (sequence, prediction) pairs
    # across random valid price configs; zero violations
    with criterion("follow-prediction-error-bound"):
        rng = random.Random(2718)
        for _ in range(10_000):
            prices = random_prices(rng)
            seq = random_sequence(rng, prices.num_items)
            pred = random_prediction(rng, prices)
            z = total_demand(seq, prices)
            _, eta = prediction_error(pred, z)
            cost = simulate_cost(ftp_simulate, seq, prices, pred)
            assert cost <= opt_offline(z, prices) + eta


def test_augmented_policy_per_instance_bounds():
    # for trust in {1/4, 1/2, 3/4} over 10^4 pairs with bias in -50..20:
    # ratio <= min(1+t+t^2 + ((1+2t)/(1-t)) eta/OPT, 1+1/t+1/t^3), exact;
    # with perfect predictions the ratio stays within 1+t+t^2
    with criterion("augmented-policy-per-instance-bounds"):
        thetas = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))
        rng = random.Random(1618)
        defaults = PriceConfig(6, 9, 30)
        for index in range(10_000):
            prices = defaults if index % 2 == 0 else random_prices(rng)
            seq = random_sequence(rng, prices.num_items, allow_empty_slots=False)
            z = total_demand(seq, prices)
            opt = opt_offline(z, prices)
            if opt == 0:
                continue
            bias = rng.randint(-50, 20)
            noise = rng.choice((0, 10))
            pred = gen_prediction(
                z, PredictorConfig(bias=bias, noise_halfwidth=noise,
                                   seed=subseed(1618, index))
            )
            _, eta = prediction_error(pred, z)
            perfect = Prediction(z.per_item)
            for theta in thetas:
                cost = simulate_cost(ladtsr_simulate, seq, prices, pred, theta)
                assert Fraction(cost, opt) <= ladtsr_cr_bound(theta, eta, opt)
                exact = simulate_cost(
                    ladtsr_simulate, seq, prices, perfect, theta
                )
                assert Fraction(exact, opt) <= 1 + theta + theta**2


def test_trust_endpoint_equivalences():
    # over 10^3 pairs: trust 1 reproduces the robust policy's total cost and
    # trust 0 reproduces the follow-the-prediction total cost, exactly
    with criterion("trust-endpoint-equivalences"):
        rng = random.Random(6022)
        for _ in range(1000):
            prices = random_prices(rng)
            seq = random_sequence(rng, prices.num_items)
            pred = random_prediction(rng, prices)
            shared = ThresholdSet.shared(
                prices.single_price, prices.combo_price, prices.num_items
            )
            assert simulate_cost(ladtsr_simulate, seq, prices, pred, Fraction(1)) \
                == simulate_cost(rdtsr_simulate, seq, prices, shared)
            assert simulate_cost(ladtsr_simulate, seq, prices, pred, Fraction(0)) \
                == simulate_cost(ftp_simulate, seq, prices, pred)


def test_ordering_invariance():
    # over 10^3 random totals with 10 random orderings each, the combo
    # decision of both threshold policies and the offline optimum are
    # identical across orderings
    with criterion("ordering-invariance"):
        rng = random.Random(1729)
        for _ in range(1000):
            prices = random_prices(rng)
            z = random_totals(rng, prices)
            shared = ThresholdSet.shared(
                prices.single_price, prices.combo_price, prices.num_items
            )
            pred = random_prediction(rng, prices)
            trust = rng.choice((Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)))
            combo_robust = set()
            combo_augmented = set()
            opts = set()
            for _ in range(10):
                seq = realize(rng, z)
                record = rdtsr_simulate(seq, prices, shared)
                combo_robust.add(record.combo_time is not None)
                augmented = ladtsr_simulate(seq, prices, pred, trust)
                combo_augmented.add(augmented.combo_time is not None)
                opts.add(opt_offline(total_demand(seq, prices), prices))
            assert len(combo_robust) == 1
            assert len(combo_augmented) == 1
            assert opts == {opt_offline(z, prices)}


def test_cost_bound_dominance_and_standardization():
    # over 10^3 random inputs: simulated cost <= cost upper bound for both
    # policies; U_CR never decreases under standardization when OPT > 0;
    # standard forms satisfy their predicates and are idempotent
    with criterion("cost-bound-dominance-and-standardization"):
        rng = random.Random(4669)
        checked = 0
        while checked < 1000:
            prices = random_prices(rng)
            z = random_totals(rng, prices)
            if opt_offline(z, prices) == 0:
                continue
            checked += 1
            lam_s = rng.randint(2, prices.single_price)
            lam_c = rng.randint(2, prices.combo_price)
            thresholds = ThresholdSet.shared(lam_s, lam_c, prices.num_items)
            pred = random_prediction(rng, prices)
            trust = rng.choice((Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)))
            seq = realize(rng, z)

            u_robust = rdtsr_cost_upper_bound(z, prices, thresholds)
            assert simulate_cost(rdtsr_simulate, seq, prices, thresholds) <= u_robust
            u_augmented = ladtsr_cost_upper_bound(z, prices, pred, trust)
            assert simulate_cost(ladtsr_simulate, seq, prices, pred, trust) \
                <= u_augmented

            std, _ = standardize_rdtsr(z, prices, thresholds)
            assert is_standard(std, prices, thresholds)
            assert standardize_rdtsr(std, prices, thresholds)[0] == std
            assert u_robust / opt_offline(z, prices) <= \
                rdtsr_cost_upper_bound(std, prices, thresholds) \
                / opt_offline(std, prices)

            std_la, _ = standardize_ladtsr(z, prices, pred, trust)
            assert is_standard_la(std_la, prices, pred, trust)
            assert standardize_ladtsr(std_la, prices, pred, trust)[0] == std_la
            assert u_augmented / opt_offline(z, prices) <= \
                ladtsr_cost_upper_bound(std_la, prices, pred, trust) \
                / opt_offline(std_la, prices)


def test_bias_sensitivity_shape():
    # with noiseless predictions, overestimation degrades the
    # follow-the-prediction average ratio by at least 1.2x, while the
    # robust rows are bitwise identical across all biases
    with criterion("bias-sensitivity-shape"):
        prices = PriceConfig(6, 9, 30)
        ensemble = EnsembleSpec(count=2000, num_items=6, seed=515)
        biases = [-50, -40, -30, -20, -10, 0, 10, 20]
        results = run_theta_bias_sweep(
            prices, [Fraction(0), Fraction(1)], biases, ensemble,
            noise=0, jobs=2,
        )
        by_bias = {r.axis_value: r.per_algo for r in results}
        ftp_at_zero = by_bias[0]["ladtsr(theta=0)[ftp]"].avg_ratio
        ftp_at_ten = by_bias[10]["ladtsr(theta=0)[ftp]"].avg_ratio
        assert ftp_at_zero == 1  # perfect prediction is optimal
        assert ftp_at_ten >= Fraction(12, 10) * ftp_at_zero
        robust_rows = [
            by_bias[bias]["ladtsr(theta=1)[rdtsr]"] for bias in biases
        ]
        assert all(row == robust_rows[0] for row in robust_rows[1:])


def test_sweep_determinism_across_jobs(tmp_path):
    # repeated sweep-cc with one seed and different --jobs values produces
    # byte-identical CSV files
    with criterion("sweep-determinism-across-jobs"):
        outputs = []
        for jobs, name in ((1, "jobs1.csv"), (2, "jobs2.csv")):
            path = tmp_path / name
            code = main([
                "sweep-cc", "--cc", "15:20", "--count", "300", "--seed", "11",
                "--jobs", str(jobs), "--out", str(path),
            ])
            assert code == 0
            outputs.append(path.read_bytes())
        assert outputs[0] == outputs[1]
        repeat = tmp_path / "repeat.csv"
        code = main([
            "sweep-cc", "--cc", "15:20", "--count", "300", "--seed", "11",
            "--jobs", "2", "--out", str(repeat),
        ])
        assert code == 0
        assert repeat.read_bytes() == outputs[0]
