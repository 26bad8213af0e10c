"""Predictions and the trust dial: consistency against robustness.

Follow-the-prediction (FTP) is optimal when the forecast is right and
unbounded when it is wrong. The learning-augmented policy interpolates: a
trust parameter in [0, 1] scales the purchase thresholds toward the
prediction's advice. Trust 0 is FTP, trust 1 ignores predictions entirely.
"""

from fractions import Fraction

from skirental import (
    EnsembleSpec,
    GenConfig,
    PredictorConfig,
    PriceConfig,
    Prediction,
    DemandSequence,
    evaluate_cost,
    ftp_simulate,
    gen_prediction,
    gen_sequence,
    ladtsr_cr_bound,
    ladtsr_simulate,
    opt_offline,
    prediction_error,
    subseed,
    total_demand,
)

prices = PriceConfig(num_items=2, single_price=9, combo_price=12)

# a confidently wrong forecast: item 1 overestimated, item 2 underestimated
seq = DemandSequence.from_pairs([(1, 10), (2, 100)])
pred = Prediction((10, 1))
z = total_demand(seq, prices)
_, eta = prediction_error(pred, z)
opt = opt_offline(z, prices)

cost_ftp = evaluate_cost(seq, ftp_simulate(seq, prices, pred), prices).total
print("wrong forecast:", pred.per_item, "actual totals:", z.per_item)
print(f"  FTP pays {cost_ftp} (opt {opt}); within its guarantee "
      f"opt + error = {opt} + {eta} = {opt + eta}")

for trust in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
    cost = evaluate_cost(
        seq, ladtsr_simulate(seq, prices, pred, trust), prices
    ).total
    bound = ladtsr_cr_bound(trust, eta, opt)
    print(f"  trust={trust}: pays {cost}, ratio {Fraction(cost, opt)} "
          f"<= bound {float(bound):.3f}")

# averaged over a seeded batch: low trust wins with good forecasts,
# high trust wins with bad ones
print("\naverage ratio over 500 generated sequences (K=6, C_s=9, C_c=30):")
prices6 = PriceConfig(6, 9, 30)
spec = EnsembleSpec(count=500, num_items=6, seed=99)
for bias in (0, 10):
    line = [f"bias={bias:+d}:"]
    for trust in (Fraction(0), Fraction(1, 2), Fraction(1)):
        total = Fraction(0)
        for i in range(spec.count):
            cfg = GenConfig(kind=spec.kind_for_index(i), num_items=6,
                            seed=subseed(99, i))
            s = gen_sequence(cfg, prices6)
            zt = total_demand(s, prices6)
            y = gen_prediction(zt, PredictorConfig(bias=bias))
            cost = evaluate_cost(
                s, ladtsr_simulate(s, prices6, y, trust), prices6
            ).total
            total += Fraction(cost, opt_offline(zt, prices6))
        line.append(f"trust={trust}: {float(total / spec.count):.3f}")
    print("  " + "  ".join(line))
print("(trust 0 is exactly FTP, trust 1 is exactly the robust policy)")
