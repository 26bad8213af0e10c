"""Trace files: generate a workload, persist it, reload it, replay it.

The trace CSV format is ``t,item,amount`` with 1-based slots and items;
slots absent from the file carry no demand. Predictions persist as
``item,y``. The same files drive the command line (``skirental run``).
"""

import tempfile
from pathlib import Path

from skirental import (
    GenConfig,
    PredictorConfig,
    PriceConfig,
    ThresholdSet,
    evaluate_cost,
    gen_prediction,
    gen_sequence,
    load_prediction,
    load_trace,
    opt_offline,
    rdtsr_simulate,
    total_demand,
    write_prediction,
    write_trace,
)

prices = PriceConfig(num_items=6, single_price=9, combo_price=30)
cfg = GenConfig(kind="long_tailed", num_items=6, multi_unit=True, seed=2)
seq = gen_sequence(cfg, prices)
print(f"generated {seq.horizon} slots; first five: {seq.pairs()[:5]}")

work = Path(tempfile.mkdtemp())
trace_path = work / "workload.csv"
write_trace(seq, trace_path)
print(f"\n{trace_path} starts with:")
print("\n".join(trace_path.read_text().splitlines()[:4]))

reloaded = load_trace(trace_path, prices)
assert reloaded == seq
print("\nreload round-trips exactly")

z = total_demand(reloaded, prices)
pred_path = work / "forecast.csv"
write_prediction(gen_prediction(z, PredictorConfig(bias=-5, seed=8)), pred_path)
forecast = load_prediction(pred_path, prices)
print(f"forecast (bias -5): {forecast.per_item} vs totals {z.per_item}")

record = rdtsr_simulate(reloaded, prices, ThresholdSet.shared(9, 30, 6))
cost = evaluate_cost(reloaded, record, prices)
print(f"\nrobust policy on the reloaded trace: total={cost.total}, "
      f"opt={opt_offline(z, prices)}")
print(f"equivalent command line:\n  skirental run --trace {trace_path} "
      f"--algo rdtsr --cs 9 --cc 30 --k 6")
