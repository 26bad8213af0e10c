"""Cost model basics: demands, payment decisions, and the offline optimum.

A user faces per-slot demands for K items. Each demand is covered by renting
(1 per unit), buying that item outright (C_s, covers it from then on), or
buying the combo (C_c, covers everything from then on). This script prices a
few hand-written decision sheets on one small instance and compares them with
the offline optimum.
"""

from skirental import (
    DecisionRecord,
    DemandSequence,
    PriceConfig,
    brute_force_opt,
    check_feasible,
    evaluate_cost,
    opt_offline,
    total_demand,
)

prices = PriceConfig(num_items=3, single_price=4, combo_price=9)
print(f"prices: K={prices.num_items}, C_s={prices.single_price}, "
      f"C_c={prices.combo_price}")

# item 1 is demanded three times, item 2 twice, item 3 once
seq = DemandSequence.from_pairs(
    [(1, 2), (2, 1), (1, 3), (3, 1), (1, 1), (2, 2)]
)
z = total_demand(seq, prices)
print(f"demands per slot: {seq.pairs()}")
print(f"totals per item:  {z.per_item}")

plans = {
    "rent everything": DecisionRecord(
        rent_flags=(True,) * 6, single_times=(None, None, None), combo_time=None
    ),
    "buy item 1 at its first demand": DecisionRecord(
        rent_flags=(False, True, False, True, False, True),
        single_times=(1, None, None),
        combo_time=None,
    ),
    "combo at slot 3": DecisionRecord(
        rent_flags=(True, True, False, False, False, False),
        single_times=(None, None, None),
        combo_time=3,
    ),
}

for name, record in plans.items():
    cost = evaluate_cost(seq, record, prices)
    feasible = check_feasible(seq, record)
    print(f"\n{name}")
    print(f"  rent={cost.rent_cost} single={cost.single_cost} "
          f"combo={cost.combo_cost} total={cost.total} feasible={feasible}")

# the closed-form optimum: buy the combo, or treat each item independently
best = opt_offline(z, prices)
print(f"\noffline optimum (closed form):  {best}")
print(f"offline optimum (brute force):  {brute_force_opt(seq, prices)}")
