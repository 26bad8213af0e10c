"""Experiment sweeps and figures, end to end.

Runs a small combo-price sweep (worst and mean cost ratios per policy) and a
prediction-bias sweep (average ratio per trust setting), writes the results
CSV/JSON, then renders both figure kinds with the companion plots package.
Output lands in demos/output/.
"""

from fractions import Fraction
from pathlib import Path

from skirental import (
    EnsembleSpec,
    PriceConfig,
    run_cc_sweep,
    run_theta_bias_sweep,
    write_results_csv,
    write_results_json,
)
from skirental_plots import FigureSpec, render

out_dir = Path(__file__).parent / "output"
out_dir.mkdir(exist_ok=True)

# worst-case ratio against the combo price, robust policy vs baseline
ensemble = EnsembleSpec(count=1500, num_items=6, seed=7, multi_unit=True)
results = run_cc_sweep(9, 6, range(15, 41), ensemble, jobs=2)
cc_csv = out_dir / "cc_sweep.csv"
write_results_csv(results, cc_csv)
write_results_json(results, out_dir / "cc_sweep.json",
                   meta={"seed": 7, "count": 1500, "multi_unit": True})
print(f"wrote {cc_csv}")
for result in results[::5]:
    robust = result.per_algo["rdtsr"]
    baseline = result.per_algo["dtsr"]
    print(f"  C_c={result.axis_value}: robust CR={float(robust.empirical_cr):.3f} "
          f"(bound {float(robust.bound):.3f}), "
          f"baseline CR={float(baseline.empirical_cr):.3f}")

# average ratio against prediction bias, one curve per trust setting
prices = PriceConfig(6, 9, 30)
spec = EnsembleSpec(count=1000, num_items=6, seed=13)
thetas = [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)]
biases = list(range(-50, 21, 10))
theta_results = run_theta_bias_sweep(prices, thetas, biases, spec, noise=0, jobs=2)
theta_csv = out_dir / "theta_sweep.csv"
write_results_csv(theta_results, theta_csv)
print(f"wrote {theta_csv}")

for kind, source, name in (
    ("cr_vs_cc", cc_csv, "cr_vs_cc.svg"),
    ("ratio_vs_bias", theta_csv, "ratio_vs_bias.svg"),
):
    target = out_dir / name
    render(FigureSpec(str(source), kind, str(target)))
    print(f"rendered {target}")
