"""Why the wild bootstrap is needed for time series.

Generates mutually independent AR(1) triples (the null is true), tests them
with the Lancaster procedure under both bootstraps, and tabulates false
positive rates.  Shuffling indices destroys temporal structure, so the
permutation null is too tight and over-rejects as the autocorrelation grows;
the wild bootstrap keeps the rate at or below the nominal level.  The effect
is mild at a=0.5 and dramatic at a=0.9.

Reduced scale so it finishes in about a minute; raise --reps/--n for sharper
rates.  Run with:  python3 demos/wild_vs_permutation_fpr.py
"""

import argparse

import lancaster as lc

parser = argparse.ArgumentParser()
parser.add_argument("--n", type=int, default=300)
parser.add_argument("--reps", type=int, default=60)
parser.add_argument("--bootstraps", type=int, default=100)
parser.add_argument("--seed", type=int, default=7)
args = parser.parse_args()

spec = lc.ExperimentSpec(
    experiment="fpr_study",
    grid=(0.1, 0.5, 0.9),
    n=args.n,
    replications=args.reps,
    n_bootstrap=args.bootstraps,
    seed=args.seed,
)
print(f"running {args.reps} replications per coefficient at n={args.n} ...")
rows = lc.run_fpr_study(spec)

print()
print(f"{'a':>5} {'method':>12} {'correction':>16} {'false positive rate':>20}")
for row in rows:
    print(
        f"{row.coefficient:>5} {row.method:>12} {row.correction:>16} "
        f"{row.rejection_rate:>20.3f}"
    )

lc.emit_results(rows, "csv", "fpr_demo.csv")
lc.emit_plot(rows, "fpr_demo.svg")
print()
print("wrote fpr_demo.csv and fpr_demo.svg")
print("expected shape: wild stays at or below 0.05-ish everywhere, while the")
print("permutation rate climbs with a and is far above alpha by a=0.9.")
