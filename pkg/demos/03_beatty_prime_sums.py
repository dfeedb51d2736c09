"""Counting representations of N as sums of Beatty primes.

Run:  python3 demos/03_beatty_prime_sums.py   (about ten seconds)
"""

import math
import warnings

import numpy as np

from bgold import BeattyConfig, build_tables, euler_product
from bgold.experiments import compare, density

table = build_tables(200_000)

# %% Three primes from B(sqrt 2, 0): weighted counts against the predicted main term
res = compare(BeattyConfig.from_strings("sqrt:2"), 3, 100_000, table=table)
print("kappa=3, alpha=sqrt 2: median / 90th percentile relative error per dyadic window")
for w in res.windows:
    if w.lo >= 1024:
        print(f"  [{w.lo:>6d}, {w.hi:>6d}]  {w.median_rel_err:.4f}  {w.p90_rel_err:.4f}")
print("rows with rel_err > 0.5:", res.outliers)

# %% When alpha > kappa, a fixed fraction 1 - kappa/alpha of the parity class has no
#    representation at all, and the fractional-part witness finds them
for label, kappa in [("pi", 3), ("e", 2), ("sqrt:17", 3)]:
    cfg = BeattyConfig.from_strings(label)
    s = density(cfg, kappa, 100_000, table=table)
    print(f"alpha={label:8s} kappa={kappa}: witnesses {s.witness_fraction:.4f}, "
          f"no representation {s.no_rep_fraction:.4f}, predicted {s.predicted_witness_fraction:.4f}")

# %% With alpha < kappa every large N of the right parity is hit, for irrational alpha;
#    a rational alpha such as 3/2 misses whole residue classes
for label in ["golden", "sqrt:3", "dec:1.5@10^9"]:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        s = density(BeattyConfig.from_strings(label), 2, 100_000, table=table)
    print(f"alpha={label:13s} kappa=2: fraction of even N <= 1e5 without a representation "
          f"{s.no_rep_fraction:.4f}")

# %% The singular series: zero off parity, bounded for kappa >= 3
print("S_2(N) for N = 2..20:", [round(euler_product(2, n).value, 4) for n in range(2, 21)])
print("S_3(N) for N = 3..21 (odd):", [round(euler_product(3, n).value, 4) for n in range(3, 22, 2)])
