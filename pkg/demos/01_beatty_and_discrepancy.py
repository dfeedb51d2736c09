"""Beatty sequences, their fractional-part test, and equidistribution.

Run:  python3 demos/01_beatty_and_discrepancy.py
"""

import numpy as np

from bgold import BeattyConfig, contains, generate_up_to, parse_spec
from bgold.experiments import discrepancy_ladder
from bgold.irrational import cf_expand, type_exponent_estimate

# %% Two ways to decide membership
cfg = BeattyConfig.from_strings("sqrt:2", "1/3")
seq = generate_up_to(cfg, 60)
print("B(sqrt 2, 1/3) up to 60:", seq.tolist())
print("same set from the fractional-part test:",
      [n for n in range(1, 61) if contains(cfg, n)] == seq.tolist())

# gaps are floor(alpha) or ceil(alpha)
print("gaps:", sorted(set(np.diff(generate_up_to(cfg, 10**5)).tolist())))

# %% Continued fractions and a rough type estimate
for label in ["sqrt:2", "golden", "pi", "e"]:
    spec = parse_spec(label)
    coeffs = [a for a, _ in cf_expand(spec, 10)]
    print(f"{label:7s} cf {coeffs}  type estimate {type_exponent_estimate(spec, 10**8):.3f}")

# %% Star discrepancy of {gamma n} falls like M^-1 for badly approximable gamma
for label in ["golden-inverse", "pi"]:
    gamma = parse_spec(label) if label != "pi" else parse_spec("pi").reciprocal()
    print(label)
    for m, d, r in discrepancy_ladder(gamma, 0, [10**k for k in range(2, 7)]):
        print(f"  M={m:>8d}  D*={d:.3e}  log D*/log M = {r:.3f}")
