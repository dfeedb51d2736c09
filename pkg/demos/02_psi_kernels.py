"""The convolution kernels psi^(k) and their smooth surrogate.

psi^(k) is a periodised uniform B-spline with knot spacing gamma; its value
at gamma*N + k*delta weights the main term for sums of k Beatty primes.

Run:  python3 demos/02_psi_kernels.py
"""

import math

import numpy as np

from bgold import (psi_conv_build, psi_conv_min, sharp_lower_bound, smoothed_build,
                   truncated_series_grid)

# %% Shape for a few kappa at gamma = 1/sqrt(2)
gamma = 1 / math.sqrt(2)
x = np.linspace(0, 1, 11)
for kappa in range(1, 5):
    p = psi_conv_build(kappa, gamma)
    print(f"kappa={kappa}", np.array2string(p(x), precision=4, suppress_small=True))

# %% Below the critical kappa the kernel vanishes on a whole interval;
#    at kappa = ceil(1/gamma) it is bounded away from zero
for gamma in [0.3, 0.4, 2 / 3, 0.9]:
    crit = math.ceil(1 / gamma)
    below = psi_conv_min(crit - 1, gamma) if crit > 1 else None
    at = psi_conv_min(crit, gamma)
    print(f"gamma={gamma:.4f}  critical kappa {crit}:  min {at.value:.6g} at {at.argmin:.6f}, "
          f"closed form {sharp_lower_bound(crit, gamma):.6g}"
          + (f";  kappa={crit - 1} degenerate={below.degenerate}" if below else ""))

# %% Trapezoid mollifier and its truncated Fourier series
gamma = 1 / math.sqrt(2)
for delta, K in [(1e-2, 10**3), (1e-3, 10**4)]:
    ind = smoothed_build(gamma, delta, K)
    grid, series = truncated_series_grid(ind, K, 2, 1 << 18)
    err = np.max(np.abs(series - psi_conv_build(2, gamma)(grid)))
    print(f"delta={delta:g} K={K}: sup|Psi_K^(2) - psi^(2)| = {err:.2e}, "
          f"delta + 1/(K delta) = {delta + 1 / (K * delta):.2e}")
