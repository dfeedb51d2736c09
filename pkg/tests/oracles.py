"""Independent reference computations used by the tests.

Nothing here imports the library's algorithms: these are the slow, obvious
versions (high-precision floats, explicit enumeration, plain quadrature).
"""

from __future__ import annotations

import itertools
import math

import mpmath
import numpy as np

mpmath.mp.dps = 60


def mp_value(label: str):
    """High-precision value for the number specs used in tests."""
    if label.startswith("sqrt:"):
        return mpmath.sqrt(int(label[5:]))
    if label == "pi":
        return +mpmath.pi
    if label in ("golden", "phi"):
        return (1 + mpmath.sqrt(5)) / 2
    if label == "e":
        return +mpmath.e
    raise ValueError(label)


def beatty_set(alpha, beta, x_max: int) -> set[int]:
    """{floor(alpha*m + beta)} in [1, x_max] by brute force in 60-digit arithmetic."""
    out = set()
    m = int(mpmath.floor((1 - beta) / alpha)) - 3
    while True:
        n = int(mpmath.floor(alpha * m + beta))
        if n > x_max:
            return out
        if n >= 1:
            out.add(n)
        m += 1


def frac(x) -> float:
    return float(x - mpmath.floor(x))


def star_discrepancy_brute(points) -> float:
    """sup over d of |#{x < d}/M - d| using both one-sided limits at every point."""
    x = list(points)
    m = len(x)
    best = 0.0
    for d in sorted(set(x) | {1.0}):
        below = sum(1 for v in x if v < d)
        upto = sum(1 for v in x if v <= d)
        best = max(best, abs(below / m - d), abs(upto / m - d) if d < 1 else 0.0)
    return best


def extreme_discrepancy_brute(points) -> float:
    """sup over subintervals [c, d) of |count/M - (d - c)|, endpoints at sample points
    (each taken as the point itself or just after it) and at 0 and 1."""
    x = list(points)
    m = len(x)
    ends = [(0.0, False)] + [(v, s) for v in x for s in (False, True)] + [(1.0, False)]
    best = 0.0
    for (c, c_after), (d, d_after) in itertools.product(ends, ends):
        if d < c or (d == c and c_after and not d_after):
            continue
        cnt = 0
        for v in x:
            left = v > c if c_after else v >= c
            right = v <= d if d_after else v < d
            cnt += left and right
        best = max(best, abs(cnt / m - (d - c)))
    return best


def psi_quadrature(kappa: int, gamma: float, n_grid: int = 10**6) -> tuple[np.ndarray, np.ndarray]:
    """psi^(kappa) on the grid j/n_grid by repeated periodic trapezoid quadrature.

    psi^(k)(x) = int_0^1 psi^(k-1)(x - y) psi(y) dy; on a uniform periodic grid
    the trapezoid rule is a cyclic convolution.  The indicator samples are
    averaged over their grid cell so the two jumps do not cost O(1/n_grid).
    """
    h = 1.0 / n_grid
    y = np.arange(n_grid) * h
    a, b = y - h / 2, y + h / 2
    f1 = np.zeros(n_grid)
    for s in (-1.0, 0.0, 1.0):
        f1 += np.clip(np.minimum(b, gamma + s) - np.maximum(a, s), 0.0, None)
    f1 /= h
    spectrum = np.fft.rfft(f1)
    f = f1
    for _ in range(kappa - 1):
        f = np.fft.irfft(np.fft.rfft(f) * spectrum, n=n_grid) * h
    return y, f


def mobius(n: int) -> int:
    out, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    return -out if n > 1 else out


def totient(n: int) -> int:
    out, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            out -= out // p
            while m % p == 0:
                m //= p
        p += 1
    return out - out // m if m > 1 else out


def mangoldt(n: int) -> float:
    for p in range(2, n + 1):
        if n % p == 0:
            while n % p == 0:
                n //= p
            return math.log(p) if n == 1 else 0.0
    return 0.0


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


def compositions_sum(weights: dict[int, float], kappa: int, n: int) -> float:
    """Sum over ordered kappa-tuples from the support of ``weights`` adding to n."""
    keys = sorted(k for k in weights if k <= n)
    total = []
    for tup in itertools.product(keys, repeat=kappa - 1):
        last = n - sum(tup)
        if last in weights:
            total.append(math.prod(weights[t] for t in tup) * weights[last])
    return math.fsum(total)
