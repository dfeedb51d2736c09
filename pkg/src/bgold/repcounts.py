"""Representation counts of N as a sum of kappa Beatty primes (or prime powers).

G_kappa(N) = sum over ordered n_1 + ... + n_kappa = N, all n_i in B, of
Lambda(n_1)...Lambda(n_kappa);  R_kappa(N) counts the ordered tuples of primes.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .beatty import BeattyConfig, contains, membership_mask
from .errors import BadArguments, CapacityError
from .irrational import frac_linear_array
from .mangoldt import LambdaTable
from .psi import PiecewisePoly
from .singular import SingularValue

BULK_BUDGET = {2: 2_000_000, 3: 500_000, 4: 100_000}
NAIVE_BUDGET = {2: 1_000_000, 3: 50_000, 4: 5_000}
# direct convolution below this length, FFT above
_DIRECT_LEN = 256


@dataclass(frozen=True, eq=False)
class WeightedIndicator:
    x_max: int
    weights: np.ndarray   # weights[n] = Lambda(n) [n in B], n = 0..x_max


@dataclass(frozen=True, eq=False)
class RepCountTable:
    kappa: int
    x_max: int
    counts: np.ndarray    # counts[N], N = 0..x_max
    mode: str             # "lambda-weighted" or "prime-only"


def _check(kappa: int, x_max: int, budget: dict, what: str) -> tuple[int, int]:
    kappa, x_max = int(kappa), int(x_max)
    if kappa not in budget:
        raise BadArguments(f"kappa must be one of {sorted(budget)}")
    if x_max > budget[kappa]:
        raise CapacityError(f"{what}: x_max={x_max} exceeds the kappa={kappa} budget "
                            f"{budget[kappa]}")
    return kappa, x_max


def check_budget(kappa: int, x_max: int) -> None:
    """Raise CapacityError if a bulk run of this size is beyond the budget."""
    _check(kappa, x_max, BULK_BUDGET, "bulk counts")


def weighted_indicator(cfg: BeattyConfig, table: LambdaTable, x_max: int | None = None,
                       prime_only: bool = False) -> WeightedIndicator:
    """Lambda(n) (or 1 on primes when prime_only) restricted to B, up to x_max."""
    x_max = table.x_max if x_max is None else int(x_max)
    if x_max > table.x_max:
        raise BadArguments(f"x_max={x_max} beyond the sieve table ({table.x_max})")
    mask = membership_mask(cfg, x_max)
    base = table.is_prime[:x_max + 1].astype(float) if prime_only else table.lam[:x_max + 1]
    return WeightedIndicator(x_max, np.where(mask, base, 0.0))


# -- naive oracle -------------------------------------------------------------

@lru_cache(maxsize=32)
def _naive_weights(cfg: BeattyConfig, table: LambdaTable, top: int) -> np.ndarray:
    """Weights on 0..top from the exact membership test (independent of the bulk path)."""
    w = np.zeros(top + 1)
    for n in np.flatnonzero(table.lam[:top + 1]):
        if contains(cfg, int(n)):
            w[n] = table.lam[n]
    return w


def _naive_rec(w: np.ndarray, support: np.ndarray, k: int, n: int) -> float:
    if n < 0:
        return 0.0
    if k == 1:
        return float(w[n])
    s = support[support <= n]
    if k == 2:
        return math.fsum(w[s] * w[n - s])
    return math.fsum(w[a] * _naive_rec(w, support, k - 1, n - int(a)) for a in s)


def gk_naive(cfg: BeattyConfig, kappa: int, n: int, table: LambdaTable) -> float:
    """G_kappa(n) by explicit enumeration of ordered compositions over the support."""
    kappa, n = _check(kappa, n, NAIVE_BUDGET, "gk_naive")
    if n > table.x_max:
        raise BadArguments(f"n={n} beyond the sieve table ({table.x_max})")
    if n < 2 * kappa:
        return 0.0
    # round the cache key up so consecutive calls share one weight array
    top = min(table.x_max, 1 << max(n - 1, 1).bit_length())
    w = _naive_weights(cfg, table, top)
    return _naive_rec(w, np.flatnonzero(w), kappa, n)


# -- bulk convolution -----------------------------------------------------------

def _power_prefix(w: np.ndarray, kappa: int, length: int) -> np.ndarray:
    """First ``length`` entries of the kappa-fold self-convolution of w[:length]."""
    a = w[:length]
    if length <= _DIRECT_LEN:
        out = a.copy()
        for _ in range(kappa - 1):
            out = np.convolve(out, a)[:length]
        return out
    size = 1 << (kappa * length - 1).bit_length()   # no wraparound
    f = np.fft.rfft(a, size)
    return np.fft.irfft(f ** kappa, size)[:length]


def self_convolution(w: np.ndarray, kappa: int) -> np.ndarray:
    """kappa-fold self-convolution of w, truncated to len(w).

    Output ranges (L/2, L] are taken from a convolution of the prefix w[:L+1]
    only, so FFT rounding at index N is relative to the mass that can reach N,
    not to the global maximum.
    """
    n = len(w)
    out = np.zeros(n)
    lo = 0
    length = min(n, _DIRECT_LEN)
    while True:
        out[lo:length] = _power_prefix(w, kappa, length)[lo:length]
        if length == n:
            break
        lo = length
        length = min(n, 2 * length)
    return out


def _bulk(weights: np.ndarray, kappa: int) -> np.ndarray:
    counts = self_convolution(weights, kappa)
    counts[:2 * kappa] = 0.0
    return counts


def gk_bulk(cfg: BeattyConfig, kappa: int, x_max: int, table: LambdaTable) -> RepCountTable:
    """G_kappa(N) for every N <= x_max by FFT convolution of the weighted indicator."""
    kappa, x_max = _check(kappa, x_max, BULK_BUDGET, "gk_bulk")
    wi = weighted_indicator(cfg, table, x_max)
    counts = _bulk(wi.weights, kappa)
    # any nonzero G_kappa is at least (log 2)^kappa; smaller values are rounding noise
    counts[counts < 0.5 * math.log(2) ** kappa] = 0.0
    return RepCountTable(kappa, x_max, counts, "lambda-weighted")


def rk_prime_count(cfg: BeattyConfig, kappa: int, x_max: int, table: LambdaTable
                   ) -> RepCountTable:
    """Number of ordered kappa-tuples of primes in B summing to N, N <= x_max."""
    kappa, x_max = _check(kappa, x_max, BULK_BUDGET, "rk_prime_count")
    wi = weighted_indicator(cfg, table, x_max, prime_only=True)
    counts = np.rint(_bulk(wi.weights, kappa)).astype(np.int64)
    return RepCountTable(kappa, x_max, counts, "prime-only")


# -- main term and witness ----------------------------------------------------

def _shifted(cfg: BeattyConfig, n, shift: Fraction):
    """Integer numerators and common denominator of n + shift."""
    n = np.asarray(n, dtype=np.int64)
    den = shift.denominator
    return n.astype(object) * den + shift.numerator, den


def main_term_array(cfg: BeattyConfig, kappa: int, ns, poly: PiecewisePoly,
                    sing_values) -> np.ndarray:
    """psi^(k)({gamma n + k delta}) * S_k(n) * n^(k-1)/(k-1)! for an array of n."""
    ns = np.asarray(ns, dtype=np.int64)
    if ns.size == 0:
        return np.zeros(0)
    # gamma*n + kappa*delta = gamma * (n + kappa*(1 - beta))
    num, den = _shifted(cfg, ns, kappa * (1 - cfg.beta))
    _, frac, _ = frac_linear_array(cfg.gamma, num, den, 0)
    psi = np.asarray(poly(frac), dtype=float)
    nf = ns.astype(float)
    return psi * np.asarray(sing_values, dtype=float) * nf ** (kappa - 1) / math.factorial(kappa - 1)


def main_term(cfg: BeattyConfig, kappa: int, n: int, poly: PiecewisePoly,
              sing: SingularValue) -> float:
    if poly.kappa != kappa or sing.kappa != kappa or sing.n != n:
        raise BadArguments("poly / singular value do not match (kappa, n)")
    return float(main_term_array(cfg, kappa, [n], poly, [sing.value])[0])


def no_representation_witness(cfg: BeattyConfig, kappa: int, n: int) -> bool:
    """True iff {(n - kappa*beta)/alpha} lies in (0, 1 - kappa/alpha), decided exactly."""
    kappa, n = int(kappa), int(n)
    g = cfg.gamma
    if g.sign(kappa, -1) >= 0:
        return False                                   # alpha <= kappa: empty interval
    t = n - kappa * cfg.beta
    g.check_multiplier(abs(t) + kappa)
    k = g.floor_linear(t)
    # frac = gamma*t - k > 0  and  frac < 1 - kappa*gamma
    return g.sign(t, -k) > 0 and g.sign(t + kappa, -k - 1) < 0


def witness_mask(cfg: BeattyConfig, kappa: int, x_max: int) -> np.ndarray:
    """Vectorised :func:`no_representation_witness` for n = 0..x_max (n = 0 set False)."""
    kappa, x_max = int(kappa), int(x_max)
    out = np.zeros(x_max + 1, dtype=bool)
    g = cfg.gamma
    if g.sign(kappa, -1) >= 0 or x_max < 1:
        return out
    ns = np.arange(1, x_max + 1)
    num, den = _shifted(cfg, ns, -kappa * cfg.beta)
    _, frac, radius = frac_linear_array(g, num, den, 0)
    width = 1 - kappa * float(g)
    out[1:] = (frac > 0) & (frac < width)
    unsure = (frac <= radius) | (frac >= 1 - radius) | (np.abs(frac - width) <= radius + 1e-15)
    for i in np.flatnonzero(unsure):
        out[i + 1] = no_representation_witness(cfg, kappa, int(ns[i]))
    return out


def dump_csv(path, kappa: int, g: RepCountTable, r: RepCountTable, main: np.ndarray) -> None:
    """Rows N = kappa (mod 2): N,G_kappa,R_kappa,main_term,rel_err."""
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow(["N", "G_kappa", "R_kappa", "main_term", "rel_err"])
        for n in range(kappa % 2, g.x_max + 1, 2):
            if n < 1:
                continue
            m = main[n]
            rel = abs(g.counts[n] - m) / max(m, 1e-9)
            wr.writerow([n, f"{g.counts[n]:.12g}", int(r.counts[n]), f"{m:.12g}", f"{rel:.12g}"])
