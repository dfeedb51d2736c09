"""The singular series S_kappa(N): truncated Euler product and two series identities.

S_kappa(N) = prod_{p | N} (1 + (-1)^k/(p-1)^(k-1)) * prod_{p not| N} (1 + (-1)^(k+1)/(p-1)^k).

The p = 2 factor is 2 or 0 according to the parity of N - k, so S_kappa(N) = 0
exactly when N and k have different parity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BadArguments
from .mangoldt import simple_primes

MIN_CUTOFF = 100
DEFAULT_CUTOFF = 10**6


@dataclass(frozen=True)
class SingularValue:
    kappa: int
    n: int
    value: float
    tail_bound: float
    prime_cutoff: int


def _check_kappa(kappa) -> int:
    kappa = int(kappa)
    if kappa < 2:
        raise BadArguments("kappa must be at least 2")
    return kappa


def _factor_primes(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def _coprime_factor(kappa: int, p):
    """Factor for p not dividing N."""
    return 1 + (-1) ** (kappa + 1) / (np.asarray(p, dtype=float) - 1) ** kappa


def _divisor_factor(kappa: int, p):
    """Factor for p dividing N."""
    return 1 + (-1) ** kappa / (np.asarray(p, dtype=float) - 1) ** (kappa - 1)


def tail_bound(kappa: int, cutoff: int) -> float:
    """Relative bound exp(S) - 1 with S = 2 sum_{p > cutoff} (p-1)^-k.

    The 2 covers the negative factors, since |log(1 - y)| <= 2y for y <= 1/2;
    the prime sum is dominated by the integral (cutoff-1)^(1-k)/(k-1).
    """
    s = 2.0 * (cutoff - 1) ** (1 - kappa) / (kappa - 1)
    return math.expm1(s)


@lru_cache(maxsize=None)
def _odd_base(kappa: int, cutoff: int) -> float:
    """prod over odd p <= cutoff of the coprime factor."""
    p = simple_primes(cutoff)
    p = p[p > 2]
    return math.exp(math.fsum(np.log(_coprime_factor(kappa, p))))


@lru_cache(maxsize=1 << 16)
def _kernel_value(kappa: int, odd_primes: tuple[int, ...], parity_ok: bool, cutoff: int) -> float:
    if not parity_ok:
        return 0.0
    v = 2.0 * _odd_base(kappa, cutoff)
    for p in odd_primes:
        v *= float(_divisor_factor(kappa, p) / _coprime_factor(kappa, p))
    return v


def euler_product(kappa: int, n: int, prime_cutoff: int = DEFAULT_CUTOFF) -> SingularValue:
    """S_kappa(n) truncated at prime_cutoff, with a certified bound on the truncation error."""
    kappa = _check_kappa(kappa)
    n = int(n)
    cutoff = int(prime_cutoff)
    if n < 1:
        raise BadArguments("n must be positive")
    if cutoff < MIN_CUTOFF:
        raise BadArguments(f"prime_cutoff must be at least {MIN_CUTOFF}")
    primes = _factor_primes(n)
    if primes and primes[-1] > cutoff:
        raise BadArguments(f"cutoff too small: prime factor {primes[-1]} of {n} exceeds {cutoff}")
    parity_ok = (n - kappa) % 2 == 0
    odd = tuple(p for p in primes if p > 2)
    v = _kernel_value(kappa, odd, parity_ok, cutoff)
    return SingularValue(kappa, n, v, abs(v) * tail_bound(kappa, cutoff), cutoff)


def singular_series_table(kappa: int, x_max: int, prime_cutoff: int | None = None
                          ) -> tuple[np.ndarray, np.ndarray]:
    """(values, tail_bounds) for N = 0..x_max (index 0 unused, set to 0).

    The cutoff defaults to max(x_max, DEFAULT_CUTOFF) so that every prime
    factor of every N is inside the product.
    """
    kappa = _check_kappa(kappa)
    x_max = int(x_max)
    cutoff = max(x_max, DEFAULT_CUTOFF) if prime_cutoff is None else int(prime_cutoff)
    if cutoff < max(x_max, MIN_CUTOFF):
        raise BadArguments("prime_cutoff must be at least max(x_max, 100)")
    vals = np.ones(x_max + 1)
    for p in simple_primes(x_max):
        if p == 2:
            continue
        vals[p::p] *= float(_divisor_factor(kappa, p) / _coprime_factor(kappa, p))
    n = np.arange(x_max + 1)
    vals *= np.where((n - kappa) % 2 == 0, 2.0 * _odd_base(kappa, cutoff), 0.0)
    vals[0] = 0.0
    return vals, vals * tail_bound(kappa, cutoff)


# -- Dirichlet-series identities ---------------------------------------------

@lru_cache(maxsize=8)
def _arith(limit: int):
    """mu and phi for 0..limit (small sieve used only by the identities)."""
    from .mangoldt import build_tables
    t = build_tables(max(limit, 2))
    return t.mu.astype(np.int64), t.phi.astype(float), t


def _squarefree_divisors(primes) -> list[int]:
    divs = [1]
    for p in primes:
        divs += [d * p for d in divs]
    return divs


@lru_cache(maxsize=16)
def _multiple_sums(kappa: int, L: int) -> np.ndarray:
    """S_e = sum_{e | d <= L} mu(d)^(k+1) d / phi(d)^k for squarefree e."""
    mu, phi, _ = _arith(L)
    f = np.zeros(L + 1)
    f[1:] = mu[1:] ** (kappa + 1) * np.arange(1, L + 1) / phi[1:] ** kappa
    S = np.zeros(L + 1)
    for e in range(1, L + 1):
        if mu[e] != 0:
            S[e] = math.fsum(f[e::e])
    return S


def identity_partial_sum(kappa: int, n: int, term_limit: int = 10**4, form: int = 1) -> float:
    """Partial sum of one of the two series for S_kappa(n).

    form=1:  sum_{d | n} sum_{c <= L, (c,d)=1} mu(c)^(k+1) mu(d)^k d / (phi(c)^k phi(d)^k)
    form=2:  sum_{c <= L} sum_{d <= L, (d,cn)=1} mu(c)^k mu(d)^(k+1) d / (phi(c)^(k-1) phi(d)^k)
             (only valid for kappa >= 3)

    Terms are added with c increasing.  Both series converge absolutely for the
    admissible kappa; the truncation error is of order 1/L.
    """
    kappa = _check_kappa(kappa)
    n = int(n)
    L = int(term_limit)
    if L < 1000:
        raise BadArguments("term_limit must be at least 1000")
    if n < 1:
        raise BadArguments("n must be positive")
    mu, phi, _ = _arith(L)
    c = np.arange(1, L + 1)
    n_primes = _factor_primes(n)
    if form == 1:
        fc = mu[1:] ** (kappa + 1) / phi[1:] ** kappa
        terms = []
        for d in _squarefree_divisors(n_primes):
            # mu(d)^k = 1 on squarefree d for even k, sign for odd k
            md = (-1) ** (len(_factor_primes(d)) * kappa) if d > 1 else 1
            phd = math.prod(p - 1 for p in _factor_primes(d)) if d > 1 else 1
            mask = np.gcd(c, d) == 1
            terms.append(md * d / phd**kappa * math.fsum(fc[mask]))
        return math.fsum(terms)
    if form != 2:
        raise BadArguments("form must be 1 or 2")
    if kappa < 3:
        raise BadArguments("the second identity needs kappa >= 3")
    S = _multiple_sums(kappa, L)
    table = _arith(L)[2]
    n_set = set(n_primes)
    terms = []
    for ci in range(1, L + 1):
        m = mu[ci] ** kappa
        if m == 0:
            continue
        primes = sorted(n_set | {p for p, _ in table.factor(ci)}) if ci > 1 else sorted(n_set)
        # sum over d coprime to c*n by inclusion-exclusion on the shared primes
        divs = [e for e in _squarefree_divisors([p for p in primes if p <= L]) if e <= L]
        inner = math.fsum(mu[divs] * S[divs])
        terms.append(m * inner / phi[ci] ** (kappa - 1))
    return math.fsum(terms)
