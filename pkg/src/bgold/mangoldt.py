"""Segmented sieve for the von Mangoldt, Moebius and Euler functions."""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

import numpy as np

from .errors import BadArguments, CapacityError

SEGMENT = 1 << 20
DEFAULT_MAX_X = 50_000_000
CACHE_MAGIC = b"BGLT"
CACHE_VERSION = 1


def simple_primes(limit: int) -> np.ndarray:
    """Primes <= limit by a plain (unsegmented) sieve of Eratosthenes."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return np.flatnonzero(sieve)


@dataclass(frozen=True, eq=False)
class LambdaTable:
    """Arrays indexed by n = 0..x_max (index 0 is a zero placeholder)."""

    x_max: int
    lam: np.ndarray       # Lambda(n), natural log
    mu: np.ndarray        # int8
    phi: np.ndarray       # int64
    is_prime: np.ndarray  # bool
    spf: np.ndarray       # smallest prime factor, int32; spf[1] = 1

    def factor(self, n: int) -> list[tuple[int, int]]:
        """Prime factorisation of n <= x_max as [(p, e), ...]."""
        n = int(n)
        if not 1 <= n <= self.x_max:
            raise BadArguments(f"n={n} outside table range 1..{self.x_max}")
        out: list[tuple[int, int]] = []
        while n > 1:
            p = int(self.spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out

    def primes(self) -> np.ndarray:
        return np.flatnonzero(self.is_prime)


def _sieve_segment(lo: int, hi: int, base: np.ndarray):
    n = np.arange(lo, hi, dtype=np.int64)
    rem = n.copy()
    mu = np.ones(hi - lo, dtype=np.int8)
    phi = n.copy()
    spf = np.zeros(hi - lo, dtype=np.int32)
    omega = np.zeros(hi - lo, dtype=np.int8)
    for p in base:
        p = int(p)
        if p * p >= hi:
            break
        start = -lo % p
        if lo + start == 0:
            start += p
        idx = slice(start, None, p)
        r = rem[idx] // p
        sq = r % p == 0
        mu_s = -mu[idx]
        mu_s[sq] = 0
        mu[idx] = mu_s
        while sq.any():
            r[sq] //= p
            sq = r % p == 0
        rem[idx] = r
        phi[idx] = phi[idx] // p * (p - 1)
        s = spf[idx]
        s[s == 0] = p
        spf[idx] = s
        omega[idx] += 1
    big = rem > 1
    mu[big] = -mu[big]
    phi[big] = phi[big] // rem[big] * (rem[big] - 1)
    fill = big & (spf == 0)
    spf[fill] = rem[fill]
    omega[big] += 1
    return mu, phi, spf, omega


def build_tables(x_max: int, max_x: int = DEFAULT_MAX_X) -> LambdaTable:
    """Sieve Lambda, mu, phi, primality and smallest prime factors up to x_max."""
    x_max = int(x_max)
    if x_max < 2:
        raise BadArguments("x_max must be at least 2")
    if x_max > max_x:
        raise CapacityError(f"x_max={x_max} exceeds the sieve budget {max_x}")
    size = x_max + 1
    lam = np.zeros(size)
    mu = np.zeros(size, dtype=np.int8)
    phi = np.zeros(size, dtype=np.int64)
    spf = np.zeros(size, dtype=np.int32)
    is_prime = np.zeros(size, dtype=bool)
    base = simple_primes(math.isqrt(x_max) + 1)
    for lo in range(1, size, SEGMENT):
        hi = min(lo + SEGMENT, size)
        m, ph, sp, om = _sieve_segment(lo, hi, base)
        mu[lo:hi] = m
        phi[lo:hi] = ph
        spf[lo:hi] = sp
        pp = om == 1
        lam[lo:hi][pp] = np.log(sp[pp].astype(float))
        n = np.arange(lo, hi)
        is_prime[lo:hi] = (sp == n) & (n >= 2)
    spf[1] = 1
    return LambdaTable(x_max, lam, mu, phi, is_prime, spf)


def lambda_split(table: LambdaTable, n: int, z: float) -> tuple[float, float]:
    """(Lambda_sharp(n), Lambda_flat(n)) for the divisor cut at z.

    sharp = -sum_{d | n, d <= z} mu(d) log d,  flat = -sum_{d | n, d > z} mu(d) log d.
    """
    primes = [p for p, _ in table.factor(n)]
    sharp, flat = [], []
    for r in range(len(primes) + 1):
        sign = -1.0 if r % 2 else 1.0
        for combo in combinations(primes, r):
            d = math.prod(combo)
            term = -sign * math.log(d)
            (sharp if d <= z else flat).append(term)
    return math.fsum(sharp), math.fsum(flat)


def save_tables(table: LambdaTable, path) -> None:
    """Write the little-endian binary cache (magic BGLT, version, x_max, arrays)."""
    with open(Path(path), "wb") as fh:
        fh.write(CACHE_MAGIC)
        fh.write(struct.pack("<IQ", CACHE_VERSION, table.x_max))
        fh.write(table.lam.astype("<f8").tobytes())
        fh.write(table.mu.astype("<i1").tobytes())
        fh.write(table.phi.astype("<i8").tobytes())
        fh.write(table.spf.astype("<i4").tobytes())
        fh.write(np.packbits(table.is_prime, bitorder="little").tobytes())


def load_tables(path) -> LambdaTable:
    data = Path(path).read_bytes()
    if data[:4] != CACHE_MAGIC:
        raise BadArguments(f"{path}: not a sieve cache file")
    version, x_max = struct.unpack_from("<IQ", data, 4)
    if version != CACHE_VERSION:
        raise BadArguments(f"{path}: unsupported cache version {version}")
    size = x_max + 1
    off = 16
    arrays = []
    for dt, width in (("<f8", 8), ("<i1", 1), ("<i8", 8), ("<i4", 4)):
        arrays.append(np.frombuffer(data, dtype=dt, count=size, offset=off).copy())
        off += size * width
    packed = np.frombuffer(data, dtype=np.uint8, count=(size + 7) // 8, offset=off)
    is_prime = np.unpackbits(packed, count=size, bitorder="little").astype(bool)
    lam, mu, phi, spf = arrays
    return LambdaTable(int(x_max), lam.astype(np.float64), mu.astype(np.int8),
                       phi.astype(np.int64), is_prime, spf.astype(np.int32))
