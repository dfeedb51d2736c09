import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bgold.errors import CapacityError
from bgold.mangoldt import build_tables, lambda_split, load_tables, save_tables

from oracles import is_prime, mangoldt, mobius, totient


def test_small_table():
    t = build_tables(10)
    l2, l3, l5, l7 = (math.log(p) for p in (2, 3, 5, 7))
    assert np.allclose(t.lam[1:], [0, l2, l3, l2, l5, 0, l7, l2, l3, 0])
    assert (t.mu[6], t.mu[4], t.mu[7]) == (1, 0, -1)
    assert (t.phi[9], t.phi[10]) == (6, 4)


def test_capacity():
    with pytest.raises(CapacityError):
        build_tables(10**6, max_x=10**5)


def test_against_trial_division(table):
    n = np.arange(1, 10**5 + 1)
    assert np.array_equal(table.is_prime[1:10**5 + 1], [is_prime(int(k)) for k in n])


@given(st.integers(1, 200_000))
def test_functions_match_definitions(table, n):
    assert table.lam[n] == pytest.approx(mangoldt(n), abs=1e-12)
    assert table.mu[n] == mobius(n)
    assert table.phi[n] == totient(n)


def test_mobius_divisor_sum(table):
    for n in range(1, 3000):
        assert sum(int(table.mu[d]) for d in range(1, n + 1) if n % d == 0) == (n == 1)


def test_segment_boundaries():
    # the table spans two segments; values across the seam must be right
    t = build_tables(1 << 21)
    seam = np.arange((1 << 20) - 50, (1 << 20) + 50)
    assert [bool(t.is_prime[k]) for k in seam] == [is_prime(int(k)) for k in seam]
    assert [int(t.mu[k]) for k in seam] == [mobius(int(k)) for k in seam]


def test_chebyshev_and_squarefree():
    t = build_tables(10**6)
    assert abs(math.fsum(t.lam) - 10**6) < 0.01 * 10**6
    sq = int(np.sum(t.mu[1:] != 0))
    assert abs(sq - 6 / math.pi**2 * 10**6) <= 2 * math.sqrt(10**6)


def test_split_examples(table):
    assert lambda_split(table, 6, 1) == pytest.approx((0.0, 0.0), abs=1e-12)
    sharp, flat = lambda_split(table, 4, 2)
    assert sharp == pytest.approx(math.log(2)) and flat == pytest.approx(0.0, abs=1e-15)


@given(st.integers(1, 10**4))
def test_split_full_cut(table, n):
    sharp, flat = lambda_split(table, n, n)
    assert flat == 0 and sharp == pytest.approx(table.lam[n], abs=1e-10)


def test_cache_roundtrip(tmp_path):
    t = build_tables(5000)
    path = tmp_path / "sieve.bin"
    save_tables(t, path)
    assert path.read_bytes()[:4] == b"BGLT"
    u = load_tables(path)
    assert u.x_max == t.x_max
    for name in ("lam", "mu", "phi", "is_prime", "spf"):
        assert np.array_equal(getattr(u, name), getattr(t, name)), name
