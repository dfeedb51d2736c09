import math

import numpy as np
import pytest

from bgold.beatty import BeattyConfig, contains
from bgold.errors import BadArguments, CapacityError
from bgold.psi import psi_conv_build, psi_conv_min
from bgold.repcounts import (gk_bulk, gk_naive, main_term, main_term_array,
                             no_representation_witness, rk_prime_count, self_convolution,
                             weighted_indicator, witness_mask)
from bgold.singular import euler_product, singular_series_table

from oracles import compositions_sum

L2 = math.log(2)


@pytest.fixture(scope="module")
def root2():
    return BeattyConfig.from_strings("sqrt:2")


def test_naive_examples(root2, table):
    assert gk_naive(root2, 2, 3, table) == 0
    assert gk_naive(root2, 2, 4, table) == pytest.approx(L2**2, rel=1e-15)
    assert gk_naive(root2, 2, 7, table) == pytest.approx(2 * L2 * math.log(5), rel=1e-15)


def test_naive_against_enumeration(table):
    cfg = BeattyConfig.from_strings("golden", "1/2")
    weights = {n: float(table.lam[n]) for n in range(1, 200) if table.lam[n] and contains(cfg, n)}
    for kappa in (2, 3, 4):
        for n in range(0, 120, 7):
            assert gk_naive(cfg, kappa, n, table) == pytest.approx(
                compositions_sum(weights, kappa, n), rel=1e-12, abs=1e-300)


def test_naive_symmetry(root2, table):
    w = weighted_indicator(root2, table, 3000).weights
    for n in range(2, 3000, 37):
        fwd = math.fsum(w[k] * w[n - k] for k in range(n + 1))
        rev = math.fsum(w[n - k] * w[k] for k in range(n + 1))
        assert fwd == rev == pytest.approx(gk_naive(root2, 2, n, table), rel=1e-13, abs=0)


def test_naive_budget(root2, table):
    with pytest.raises(CapacityError):
        gk_naive(root2, 4, 10**5, table)
    with pytest.raises(BadArguments):
        gk_naive(root2, 5, 100, table)


def test_bulk_matches_naive_kappa2(root2, table):
    g = gk_bulk(root2, 2, 2000, table).counts
    naive = np.array([gk_naive(root2, 2, n, table) for n in range(2001)])
    nz = naive > 0
    assert np.array_equal(g == 0, ~nz)
    assert np.max(np.abs(g[nz] - naive[nz]) / naive[nz]) < 1e-9


@pytest.mark.slow
def test_bulk_matches_naive_kappa3(table):
    cfg = BeattyConfig.from_strings("pi")
    g = gk_bulk(cfg, 3, 3000, table).counts
    naive = np.array([gk_naive(cfg, 3, n, table) for n in range(3001)])
    nz = naive > 0
    assert np.array_equal(g == 0, ~nz)
    assert np.max(np.abs(g[nz] - naive[nz]) / naive[nz]) < 1e-9


def test_all_ones_identity():
    x = 5000
    w = np.ones(x + 1)
    w[0] = 0
    c2 = self_convolution(w, 2)
    assert np.array_equal(np.rint(c2[1:]), np.arange(0, x))
    assert np.max(np.abs(c2[1:] - np.arange(0, x))) < 1e-6
    c3 = self_convolution(w, 3)
    n = np.arange(x + 1)
    assert np.max(np.abs(c3 - np.where(n >= 3, (n - 1) * (n - 2) / 2, 0))) < 1e-5


def test_total_mass(root2, table):
    x = 20_000
    w = weighted_indicator(root2, table, x).weights
    g = self_convolution(np.concatenate([w, np.zeros(x)]), 2)
    assert g.sum() == pytest.approx(w.sum() ** 2, rel=1e-6)


def test_weights_invariants(root2):
    from bgold.mangoldt import build_tables
    t = build_tables(10**6)
    w = weighted_indicator(root2, t).weights
    support = np.flatnonzero(w)
    assert np.all(t.lam[support] > 0)
    assert all(contains(root2, int(n)) for n in support[::500])
    assert abs(w.sum() - root2.gamma_float * 10**6) < 0.05 * root2.gamma_float * 10**6


def test_prime_counts(root2, table):
    r = rk_prime_count(root2, 2, 100, table).counts
    assert r[4] == 1 and r[10] == 1
    r3 = rk_prime_count(root2, 3, 100, table).counts
    assert r3[6] == 1
    primes = [p for p in range(2, 101) if table.is_prime[p] and contains(root2, p)]
    for n in range(101):
        assert r[n] == sum(1 for p in primes if n - p in primes)


def test_bulk_budget(root2, table):
    with pytest.raises(CapacityError):
        gk_bulk(root2, 4, 200_000, table)


def test_main_term(root2):
    poly = psi_conv_build(2, root2.gamma_float)
    assert main_term(root2, 2, 7, poly, euler_product(2, 7)) == 0
    cfg = BeattyConfig.from_strings("dec:1.5@10^9")
    poly = psi_conv_build(2, 2 / 3)
    for n in range(4, 400, 2):
        m = main_term(cfg, 2, n, poly, euler_product(2, n))
        psi = poly((2 * n + 4) / 3)
        assert m == pytest.approx(psi * euler_product(2, n).value * n, rel=1e-12)
        assert psi >= 1 / 3 - 1e-12
    cfg = BeattyConfig.from_strings("dec:2.5@10^9")
    poly = psi_conv_build(3, 0.4)
    floor = psi_conv_min(3, 0.4).value
    for n in range(7, 400, 2):
        s = euler_product(3, n)
        assert main_term(cfg, 3, n, poly, s) >= floor * s.value * n**2 / 2 * (1 - 1e-12)


def test_main_term_array_parity(root2):
    s, _ = singular_series_table(3, 1000)
    poly = psi_conv_build(3, root2.gamma_float)
    m = main_term_array(root2, 3, np.arange(1001), poly, s)
    assert np.all(m[0::2] == 0) and np.all(m[1::2][1:] > 0)


def test_witness_examples(table):
    pi = BeattyConfig.from_strings("pi")
    assert no_representation_witness(pi, 3, 355)
    assert gk_naive(pi, 3, 355, table) == 0
    assert not no_representation_witness(BeattyConfig.from_strings("sqrt:2"), 2, 100)
    half = BeattyConfig.from_strings("dec:2.5@10^9")
    assert [n for n in range(1, 31) if no_representation_witness(half, 2, n)] == []
    for n in (6, 13, 16, 26):
        assert not no_representation_witness(half, 2, n)


@pytest.mark.parametrize("alpha, beta, kappa", [("pi", "0", 3), ("sqrt:13", "1/3", 3),
                                                ("e", "0", 2), ("sqrt:30", "2", 4)])
def test_witness_soundness(table, alpha, beta, kappa):
    cfg = BeattyConfig.from_strings(alpha, beta)
    x = 4000 if kappa < 4 else 1500
    mask = witness_mask(cfg, kappa, x)
    assert mask.any()
    for n in range(1, x + 1, 7):
        assert mask[n] == no_representation_witness(cfg, kappa, n)
    for n in np.flatnonzero(mask):
        assert gk_naive(cfg, kappa, int(n), table) == 0
