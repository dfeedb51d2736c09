import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bgold.beatty import BeattyConfig, contains, generate_up_to, membership_mask
from bgold.errors import BadArguments

from oracles import beatty_set, mp_value


def test_contains_examples():
    cfg = BeattyConfig.from_strings("sqrt:2")
    assert contains(cfg, 4) and not contains(cfg, 3) and contains(cfg, 1)
    assert not contains(cfg, 0)


def test_generate_examples():
    assert generate_up_to(BeattyConfig.from_strings("sqrt:2"), 10).tolist() == [1, 2, 4, 5, 7, 8, 9]
    with pytest.warns(UserWarning):
        got = generate_up_to(BeattyConfig.from_strings("dec:2.5@10^9"), 10)
    assert got.tolist() == [2, 5, 7, 10]
    assert generate_up_to(BeattyConfig.from_strings("pi", "1"), 12).tolist() == [1, 4, 7, 10]


def test_alpha_must_exceed_one():
    with pytest.raises(BadArguments):
        BeattyConfig.from_strings("dec:0.7@100")


def test_derived_parameters():
    cfg = BeattyConfig.from_strings("sqrt:2", "1/3")
    assert cfg.gamma_float == pytest.approx(1 / math.sqrt(2), abs=1e-15)
    assert cfg.delta_float == pytest.approx((2 / 3) / math.sqrt(2), abs=1e-15)


CONFIGS = [("sqrt:2", "0"), ("sqrt:3", "1/2"), ("pi", "1"), ("golden", "-3/7"),
           ("e", "5/2"), ("sqrt:11", "7")]


@pytest.mark.parametrize("alpha, beta", CONFIGS)
def test_two_membership_routes_agree(alpha, beta):
    cfg = BeattyConfig.from_strings(alpha, beta)
    gen = set(generate_up_to(cfg, 10**4).tolist())
    assert gen == {n for n in range(1, 10**4 + 1) if contains(cfg, n)}
    assert gen == beatty_set(mp_value(alpha), mpmath.mpf(Fraction(beta).numerator) /
                             Fraction(beta).denominator, 10**4)


@given(st.sampled_from(["sqrt:2", "sqrt:5", "pi", "golden"]),
       st.fractions(-3, 3, max_denominator=20), st.integers(1, 10**12))
def test_contains_matches_high_precision(alpha, beta, n):
    cfg = BeattyConfig(BeattyConfig.from_strings(alpha).alpha, beta)
    a = mp_value(alpha)
    b = mpmath.mpf(beta.numerator) / beta.denominator
    # n in B  iff  some integer m has n <= a m + b < n + 1
    m = mpmath.ceil((n - b) / a)
    assert contains(cfg, n) == bool(a * m + b < n + 1)


@pytest.mark.parametrize("alpha, beta", CONFIGS)
def test_gap_structure(alpha, beta):
    cfg = BeattyConfig.from_strings(alpha, beta)
    gaps = set(np.diff(generate_up_to(cfg, 10**5)).tolist())
    a = float(cfg.alpha)
    assert gaps <= {math.floor(a), math.ceil(a)}


@pytest.mark.parametrize("alpha", ["sqrt:2", "golden", "pi"])
def test_density(alpha):
    cfg = BeattyConfig.from_strings(alpha)
    x = 10**6
    count = int(membership_mask(cfg, x).sum())
    assert abs(count - cfg.gamma_float * x) <= x**0.6
