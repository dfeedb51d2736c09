"""Membership in and enumeration of B(alpha, beta) = {floor(alpha*m + beta) >= 1}."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import BadArguments
from .irrational import IrrationalSpec, LinearForm, as_fraction, frac_linear_array, parse_spec


@dataclass(frozen=True)
class BeattyConfig:
    """alpha > 1 and a rational shift beta.

    gamma = 1/alpha is kept as its own coefficient stream; delta is the linear
    form (1 - beta) * gamma, so {gamma*n + delta} = {gamma * (n + 1 - beta)}.
    """

    alpha: IrrationalSpec
    beta: Fraction = Fraction(0)
    gamma: IrrationalSpec = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "beta", as_fraction(self.beta))
        if self.alpha.sign(1, -1) <= 0:
            raise BadArguments(f"alpha must exceed 1, got {self.alpha.label}")
        object.__setattr__(self, "gamma", self.alpha.reciprocal())

    @classmethod
    def from_strings(cls, alpha: str, beta: str = "0") -> "BeattyConfig":
        return cls(parse_spec(alpha), as_fraction(beta))

    @property
    def is_rational(self) -> bool:
        return self.alpha.is_rational

    @property
    def delta(self) -> LinearForm:
        return LinearForm(1 - self.beta)

    @property
    def alpha_float(self) -> float:
        return float(self.alpha)

    @property
    def gamma_float(self) -> float:
        return float(self.gamma)

    @property
    def delta_float(self) -> float:
        return float(self.gamma) * float(1 - self.beta)

    def __str__(self) -> str:
        return f"B({self.alpha.label}, {self.beta})"


def contains(cfg: BeattyConfig, n: int) -> bool:
    """True iff 0 < {gamma*n + delta} <= gamma, decided exactly."""
    n = int(n)
    if n < 1:
        return False
    cfg.gamma.check_multiplier(n)
    t = n + 1 - cfg.beta
    k = cfg.gamma.floor_linear(t)
    # frac = gamma*t - k ;  frac > 0  and  frac - gamma <= 0
    return cfg.gamma.sign(t, -k) > 0 and cfg.gamma.sign(t - 1, -k) <= 0


def _floor_alpha_m(cfg: BeattyConfig, m: np.ndarray) -> np.ndarray:
    """floor(alpha*m + beta) for an integer array ``m``, certified."""
    if m.size == 0:
        return np.zeros(0, dtype=np.int64)
    floors, frac, radius = frac_linear_array(cfg.alpha, m, 1, cfg.beta)
    unsure = (frac <= radius) | (frac >= 1 - radius)
    for i in np.flatnonzero(unsure):
        floors[i] = cfg.alpha.floor_linear(int(m[i]), cfg.beta)
    return floors


def generate_up_to(cfg: BeattyConfig, x_max: int) -> np.ndarray:
    """Increasing array of all n in B(alpha, beta) with 1 <= n <= x_max."""
    x_max = int(x_max)
    if x_max < 1:
        return np.zeros(0, dtype=np.int64)
    if cfg.is_rational:
        warnings.warn(f"{cfg.alpha.label} is rational; asymptotic statements do not apply",
                      stacklevel=2)
    a = cfg.alpha_float
    b = float(cfg.beta)
    m_lo = math.ceil((1 - b) / a) - 2
    m_hi = math.floor((x_max - b) / a) + 2
    m = np.arange(m_lo, m_hi + 1, dtype=np.int64)
    n = _floor_alpha_m(cfg, m)
    return n[(n >= 1) & (n <= x_max)]


def membership_mask(cfg: BeattyConfig, x_max: int) -> np.ndarray:
    """Boolean array ``mask`` of length x_max+1 with mask[n] = (n in B)."""
    mask = np.zeros(int(x_max) + 1, dtype=bool)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        mask[generate_up_to(cfg, x_max)] = True
    return mask
