"""Comparison and density experiments built from the library pieces."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .beatty import BeattyConfig
from .errors import BadArguments
from .irrational import IrrationalSpec, frac_linear_array, star_discrepancy
from .mangoldt import LambdaTable, build_tables
from .psi import psi_conv_build
from .repcounts import check_budget, gk_bulk, main_term_array, rk_prime_count, witness_mask
from .singular import singular_series_table

REL_EPS = 1e-9
OUTLIER = 0.5


@dataclass(frozen=True)
class ExperimentRow:
    n: int
    g_kappa: float
    main_term: float
    rel_err: float
    witness: bool
    r_kappa: int


@dataclass(frozen=True)
class WindowStats:
    lo: int
    hi: int
    rows: int
    median_rel_err: float
    p90_rel_err: float


@dataclass
class CompareResult:
    kappa: int
    x_max: int
    rows: list[ExperimentRow]
    windows: list[WindowStats]
    outliers: int          # rows with rel_err > OUTLIER

    def summary(self) -> dict:
        return {"kappa": self.kappa, "x_max": self.x_max, "rows": len(self.rows),
                "rel_err_above_0.5": self.outliers,
                "windows": [asdict(w) for w in self.windows]}


@dataclass(frozen=True)
class DensitySummary:
    x_max: int
    parity_class_size: int
    no_rep_count: int
    witness_count: int
    predicted_witness_fraction: float

    def __post_init__(self):
        if not self.witness_count <= self.no_rep_count <= self.parity_class_size:
            raise AssertionError("witness_count <= no_rep_count <= parity_class_size violated")

    @property
    def witness_fraction(self) -> float:
        return self.witness_count / max(self.parity_class_size, 1)

    @property
    def no_rep_fraction(self) -> float:
        return self.no_rep_count / max(self.parity_class_size, 1)


def dyadic_windows(lo: int, hi: int) -> list[tuple[int, int]]:
    """[2^j, 2^(j+1)) pieces covering [lo, hi], clipped to it."""
    out = []
    j = max(lo, 1).bit_length() - 1
    while (1 << j) <= hi:
        a, b = max(lo, 1 << j), min(hi, (1 << (j + 1)) - 1)
        if a <= b:
            out.append((a, b))
        j += 1
    return out


def compare(cfg: BeattyConfig, kappa: int, x_max: int, window: tuple[int, int] | None = None,
            table: LambdaTable | None = None) -> CompareResult:
    """G_kappa(N) against the main term for N = kappa (mod 2), N >= 2*kappa, in the window."""
    kappa, x_max = int(kappa), int(x_max)
    check_budget(kappa, x_max)
    lo, hi = window if window is not None else (1, x_max)
    if lo > hi or hi > x_max:
        raise BadArguments(f"window {lo}..{hi} must lie inside 1..{x_max}")
    table = table if table is not None and table.x_max >= x_max else build_tables(max(x_max, 2))
    g = gk_bulk(cfg, kappa, x_max, table)
    r = rk_prime_count(cfg, kappa, x_max, table)
    sing, _ = singular_series_table(kappa, x_max)
    poly = psi_conv_build(kappa, float(cfg.gamma))
    ns = np.arange(x_max + 1)
    main = main_term_array(cfg, kappa, ns, poly, sing)
    rel = np.abs(g.counts - main) / np.maximum(main, REL_EPS)
    wit = witness_mask(cfg, kappa, x_max)
    # below 2*kappa there is nothing to compare
    start = max(lo, 2 * kappa)
    start += (start - kappa) % 2
    sel = np.arange(start, hi + 1, 2)
    rows = [ExperimentRow(int(n), float(g.counts[n]), float(main[n]), float(rel[n]),
                          bool(wit[n]), int(r.counts[n])) for n in sel]
    windows = []
    for a, b in dyadic_windows(lo, hi):
        part = sel[(sel >= a) & (sel <= b)]
        if part.size:
            windows.append(WindowStats(a, b, int(part.size), float(np.median(rel[part])),
                                       float(np.percentile(rel[part], 90))))
    return CompareResult(kappa, x_max, rows, windows, int(np.sum(rel[sel] > OUTLIER)))


def density(cfg: BeattyConfig, kappa: int, x_max: int, table: LambdaTable | None = None
            ) -> DensitySummary:
    """Witness and no-representation counts over N <= x_max with N = kappa (mod 2)."""
    kappa, x_max = int(kappa), int(x_max)
    check_budget(kappa, x_max)
    table = table if table is not None and table.x_max >= x_max else build_tables(max(x_max, 2))
    r = rk_prime_count(cfg, kappa, x_max, table)
    wit = witness_mask(cfg, kappa, x_max)
    sel = np.arange(2 - kappa % 2, x_max + 1, 2)
    predicted = max(0.0, 1 - kappa * float(cfg.gamma))
    return DensitySummary(x_max, int(sel.size), int(np.sum(r.counts[sel] == 0)),
                          int(np.sum(wit[sel])), predicted)


def sequence_points(gamma: IrrationalSpec, delta, m: int) -> np.ndarray:
    """{gamma*n + delta} for n = 1..m."""
    _, frac, _ = frac_linear_array(gamma, np.arange(1, int(m) + 1), 1, delta)
    return frac


def discrepancy_ladder(gamma: IrrationalSpec, delta, ladder) -> list[tuple[int, float, float]]:
    """(M, D*(M), log D*/log M) for each M in the ladder."""
    out = []
    for m in ladder:
        d = star_discrepancy(sequence_points(gamma, delta, m))
        out.append((int(m), d, math.log(d) / math.log(m)))
    return out
