"""Periodic convolution powers of the indicator of (0, gamma], and its smoothing.

``psi^(k)`` is the period-1 periodisation of the k-fold convolution of the
indicator of (0, gamma], i.e. a uniform B-spline of degree k-1 with knot
spacing gamma.  :func:`psi_conv_build` produces it as an exact piecewise
polynomial (coefficients are computed in rational arithmetic and rounded
once), which is what makes identities checkable at the 1e-12 level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import BadArguments
from .irrational import IrrationalSpec

MAX_KAPPA = 12
COALESCE = 1e-14


def _gamma_fraction(gamma) -> Fraction:
    if isinstance(gamma, Fraction):
        g = gamma
    elif isinstance(gamma, IrrationalSpec):
        g = Fraction(float(gamma))
    else:
        g = Fraction(float(gamma))
    if not 0 < g < 1:
        raise BadArguments(f"gamma must lie in (0, 1), got {float(g)}")
    return g


def psi_eval(gamma, x):
    """1 if 0 < {x} <= gamma else 0 (so 0 at integers)."""
    g = float(gamma)
    r = np.mod(np.asarray(x, dtype=float), 1.0)
    out = ((r > 0) & (r <= g)).astype(float)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True, eq=False)
class PiecewisePoly:
    """Period-1 piecewise polynomial.

    Piece i covers (breakpoints[i], breakpoints[i+1]] and is evaluated as
    sum_j coefficients[i, j] * (r - breakpoints[i])**j for r in (0, 1].
    """

    kappa: int
    gamma: float
    breakpoints: np.ndarray
    coefficients: np.ndarray

    @property
    def period(self) -> float:
        return 1.0

    def __call__(self, x):
        return psi_conv_eval(self, x)

    def integral(self) -> float:
        """Integral over one period, from the coefficients."""
        w = np.diff(self.breakpoints)
        j = np.arange(self.coefficients.shape[1])
        return float(np.sum(self.coefficients * w[:, None] ** (j + 1) / (j + 1)))

    def derivative_coefficients(self) -> np.ndarray:
        j = np.arange(1, self.coefficients.shape[1])
        return self.coefficients[:, 1:] * j


def psi_conv_build(kappa: int, gamma) -> PiecewisePoly:
    """psi^(kappa) for 0 < gamma < 1 as an exact piecewise polynomial."""
    kappa = int(kappa)
    if kappa < 1:
        raise BadArguments("kappa must be at least 1")
    if kappa > MAX_KAPPA:
        raise BadArguments(f"kappa={kappa} unsupported (max {MAX_KAPPA})")
    g = _gamma_fraction(gamma)
    knots = sorted({(j * g) % 1 for j in range(kappa + 1)} | {Fraction(0), Fraction(1)})
    deg = kappa - 1
    norm = Fraction(1, math.factorial(deg))
    binom_k = [math.comb(kappa, j) for j in range(kappa + 1)]
    binom_d = [math.comb(deg, i) for i in range(deg + 1)]
    m_top = math.ceil(kappa * g) + 1
    rows = []
    for left, right in zip(knots, knots[1:]):
        mid = (left + right) / 2
        coeffs = [Fraction(0)] * (deg + 1)
        for m in range(m_top + 1):
            for j in range(kappa + 1):
                c = left + m - j * g          # t - j*gamma at u = 0
                if mid + m - j * g <= 0:
                    continue
                w = norm * binom_k[j] * (-1) ** j
                for i in range(deg + 1):
                    coeffs[i] += w * binom_d[i] * c ** (deg - i)
        rows.append([float(c) for c in coeffs])
    bps = [float(k) for k in knots]
    coef = np.array(rows, dtype=float)
    # drop pieces narrower than COALESCE, extending the previous piece over them
    keep_bp = [0]
    keep_rows = [0]
    for i in range(1, len(rows)):
        if bps[i + 1] - bps[i] < COALESCE:
            continue
        keep_bp.append(i)
        keep_rows.append(i)
    bp = np.array([bps[i] for i in keep_bp] + [1.0])
    return PiecewisePoly(kappa, float(g), bp, coef[keep_rows])


def psi_conv_eval(poly: PiecewisePoly, x):
    """psi^(kappa)({x}); accepts scalars or arrays."""
    xa = np.asarray(x, dtype=float)
    r = np.mod(xa, 1.0)
    r = np.where(r == 0.0, 1.0, r)
    idx = np.searchsorted(poly.breakpoints, r, side="left") - 1
    idx = np.clip(idx, 0, len(poly.coefficients) - 1)
    u = r - poly.breakpoints[idx]
    c = poly.coefficients[idx]
    val = c[..., -1]
    for j in range(c.shape[-1] - 2, -1, -1):
        val = val * u + c[..., j]
    return float(val) if val.ndim == 0 else val


@dataclass(frozen=True)
class MinResult:
    value: float
    argmin: float
    degenerate: bool = False


def psi_conv_min(kappa: int, gamma) -> MinResult:
    """Global minimum of psi^(kappa) over a period.

    When kappa*gamma <= 1 the minimum is 0 on a whole interval; the result is
    flagged ``degenerate`` and ``argmin`` is the midpoint of the zero set.
    """
    poly = psi_conv_build(kappa, gamma)
    g = _gamma_fraction(gamma)
    if kappa * g <= 1:
        return MinResult(0.0, float((1 + kappa * g) / 2), True)
    best_v, best_x = math.inf, 0.0
    dcoef = poly.derivative_coefficients()
    for i, (a, b) in enumerate(zip(poly.breakpoints, poly.breakpoints[1:])):
        w = b - a
        cand = [0.0, w]
        d = np.trim_zeros(dcoef[i], "b") if dcoef.shape[1] else np.zeros(0)
        if d.size == 0 or np.all(np.abs(d) < 1e-15):
            # flat piece: report its midpoint
            cand.insert(0, w / 2)
        elif d.size > 1:
            for root in P.polyroots(d):
                if abs(root.imag) < 1e-9 and 0 < root.real < w:
                    cand.append(float(root.real))
        for u in cand:
            v = float(P.polyval(u, poly.coefficients[i]))
            if v < best_v - 1e-15:
                best_v, best_x = v, float(a + u)
    return MinResult(best_v, best_x % 1.0, False)


def sharp_lower_bound(kappa: int, gamma) -> float:
    """(kappa*gamma - 1)**(kappa-1) / (2**(kappa-2) (kappa-1)!) for kappa = ceil(1/gamma)."""
    g = _gamma_fraction(gamma)
    kappa = int(kappa)
    if kappa != math.ceil(1 / g):
        raise BadArguments(f"sharp bound needs kappa = ceil(1/gamma) = {math.ceil(1 / g)}")
    h = kappa * g - 1
    return float(h ** (kappa - 1) / (Fraction(2) ** (kappa - 2) * math.factorial(kappa - 1)))


# -- smoothed indicator ------------------------------------------------------

@dataclass(frozen=True)
class SmoothedIndicator:
    """Trapezoid: indicator of (0, gamma] averaged over a centred box of width delta.

    Equals 1 on [delta/2, gamma - delta/2] and 0 on [gamma + delta/2, 1 - delta/2]
    with linear ramps between; Fourier coefficients are
    g(k) = e(-k gamma/2) sin(pi k gamma)/(pi k) * sin(pi k delta)/(pi k delta).
    """

    gamma: float
    delta_width: float
    fourier_limit: int | None = None

    def __call__(self, x):
        g, d = self.gamma, self.delta_width
        r = np.mod(np.asarray(x, dtype=float), 1.0)
        h = d / 2
        out = np.zeros_like(r)
        out[(r >= h) & (r <= g - h)] = 1.0
        lo = r < h
        out[lo] = (r[lo] + h) / d
        mid = (r > g - h) & (r < g + h)
        out[mid] = (g + h - r[mid]) / d
        hi = r > 1 - h
        out[hi] = (r[hi] - (1 - h)) / d
        out = np.clip(out, 0.0, 1.0)
        return float(out) if out.ndim == 0 else out

    def coefficients(self, k) -> np.ndarray:
        k = np.asarray(k, dtype=float)
        g, d = self.gamma, self.delta_width
        kk = np.where(k == 0, 1.0, k)
        phase = np.exp(-1j * np.pi * kk * g)
        val = phase * np.sin(np.pi * kk * g) / (np.pi * kk) * np.sinc(kk * d)
        return np.where(k == 0, g + 0j, val)


def smoothed_build(gamma, delta, fourier_limit: int | None = None) -> SmoothedIndicator:
    gamma, delta = float(gamma), float(delta)
    if not 0 < gamma < 1:
        raise BadArguments("gamma must lie in (0, 1)")
    if not (0 < delta < 1 / 8 and delta <= 0.5 * min(gamma, 1 - gamma)):
        raise BadArguments(
            f"delta={delta} violates 0 < delta < 1/8 and delta <= min(gamma, 1-gamma)/2")
    if fourier_limit is not None and fourier_limit < 1 / delta:
        raise BadArguments("fourier_limit must be at least 1/delta")
    return SmoothedIndicator(gamma, delta, fourier_limit)


def _check_k(ind: SmoothedIndicator, K: int) -> int:
    K = int(K)
    if K < 1 / ind.delta_width:
        raise BadArguments(f"K={K} below 1/delta={1 / ind.delta_width:g}")
    return K


def truncated_series_eval(ind: SmoothedIndicator, K: int, power: int, x) -> np.ndarray | float:
    """sum_{|k| <= K} g(k)**power e(kx), real part; direct summation."""
    K = _check_k(ind, K)
    ks = np.arange(-K, K + 1)
    gk = ind.coefficients(ks) ** int(power)
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty(xa.shape, dtype=complex)
    chunk = max(1, 2_000_000 // ks.size)
    for s in range(0, xa.size, chunk):
        xs = xa[s:s + chunk]
        out[s:s + chunk] = np.exp(2j * np.pi * np.outer(xs, ks)) @ gk
    if np.max(np.abs(out.imag)) > 1e-10:
        raise ArithmeticError("truncated series lost conjugate symmetry")
    res = out.real
    return float(res[0]) if np.ndim(x) == 0 else res


def truncated_series_grid(ind: SmoothedIndicator, K: int, power: int, n_grid: int
                          ) -> tuple[np.ndarray, np.ndarray]:
    """The same trigonometric polynomial on the grid j/n_grid, via one inverse FFT."""
    K = _check_k(ind, K)
    if n_grid < 2 * K + 1:
        raise BadArguments("grid must have at least 2K+1 points")
    spec = np.zeros(n_grid, dtype=complex)
    ks = np.arange(-K, K + 1)
    spec[ks % n_grid] = ind.coefficients(ks) ** int(power)
    vals = np.fft.ifft(spec) * n_grid
    if np.max(np.abs(vals.imag)) > 1e-10:
        raise ArithmeticError("truncated series lost conjugate symmetry")
    return np.arange(n_grid) / n_grid, vals.real
