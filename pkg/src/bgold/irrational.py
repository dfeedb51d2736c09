"""Continued fractions, certified fractional parts and discrepancy.

An :class:`IrrationalSpec` describes a real number by a stream of
continued-fraction coefficients.  Convergents p_k/q_k of that stream give
rational enclosures of the number, which is all the certified arithmetic in
this package needs: every decision of the form ``a*x + b > 0`` (``a``, ``b``
rational) is made by refining the enclosure until the sign is unambiguous.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence

import mpmath
import numpy as np

from .errors import AmbiguityError, BadArguments, PrecisionExhausted

DEFAULT_VALUE_BITS = 512
DEFAULT_EXACT_THRESHOLD = 10_000


def as_fraction(x) -> Fraction:
    """Exact rational from int, Fraction, float or a decimal/ratio string."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, (float, np.floating)):
        return Fraction(float(x))
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


# -- coefficient sources -----------------------------------------------------

def _sqrt_terms(d: int) -> Iterator[int]:
    a0 = math.isqrt(d)
    yield a0
    m, den, a = 0, 1, a0
    while True:
        m = den * a - m
        den = (d - m * m) // den
        a = (a0 + m) // den
        yield a


def _e_terms() -> Iterator[int]:
    yield 2
    k = 1
    while True:
        yield 2 * (k + 1) // 3 if k % 3 == 2 else 1
        k += 1


def _rational_terms(x: Fraction) -> Iterator[int]:
    num, den = x.numerator, x.denominator
    while den:
        a = num // den
        yield a
        num, den = den, num - a * den


def _interval_terms(enclose: Callable[[int], tuple[Fraction, Fraction]],
                    start_prec: int = 128) -> Iterator[int]:
    """Coefficients of a number known only through rational enclosures.

    A coefficient is emitted only when both ends of the enclosure agree on it;
    otherwise the precision is doubled and the expansion resumed.
    """
    prec = start_prec
    emitted = 0
    while True:
        lo, hi = enclose(prec)
        k = 0
        for a, b in zip(_rational_terms(lo), _rational_terms(hi)):
            if a != b:
                break
            if k >= emitted:
                yield a
                emitted += 1
            k += 1
        prec *= 2


def _mpmath_enclosure(const: str) -> Callable[[int], tuple[Fraction, Fraction]]:
    def enclose(prec: int) -> tuple[Fraction, Fraction]:
        with mpmath.workprec(prec + 16):
            v = getattr(mpmath.mp, const)
            man, exp = mpmath.mpf(v).man_exp
        centre = Fraction(int(man)) * Fraction(2) ** int(exp)
        rad = Fraction(1, 2 ** prec)
        return centre - rad, centre + rad
    return enclose


def _reciprocal_terms(terms: Iterator[int]) -> Iterator[int]:
    first = next(terms)
    if first == 0:
        yield from terms
    else:
        yield 0
        yield first
        yield from terms


@dataclass(frozen=True)
class RationalApprox:
    numerator: int
    denominator: int
    error_bound: Fraction

    def __post_init__(self):
        if self.denominator <= 0 or math.gcd(self.numerator, self.denominator) != 1:
            raise ValueError("convergent must be in lowest terms with positive denominator")

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __float__(self) -> float:
        return self.numerator / self.denominator


@dataclass(frozen=True)
class LinearForm:
    """The real number ``coef * x + offset`` over some irrational ``x``."""

    coef: Fraction
    offset: Fraction = Fraction(0)

    @classmethod
    def of(cls, value) -> "LinearForm":
        if isinstance(value, LinearForm):
            return value
        return cls(Fraction(0), as_fraction(value))

    def __add__(self, other) -> "LinearForm":
        other = LinearForm.of(other)
        return LinearForm(self.coef + other.coef, self.offset + other.offset)

    __radd__ = __add__

    def scale(self, c) -> "LinearForm":
        c = as_fraction(c)
        return LinearForm(self.coef * c, self.offset * c)


class IrrationalSpec:
    """A real number given by its continued-fraction coefficient stream.

    Use the constructors (:meth:`sqrt`, :meth:`pi`, :meth:`golden`, :meth:`e`,
    :meth:`from_cf`, :meth:`from_generator`, :meth:`decimal`) or :func:`parse_spec`.
    Coefficients are memoised; the represented number never changes.
    """

    def __init__(self, label: str, kind: str, terms: Iterator[int], *,
                 rational: bool = False, q_max: int | None = None,
                 value_bits: int = DEFAULT_VALUE_BITS):
        self.label = label
        self.kind = kind
        self.is_rational = rational
        self.q_max = q_max
        self.value_bits = value_bits
        self._source = terms
        self._terms: list[int] = []
        # seeds p_{-2}, p_{-1} and q_{-2}, q_{-1}
        self._p = [0, 1]
        self._q = [1, 0]
        self._ended = False
        self._factory = None

    # constructors
    @classmethod
    def sqrt(cls, d: int, **kw) -> "IrrationalSpec":
        d = int(d)
        if d <= 0 or math.isqrt(d) ** 2 == d:
            raise BadArguments(f"sqrt:{d} is not the root of a non-square positive integer")
        spec = cls(f"sqrt:{d}", "sqrt", _sqrt_terms(d), **kw)
        spec._factory = lambda: _sqrt_terms(d)
        return spec

    @classmethod
    def golden(cls, **kw) -> "IrrationalSpec":
        def ones():
            while True:
                yield 1
        spec = cls("golden", "golden", ones(), **kw)
        spec._factory = ones
        return spec

    @classmethod
    def e(cls, **kw) -> "IrrationalSpec":
        spec = cls("e", "e", _e_terms(), **kw)
        spec._factory = _e_terms
        return spec

    @classmethod
    def pi(cls, **kw) -> "IrrationalSpec":
        factory = lambda: _interval_terms(_mpmath_enclosure("pi"))  # noqa: E731
        spec = cls("pi", "pi", factory(), **kw)
        spec._factory = factory
        return spec

    @classmethod
    def from_cf(cls, coefficients: Sequence[int], **kw) -> "IrrationalSpec":
        """Finite coefficient list; the number is the rational it spells out."""
        coeffs = [int(a) for a in coefficients]
        if not coeffs or any(a <= 0 for a in coeffs[1:]):
            raise BadArguments("continued fraction needs a0 and positive partial quotients")
        label = "cf:" + ",".join(map(str, coeffs))
        spec = cls(label, "cf", iter(coeffs), rational=True, **kw)
        spec._factory = lambda: iter(coeffs)
        return spec

    @classmethod
    def from_generator(cls, coefficient: Callable[[int], int], label: str = "generator",
                       **kw) -> "IrrationalSpec":
        """Infinite stream ``coefficient(0), coefficient(1), ...``."""
        def gen():
            k = 0
            while True:
                yield int(coefficient(k))
                k += 1
        spec = cls(label, "generator", gen(), **kw)
        spec._factory = gen
        return spec

    @classmethod
    def decimal(cls, literal: str, q_max: int, **kw) -> "IrrationalSpec":
        """Decimal literal, valid for denominators (and multipliers) up to ``q_max``."""
        value = Fraction(literal)
        spec = cls(f"dec:{literal}@{q_max}", "dec", _rational_terms(value),
                   rational=True, q_max=int(q_max), **kw)
        spec._factory = lambda: _rational_terms(value)
        return spec

    def reciprocal(self) -> "IrrationalSpec":
        """1/x, for x > 0, by shifting the coefficient stream."""
        a0 = self.coefficient(0)
        if a0 < 0 or (a0 == 0 and not self.has_coefficient(1)):
            raise BadArguments(f"reciprocal needs a positive value, got {self.label}")
        factory = self._factory
        spec = IrrationalSpec(f"1/({self.label})", self.kind,
                              _reciprocal_terms(factory()), rational=self.is_rational,
                              q_max=self.q_max, value_bits=self.value_bits)
        spec._factory = lambda: _reciprocal_terms(factory())
        return spec

    def __repr__(self) -> str:
        return f"IrrationalSpec({self.label!r})"

    # coefficient / convergent access
    def _extend(self, k: int) -> bool:
        while len(self._terms) <= k:
            if self._ended:
                return False
            try:
                a = next(self._source)
            except StopIteration:
                self._ended = True
                return False
            p = a * self._p[-1] + self._p[-2]
            q = a * self._q[-1] + self._q[-2]
            self._terms.append(a)
            self._p.append(p)
            self._q.append(q)
        return True

    def coefficient(self, k: int) -> int:
        if not self._extend(k):
            raise PrecisionExhausted(
                f"{self.label}: expansion terminates after {len(self._terms)} coefficients")
        return self._terms[k]

    def convergent(self, k: int, *, enforce_q_max: bool = True) -> tuple[int, int]:
        """(p_k, q_k), subject to the denominator budget."""
        self.coefficient(k)
        p, q = self._p[k + 2], self._q[k + 2]
        if enforce_q_max and self.q_max is not None and q > self.q_max:
            raise PrecisionExhausted(
                f"{self.label}: convergent denominator {q} exceeds q_max={self.q_max}")
        if q.bit_length() > self.value_bits:
            raise PrecisionExhausted(f"{self.label}: beyond the {self.value_bits}-bit budget")
        return p, q

    def has_coefficient(self, k: int) -> bool:
        return self._extend(k)

    def __float__(self) -> float:
        lo, hi = self.enclose(60)
        return float((lo + hi) / 2)

    def enclose(self, bits: int) -> tuple[Fraction, Fraction]:
        """Rational ``lo <= x <= hi`` with ``hi - lo <= 2**-bits`` (or exact)."""
        if bits > self.value_bits:
            raise PrecisionExhausted(f"{self.label}: {bits} bits exceeds budget {self.value_bits}")
        k = 0
        while True:
            # a rational spec is exact; q_max bounds multipliers, not its own value
            p, q = self.convergent(k, enforce_q_max=False)
            if not self.has_coefficient(k + 1):
                x = Fraction(p, q)
                return x, x
            p1, q1 = self.convergent(k + 1, enforce_q_max=False)
            if (q * q1).bit_length() > bits + 1:
                a, b = Fraction(p, q), Fraction(p1, q1)
                return (a, b) if a < b else (b, a)
            k += 1

    # certified decisions on linear forms a*x + b
    def sign(self, a, b=0) -> int:
        a, b = as_fraction(a), as_fraction(b)
        if a == 0:
            return (b > 0) - (b < 0)
        bits = 64 + abs(a).numerator.bit_length()
        while True:
            lo, hi = self.enclose(min(bits, self.value_bits))
            u, v = sorted((a * lo + b, a * hi + b))
            if u > 0:
                return 1
            if v < 0:
                return -1
            if lo == hi:
                return 0
            if bits >= self.value_bits:
                raise AmbiguityError(f"sign of {a}*{self.label}+{b} undecided at {bits} bits")
            bits *= 2

    def floor_linear(self, a, b=0) -> int:
        a, b = as_fraction(a), as_fraction(b)
        if a == 0:
            return math.floor(b)
        bits = 64 + abs(a).numerator.bit_length()
        while True:
            lo, hi = self.enclose(min(bits, self.value_bits))
            u, v = sorted((a * lo + b, a * hi + b))
            fu, fv = math.floor(u), math.floor(v)
            if fu == fv:
                return fu
            # v may sit exactly on an integer while the true value is below it
            if lo == hi:
                return fu
            if bits >= self.value_bits:
                raise AmbiguityError(f"floor of {a}*{self.label}+{b} undecided at {bits} bits")
            bits *= 2

    def check_multiplier(self, n) -> None:
        if self.q_max is not None and abs(as_fraction(n)) > self.q_max:
            raise PrecisionExhausted(f"{self.label}: multiplier {n} exceeds q_max={self.q_max}")


_SPEC_RE = re.compile(r"^dec:(?P<lit>[-+0-9.eE/]+)@(?P<qmax>.+)$")


def _parse_int(text: str) -> int:
    text = text.strip()
    if "^" in text:
        base, exp = text.split("^", 1)
        return int(base) ** int(exp)
    if "e" in text.lower() and not text.lower().startswith("0x"):
        return int(float(text))
    return int(text)


def parse_spec(text: str, value_bits: int = DEFAULT_VALUE_BITS) -> IrrationalSpec:
    """Parse ``sqrt:<d>``, ``pi``, ``golden``, ``e``, ``cf:<a0>,<a1>,...``,
    ``dec:<literal>@<q_max>``; also ``golden-inverse`` for 1/golden."""
    text = text.strip()
    kw = {"value_bits": value_bits}
    if text.startswith("sqrt:"):
        return IrrationalSpec.sqrt(int(text[5:]), **kw)
    if text == "pi":
        return IrrationalSpec.pi(**kw)
    if text in ("golden", "phi"):
        return IrrationalSpec.golden(**kw)
    if text in ("golden-inverse", "golden-1"):
        return IrrationalSpec.golden(**kw).reciprocal()
    if text == "e":
        return IrrationalSpec.e(**kw)
    if text.startswith("cf:"):
        try:
            coeffs = [int(t) for t in text[3:].split(",") if t.strip()]
        except ValueError as exc:
            raise BadArguments(f"bad continued fraction {text!r}") from exc
        return IrrationalSpec.from_cf(coeffs, **kw)
    m = _SPEC_RE.match(text)
    if m:
        return IrrationalSpec.decimal(m.group("lit"), _parse_int(m.group("qmax")), **kw)
    raise BadArguments(f"unrecognised number spec {text!r}")


# -- operations ----------------------------------------------------------------

def cf_expand(spec: IrrationalSpec, count: int) -> list[tuple[int, RationalApprox]]:
    """First ``count`` coefficients with their convergents and error bounds."""
    if count <= 0:
        raise BadArguments("count must be positive")
    out = []
    for k in range(count):
        a = spec.coefficient(k)
        p, q = spec.convergent(k)
        if spec.has_coefficient(k + 1):
            err = Fraction(1, q * spec._q[k + 3])
        else:
            err = Fraction(0)
        out.append((a, RationalApprox(p, q, err)))
    return out


def nearest_int_distance(x) -> float:
    """Distance from ``x`` to the nearest integer."""
    if isinstance(x, Fraction):
        return float(abs(x - round(x)))
    x = float(x)
    return abs(x - math.floor(x + 0.5))


def type_exponent_estimate(spec: IrrationalSpec, q_max: int, tail: float = 0.9) -> float:
    """Finite-scale proxy for the irrationality type.

    Returns max log(q_{k+1})/log(q_k) over the consecutive convergents whose
    q_k lies in ``[Q**tail, Q]``, where Q is the largest convergent
    denominator not exceeding ``q_max``.  This is an estimate from finitely
    many convergents; it is not the true supremum.
    """
    qs = []
    k = 0
    while True:
        _, q = spec.convergent(k)
        qs.append(q)
        if q > q_max:
            break
        if not spec.has_coefficient(k + 1):
            raise PrecisionExhausted(f"{spec.label}: rational, type is undefined")
        k += 1
    pairs = [(a, b) for a, b in zip(qs, qs[1:]) if 1 < a <= q_max]
    if not pairs:
        raise PrecisionExhausted(f"{spec.label}: no convergent denominators in (1, {q_max}]")
    top = pairs[-1][0]
    window = [(a, b) for a, b in pairs if a >= top ** tail] or pairs[-1:]
    return max(math.log(b) / math.log(a) for a, b in window)


def _as_points(points) -> np.ndarray:
    x = np.sort(np.asarray(points, dtype=float).ravel())
    if x.size == 0:
        raise BadArguments("discrepancy of an empty sample")
    if x[0] < 0 or x[-1] >= 1:
        raise BadArguments("points must lie in [0, 1)")
    return x


def star_discrepancy(points) -> float:
    """Star discrepancy sup_d |#{x_i < d}/M - d| of a sample in [0, 1)."""
    x = _as_points(points)
    m = x.size
    i = np.arange(1, m + 1)
    return float(max(np.max(i / m - x), np.max(x - (i - 1) / m)))


@dataclass(frozen=True)
class DiscrepancyReport:
    """Star and extreme discrepancy; ``lower == upper`` iff ``exact``."""

    m: int
    star_discrepancy: float
    lower: float
    upper: float
    exact: bool

    @property
    def extreme_discrepancy(self):
        return self.lower if self.exact else (self.lower, self.upper)


def extreme_discrepancy(points, exact_threshold: int = DEFAULT_EXACT_THRESHOLD
                        ) -> DiscrepancyReport:
    """Discrepancy over all subintervals [c, d) of [0, 1).

    For M <= ``exact_threshold`` the exact value
    1/M + max_i(i/M - x_(i)) - min_i(i/M - x_(i)) is returned; above it only
    the certificate D* <= D <= 2 D*.
    """
    x = _as_points(points)
    m = x.size
    ds = star_discrepancy(x)
    if m > exact_threshold:
        return DiscrepancyReport(m, ds, ds, min(1.0, 2 * ds), False)
    t = np.arange(1, m + 1) / m - x
    d = float(1.0 / m + t.max() - t.min())
    return DiscrepancyReport(m, ds, d, d, True)


def frac_affine_certified(gamma: IrrationalSpec, delta, n, guard: int = 48
                          ) -> tuple[float, float]:
    """``{gamma*n + delta}`` with a radius r < 2**-guard enclosing the true value.

    ``delta`` is a rational or a :class:`LinearForm` over ``gamma``.
    """
    gamma.check_multiplier(n)
    form = LinearForm(as_fraction(n)) + LinearForm.of(delta)
    return frac_linear(gamma, form.coef, form.offset, guard)


def frac_linear(spec: IrrationalSpec, a, b, guard: int = 48) -> tuple[float, float]:
    a, b = as_fraction(a), as_fraction(b)
    k = spec.floor_linear(a, b)
    if a == 0 or spec.is_rational:
        lo, hi = spec.enclose(spec.value_bits) if a != 0 else (Fraction(0), Fraction(0))
        v = a * lo + b - k
        return float(v), 0.0
    bits = guard + 2 + abs(a).numerator.bit_length()
    lo, hi = spec.enclose(min(bits, spec.value_bits))
    u, v = sorted((a * lo + b - k, a * hi + b - k))
    mid = (u + v) / 2
    radius = float((v - u) / 2) + abs(float(mid)) * 2.0 ** -52
    return float(mid), radius


def frac_linear_array(spec: IrrationalSpec, coef_num: np.ndarray, coef_den: int, offset,
                      guard: int = 40) -> tuple[np.ndarray, np.ndarray, float]:
    """Vectorised ``x*c_i + offset`` for c_i = coef_num[i]/coef_den.

    Returns (floor, frac, radius): integer floors and fractional parts of an
    approximation whose error is at most ``radius``.  Entries with ``frac``
    within ``radius`` of 0 or 1 may have the wrong floor; callers must decide
    those with :meth:`IrrationalSpec.floor_linear`.
    """
    offset = as_fraction(offset)
    coef_num = np.asarray(coef_num)
    den = math.lcm(int(coef_den), offset.denominator)
    scale = den // int(coef_den)
    cmax = int(np.max(np.abs(coef_num))) if coef_num.size else 1
    if spec.q_max is not None and Fraction(cmax, int(coef_den)) > spec.q_max:
        raise PrecisionExhausted(f"{spec.label}: multiplier exceeds q_max={spec.q_max}")
    bits = guard + max(cmax, 1).bit_length() + 2
    lo, hi = spec.enclose(min(bits, spec.value_bits))
    x = lo if lo == hi else (lo + hi) / 2
    err = (hi - lo) / 2
    p, q = x.numerator, x.denominator
    big = q * den
    b_int = offset.numerator * (den // offset.denominator) * q
    obj = coef_num.astype(object) * (p * scale) + b_int
    floors = obj // big
    rems = obj - floors * big
    frac = (rems.astype(float) / float(big)) if big < 2 ** 1000 else \
        np.array([float(Fraction(int(r), big)) for r in rems])
    radius = float(err * Fraction(cmax, int(coef_den))) + 2.0 ** -50
    return floors.astype(np.int64), frac, radius
