"""Scalar backends for the series kernel.

Two coefficient backends are supported throughout the library:

* ``exact``  -- Gaussian rationals: real and imaginary parts are
  `fractions.Fraction` values.  Ring operations are exact.  The complex
  modulus (the one genuinely irrational quantity) is returned as a
  certified rational enclosure ``[lo, hi]`` of configurable width.
* ``float``  -- plain double precision ``complex`` numbers, used as the
  fast path.  Overflow is detected and flagged, never silently
  propagated as an infinity.

Norm results are carried by :class:`NormValue`, which is an interval in
the exact backend and a point value in the float backend.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

EXACT = "exact"
FLOAT = "float"
BACKENDS = (EXACT, FLOAT)

#: Enclosure width target for certified moduli: width <= 2**-DEFAULT_BITS.
DEFAULT_BITS = 64

RationalLike = int | Fraction


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions, floats and strings like ``3/4`` to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational number")


@dataclass(frozen=True, slots=True)
class Interval:
    """Closed rational interval [lo, hi], used for certified moduli."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: Fraction) -> "Interval":
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __mul__(self, other: "Interval") -> "Interval":
        ps = (self.lo * other.lo, self.lo * other.hi,
              self.hi * other.lo, self.hi * other.hi)
        return Interval(min(ps), max(ps))

    def scale(self, k: Fraction) -> "Interval":
        if k >= 0:
            return Interval(self.lo * k, self.hi * k)
        return Interval(self.hi * k, self.lo * k)

    def max_with(self, other: "Interval") -> "Interval":
        return Interval(max(self.lo, other.lo), max(self.hi, other.hi))

    def contains(self, x: Fraction) -> bool:
        return self.lo <= x <= self.hi

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2


def sqrt_interval(x: Fraction, bits: int = DEFAULT_BITS) -> Interval:
    """Certified enclosure of sqrt(x) for rational x >= 0.

    The width of the returned interval is at most 2**-bits.  Uses
    sqrt(n/d) = sqrt(n*d)/d and integer square roots at scale 2**bits.
    """
    if x < 0:
        raise ValueError(f"sqrt of negative rational {x}")
    if x == 0:
        return Interval.point(Fraction(0))
    n, d = x.numerator, x.denominator
    m = n * d
    s = 1 << bits
    root = isqrt(m * s * s)
    lo = Fraction(root, s * d)
    if root * root == m * s * s:
        return Interval.point(lo)
    return Interval(lo, Fraction(root + 1, s * d))


@dataclass(frozen=True, slots=True)
class ExactComplex:
    """A Gaussian rational: re + im*i with exact rational parts."""

    re: Fraction
    im: Fraction

    @classmethod
    def of(cls, re, im=0) -> "ExactComplex":
        return cls(as_fraction(re), as_fraction(im))

    def __add__(self, other: "ExactComplex") -> "ExactComplex":
        return ExactComplex(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ExactComplex") -> "ExactComplex":
        return ExactComplex(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "ExactComplex":
        return ExactComplex(-self.re, -self.im)

    def __mul__(self, other: "ExactComplex") -> "ExactComplex":
        return ExactComplex(self.re * other.re - self.im * other.im,
                            self.re * other.im + self.im * other.re)

    def __truediv__(self, other: "ExactComplex") -> "ExactComplex":
        d = other.abs2()
        if d == 0:
            raise ZeroDivisionError("division by exact complex zero")
        return ExactComplex((self.re * other.re + self.im * other.im) / d,
                            (self.im * other.re - self.re * other.im) / d)

    def conjugate(self) -> "ExactComplex":
        return ExactComplex(self.re, -self.im)

    def abs2(self) -> Fraction:
        """|z|^2, exact."""
        return self.re * self.re + self.im * self.im

    def abs_interval(self, bits: int = DEFAULT_BITS) -> Interval:
        return sqrt_interval(self.abs2(), bits)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def round_dyadic(self, bits: int) -> "ExactComplex":
        """Round both parts to denominator 2**bits.

        Keeps Newton iterates from accumulating enormous denominators.
        """
        s = 1 << bits
        return ExactComplex(Fraction(round(self.re * s), s),
                            Fraction(round(self.im * s), s))


EXACT_ZERO = ExactComplex(Fraction(0), Fraction(0))
EXACT_ONE = ExactComplex(Fraction(1), Fraction(0))


def exact_from_complex(z: complex) -> ExactComplex:
    """Lossless conversion: every double is a rational number."""
    return ExactComplex(Fraction(z.real), Fraction(z.imag))


def scalar_zero(backend: str):
    return EXACT_ZERO if backend == EXACT else 0j


def scalar_one(backend: str):
    return EXACT_ONE if backend == EXACT else 1 + 0j


def check_backend(backend: str) -> str:
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}, expected one of {BACKENDS}")
    return backend


def coerce_scalar(backend: str, value):
    """Coerce assorted Python numbers to the backend's scalar type."""
    if backend == EXACT:
        if isinstance(value, ExactComplex):
            return value
        if isinstance(value, complex):
            return exact_from_complex(value)
        return ExactComplex.of(value)
    if isinstance(value, ExactComplex):
        return value.to_complex()
    return complex(value)


def scalar_is_zero(x) -> bool:
    return x.is_zero() if isinstance(x, ExactComplex) else x == 0


def scalar_abs2(x):
    """|x|^2: a Fraction for ExactComplex, a float otherwise."""
    if isinstance(x, ExactComplex):
        return x.abs2()
    return x.real * x.real + x.imag * x.imag


def format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_scalar(x) -> str:
    """Render a scalar in the ``a+bi`` literal form used by the CLI."""
    if isinstance(x, ExactComplex):
        re_s, im = format_rational(x.re), x.im
        if im == 0:
            return re_s
        im_s = format_rational(abs(im))
        im_s = "" if im_s == "1" else im_s
        sign = "+" if im > 0 else "-"
        if x.re == 0:
            return f"{'-' if im < 0 else ''}{im_s}i"
        return f"{re_s}{sign}{im_s}i"
    re, im = x.real, x.imag
    if im == 0:
        return repr(re)
    if re == 0:
        return f"{im!r}i"
    sign = "+" if im >= 0 else "-"
    return f"{re!r}{sign}{abs(im)!r}i"


@dataclass(frozen=True, slots=True)
class NormValue:
    """A certified nonnegative norm result.

    In the exact backend ``lo``/``hi`` are Fractions enclosing the true
    value.  In the float backend both equal the computed point value.
    ``overflow`` marks a float computation that left the finite range.
    """

    backend: str
    lo: Fraction | float
    hi: Fraction | float
    overflow: bool = False

    @classmethod
    def exact(cls, iv: Interval) -> "NormValue":
        return cls(EXACT, iv.lo, iv.hi)

    @classmethod
    def exact_point(cls, x: Fraction) -> "NormValue":
        return cls(EXACT, x, x)

    @classmethod
    def floating(cls, v: float) -> "NormValue":
        if not math.isfinite(v):
            return cls(FLOAT, math.inf, math.inf, overflow=True)
        return cls(FLOAT, v, v)

    @property
    def finite(self) -> bool:
        return not self.overflow

    @property
    def value(self) -> float:
        """Point estimate for display."""
        if self.overflow:
            return math.inf
        return float((self.lo + self.hi) / 2)

    def interval(self) -> Interval:
        if self.backend != EXACT:
            raise ValueError("interval view requires the exact backend")
        return Interval(self.lo, self.hi)

    def _pair(self, other: "NormValue") -> None:
        if self.backend != other.backend:
            raise ValueError("norm arithmetic across backends")

    def __add__(self, other: "NormValue") -> "NormValue":
        self._pair(other)
        if self.overflow or other.overflow:
            return NormValue(self.backend, math.inf, math.inf, overflow=True)
        return NormValue(self.backend, self.lo + other.lo, self.hi + other.hi)

    def __mul__(self, other: "NormValue") -> "NormValue":
        self._pair(other)
        if self.overflow or other.overflow:
            return NormValue(self.backend, math.inf, math.inf, overflow=True)
        return NormValue(self.backend, self.lo * other.lo, self.hi * other.hi)

    def scale(self, k) -> "NormValue":
        if k < 0:
            raise ValueError("norms scale by nonnegative factors")
        if self.overflow:
            return self
        return NormValue(self.backend, self.lo * k, self.hi * k)

    def max_with(self, other: "NormValue") -> "NormValue":
        self._pair(other)
        if self.overflow or other.overflow:
            return NormValue(self.backend, math.inf, math.inf, overflow=True)
        return NormValue(self.backend, max(self.lo, other.lo), max(self.hi, other.hi))

    def certified_le(self, other: "NormValue | Fraction | int") -> bool:
        """True when the enclosed value is provably <= other."""
        if isinstance(other, NormValue):
            return self.finite and other.finite and self.hi <= other.lo
        return self.finite and self.hi <= other

    def certified_violation_le(self, other: "NormValue | Fraction | int") -> bool:
        """True when the enclosed value is provably > other."""
        if isinstance(other, NormValue):
            return self.finite and other.finite and self.lo > other.hi
        return self.finite and self.lo > other
