"""Truncated Laurent series with weighted l1 norms.

A :class:`WeightedSeries` stores finitely many complex coefficients
a_n for degrees n in [low, low + len), a weight radius r > 0, and an
optional certified bound on the weighted norm of all omitted terms.
The norm of interest is

    ||f||_r = sum_n |a_n| r^n   (+ tail bound, when present)

which is exactly the stage norm of the disc algebras the analytic rings
are built from.  All values are immutable; operations are pure.

The shared literal format is ``deg:coeff`` pairs plus an optional
``r=<rational>`` token, e.g. ``0:1 1:-1/2 -1:3i r=2``.  Parsing is
whitespace tolerant and serialization round-trips exactly in the exact
backend.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import (BackendMismatchError, CapExceededError, EvalDomainError,
                     ParseError, RadiusMismatchError)
from .scalars import (DEFAULT_BITS, EXACT, ExactComplex, Interval,
                      NormValue, as_fraction, check_backend, coerce_scalar,
                      format_rational, format_scalar, scalar_is_zero,
                      scalar_zero, sqrt_interval)

#: Default truncation cap: widest allowed degree span of a stored series.
DEGREE_CAP = 256


@dataclass(frozen=True, slots=True)
class WeightedSeries:
    backend: str
    low: int
    coeffs: tuple
    radius: Fraction | float
    tail: Fraction | float | None = None

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("weight radius must be positive")
        if self.tail is not None and self.tail < 0:
            raise ValueError("tail bound must be nonnegative")

    # -- structure ----------------------------------------------------

    @property
    def high(self) -> int:
        """Largest stored degree (low - 1 when no coefficients)."""
        return self.low + len(self.coeffs) - 1

    def coeff(self, n: int):
        if self.low <= n <= self.high:
            return self.coeffs[n - self.low]
        return scalar_zero(self.backend)

    def support(self) -> list[int]:
        return [self.low + i for i, c in enumerate(self.coeffs)
                if not scalar_is_zero(c)]

    def is_zero(self) -> bool:
        return all(scalar_is_zero(c) for c in self.coeffs)

    def is_polynomial(self) -> bool:
        """Support in degrees >= 0 and no unaccounted tail."""
        sup = self.support()
        return (not self.tail) and (not sup or sup[0] >= 0)

    def trim(self) -> "WeightedSeries":
        """Drop zero coefficients at both ends.  Idempotent, norm preserving."""
        i, j = 0, len(self.coeffs)
        while i < j and scalar_is_zero(self.coeffs[i]):
            i += 1
        while j > i and scalar_is_zero(self.coeffs[j - 1]):
            j -= 1
        if i == 0 and j == len(self.coeffs):
            return self
        return WeightedSeries(self.backend, self.low + i, self.coeffs[i:j],
                              self.radius, self.tail)

    def same_series(self, other: "WeightedSeries") -> bool:
        """Coefficientwise equality after trimming (radius ignored)."""
        a, b = self.trim(), other.trim()
        if a.backend != b.backend:
            return False
        lo = min(a.low, b.low, 0)
        hi = max(a.high, b.high, lo)
        return all(a.coeff(n) == b.coeff(n) for n in range(lo, hi + 1))

    # -- views --------------------------------------------------------

    def nonneg_part(self) -> "WeightedSeries":
        """Coefficients in degrees >= 0 (any tail bound is kept: sound)."""
        s = self.trim()
        if s.low >= 0:
            return s
        cut = -s.low
        return WeightedSeries(s.backend, 0, s.coeffs[cut:], s.radius,
                              s.tail).trim()

    def negative_part(self) -> "WeightedSeries":
        """Coefficients in degrees <= -1 (any tail bound is kept: sound)."""
        s = self.trim()
        if s.low >= 0:
            return WeightedSeries(s.backend, 0, (), s.radius, s.tail)
        cut = min(len(s.coeffs), -s.low)
        return WeightedSeries(s.backend, s.low, s.coeffs[:cut], s.radius,
                              s.tail).trim()

    def shift(self, k: int) -> "WeightedSeries":
        """Multiply by T**k (degree shift)."""
        if not self.coeffs:
            return self
        return WeightedSeries(self.backend, self.low + k, self.coeffs,
                              self.radius, self.tail)

    def reverse_degrees(self) -> "WeightedSeries":
        """Send the coefficient of T**n to T**-n (radius untouched)."""
        return WeightedSeries(self.backend, -self.high,
                              tuple(reversed(self.coeffs)), self.radius,
                              self.tail)

    def with_radius(self, r) -> "WeightedSeries":
        """Rebind the weight radius.

        Tail certificates do not transfer between radii for Laurent
        support, so a nonzero tail refuses any genuine coercion.
        """
        r = as_fraction(r) if self.backend == EXACT else float(r)
        if r == self.radius:
            return self
        if self.tail:
            raise RadiusMismatchError(
                "cannot coerce the radius of a series carrying a tail bound")
        if r <= 0:
            raise ValueError("weight radius must be positive")
        return WeightedSeries(self.backend, self.low, self.coeffs, r, self.tail)


def make_series(coeffs: Mapping[int, object], radius, backend: str = EXACT,
                tail=None) -> WeightedSeries:
    """Build a series from a degree -> coefficient mapping."""
    check_backend(backend)
    if backend == EXACT:
        radius = as_fraction(radius)
        tail = as_fraction(tail) if tail is not None else None
    else:
        radius = float(radius)
        tail = float(tail) if tail is not None else None
    if not coeffs:
        return WeightedSeries(backend, 0, (), radius, tail)
    degs = sorted(coeffs)
    low, high = degs[0], degs[-1]
    data = [scalar_zero(backend)] * (high - low + 1)
    for n, c in coeffs.items():
        data[n - low] = coerce_scalar(backend, c)
    return WeightedSeries(backend, low, tuple(data), radius, tail).trim()


def zero_series(radius, backend: str = EXACT) -> WeightedSeries:
    return make_series({}, radius, backend)


def one_series(radius, backend: str = EXACT) -> WeightedSeries:
    return make_series({0: 1}, radius, backend)


def monomial(n: int, radius, backend: str = EXACT, coeff=1) -> WeightedSeries:
    return make_series({n: coeff}, radius, backend)


# -- arithmetic -------------------------------------------------------

def _common(a: WeightedSeries, b: WeightedSeries) -> tuple:
    if a.backend != b.backend:
        raise BackendMismatchError(
            f"mixed backends: {a.backend} vs {b.backend}")
    if a.radius == b.radius:
        return a, b
    # Documented coercion: recompute at the smaller radius.  Only legal
    # when neither operand carries a tail bound.
    r = min(a.radius, b.radius)
    return a.with_radius(r), b.with_radius(r)


def add(a: WeightedSeries, b: WeightedSeries) -> WeightedSeries:
    """Coefficientwise sum; tail bounds add."""
    a, b = _common(a, b)
    if not a.coeffs:
        lo, hi = (b.low, b.high) if b.coeffs else (0, -1)
    elif not b.coeffs:
        lo, hi = a.low, a.high
    else:
        lo, hi = min(a.low, b.low), max(a.high, b.high)
    data = tuple(a.coeff(n) + b.coeff(n) for n in range(lo, hi + 1))
    tail = None
    if a.tail is not None or b.tail is not None:
        tail = (a.tail or 0) + (b.tail or 0)
    return WeightedSeries(a.backend, lo, data, a.radius, tail).trim()


def neg(a: WeightedSeries) -> WeightedSeries:
    return WeightedSeries(a.backend, a.low, tuple(-c for c in a.coeffs),
                          a.radius, a.tail)


def sub(a: WeightedSeries, b: WeightedSeries) -> WeightedSeries:
    return add(a, neg(b))


def scale(a: WeightedSeries, k) -> WeightedSeries:
    """Scalar multiple; the tail bound scales by an upper bound of |k|."""
    k = coerce_scalar(a.backend, k)
    tail = a.tail
    if tail:
        if a.backend == EXACT:
            tail = tail * k.abs_interval().hi
        else:
            tail = tail * abs(k)
    return WeightedSeries(a.backend, a.low, tuple(c * k for c in a.coeffs),
                          a.radius, tail)


def _term_norm_upper(backend, coeff, rpow):
    if backend == EXACT:
        return coeff.abs_interval().hi * rpow
    return abs(coeff) * rpow


def mul(a: WeightedSeries, b: WeightedSeries, cap: int = DEGREE_CAP,
        track_tail: bool = False) -> WeightedSeries:
    """Cauchy product, truncated at the degree cap.

    When the exact product has degree span beyond ``cap``, the excess
    terms are folded into the tail bound if ``track_tail`` is set and
    otherwise raise :class:`CapExceededError`.
    """
    a, b = _common(a, b)
    at, bt = a.trim(), b.trim()
    if not at.coeffs or not bt.coeffs:
        tail = _mul_tail(a, b, at, bt)
        return WeightedSeries(a.backend, 0, (), a.radius, tail)
    lo = at.low + bt.low
    hi = at.high + bt.high
    data = [scalar_zero(a.backend)] * (hi - lo + 1)
    for i, ca in enumerate(at.coeffs):
        if scalar_is_zero(ca):
            continue
        for j, cb in enumerate(bt.coeffs):
            data[i + j] = data[i + j] + ca * cb
    tail = _mul_tail(a, b, at, bt)
    if hi - lo + 1 > cap:
        if not track_tail:
            raise CapExceededError(
                f"product span {hi - lo + 1} exceeds cap {cap}; "
                "enable tail tracking to fold the excess")
        keep = cap
        folded = data[keep:]
        extra = sum((_term_norm_upper(a.backend, c, a.radius ** (lo + keep + k))
                     for k, c in enumerate(folded)),
                    start=(Fraction(0) if a.backend == EXACT else 0.0))
        tail = (tail or 0) + extra
        data = data[:keep]
        hi = lo + keep - 1
    return WeightedSeries(a.backend, lo, tuple(data), a.radius, tail).trim()


def _mul_tail(a, b, at, bt):
    """Tail bound of a product: cross terms against stored-part norms."""
    if a.tail is None and b.tail is None:
        return None
    na = weighted_norm(WeightedSeries(a.backend, at.low, at.coeffs, a.radius))
    nb = weighted_norm(WeightedSeries(b.backend, bt.low, bt.coeffs, b.radius))
    ta = a.tail or 0
    tb = b.tail or 0
    return ta * nb.hi + tb * na.hi + ta * tb


# -- norms ------------------------------------------------------------

def weighted_norm(s: WeightedSeries, bits: int = DEFAULT_BITS,
                  radius=None) -> NormValue:
    """sum_n |a_n| r^n over stored coefficients plus the tail bound.

    Exact backend: a certified rational enclosure.  Float backend: a
    point value with overflow flagged, never a silent infinity.
    """
    r = s.radius if radius is None else radius
    if s.backend == EXACT:
        r = as_fraction(r)
        total = Interval.point(Fraction(0))
        for i, c in enumerate(s.coeffs):
            if scalar_is_zero(c):
                continue
            n = s.low + i
            # sqrt(|a|^2 * r^(2n)) in one enclosure per term
            total = total + sqrt_interval(c.abs2() * r ** (2 * n), bits)
        if s.tail:
            total = total + Interval.point(as_fraction(s.tail))
        return NormValue.exact(total)
    r = float(r)
    acc = 0.0
    for i, c in enumerate(s.coeffs):
        if c != 0:
            acc += abs(c) * r ** (s.low + i)
    if s.tail:
        acc += s.tail
    return NormValue.floating(acc)


def norm_upper(s: WeightedSeries, bits: int = DEFAULT_BITS):
    return weighted_norm(s, bits).hi


# -- evaluation -------------------------------------------------------

def eval_series(s: WeightedSeries, z) -> object:
    """Horner evaluation at z.

    Polynomials (support >= 0, no tail) evaluate anywhere.  Otherwise
    the certified domain is |z| <= r, checked exactly in the exact
    backend, and negative support additionally requires z != 0.
    """
    z = coerce_scalar(s.backend, z)
    st = s.trim()
    if not st.is_polynomial():
        if s.backend == EXACT:
            ok = z.abs2() <= as_fraction(s.radius) ** 2
        else:
            ok = abs(z) <= s.radius
        if not ok:
            raise EvalDomainError(
                "evaluation point outside |z| <= r for a non-polynomial series")
    pos = st.nonneg_part()
    acc = scalar_zero(s.backend)
    for c in reversed(pos.coeffs):
        acc = acc * z + c
    if pos.coeffs and pos.low > 0:
        for _ in range(pos.low):
            acc = acc * z
    neg_p = st.negative_part()
    if neg_p.coeffs:
        if scalar_is_zero(z):
            raise EvalDomainError("negative support cannot be evaluated at 0")
        inv = (ExactComplex.of(1) if s.backend == EXACT else 1 + 0j) / z
        # sum c_n z^n over n in [low, -1]: Horner in 1/z, innermost term
        # the most negative degree, one trailing 1/z factor at the end
        w = scalar_zero(s.backend)
        for c in neg_p.coeffs:              # degree low, low+1, ..., -1
            w = w * inv + c
        acc = acc + w * inv
    return acc


# -- parsing / serialization ------------------------------------------

def parse_complex_literal(text: str) -> ExactComplex:
    """Parse ``a+bi`` with rational or decimal parts, e.g. ``-1/2+3i``."""
    t = text.strip()
    if not t:
        raise ParseError("empty coefficient literal")
    if not t.endswith("i"):
        try:
            return ExactComplex(_part_to_fraction(t), Fraction(0))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad coefficient literal {text!r}") from None
    body = t[:-1]
    # pure imaginary: "i", "-i", "3i", "1/2i"
    split = _imag_split(body)
    if split is None:
        raise ParseError(f"bad coefficient literal {text!r}")
    re_part, im_part = split
    try:
        re_f = _part_to_fraction(re_part) if re_part else Fraction(0)
        if im_part in ("", "+"):
            im_f = Fraction(1)
        elif im_part == "-":
            im_f = Fraction(-1)
        else:
            im_f = _part_to_fraction(im_part)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad coefficient literal {text!r}") from None
    return ExactComplex(re_f, im_f)


def _imag_split(body: str) -> tuple[str, str] | None:
    """Split the text before 'i' into (real, imaginary) pieces."""
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-" and body[k - 1] not in "/+-.eE":
            return body[:k], body[k:]
    return "", body


def _part_to_fraction(text: str) -> Fraction:
    return Fraction(text)


def parse_series_tagged(text: str, backend: str = EXACT,
                        radius=None) -> tuple[WeightedSeries, dict[str, str]]:
    """Parse the ``deg:coeff`` literal format, returning extra tags.

    ``key=value`` tokens (``r=``, ``ring=``, ``witness=``, ...) are
    collected into the tag dict; ``r=`` also sets the radius.  When no
    radius is given anywhere it defaults to 1.
    """
    check_backend(backend)
    coeffs: dict[int, object] = {}
    tags = {}
    for tok in text.split():
        if "=" in tok and ":" not in tok:
            key, _, val = tok.partition("=")
            tags[key.strip()] = val.strip()
            continue
        deg_s, sep, coeff_s = tok.partition(":")
        if not sep:
            raise ParseError(f"expected deg:coeff, got {tok!r}",
                             position=text.find(tok))
        try:
            deg = int(deg_s)
        except ValueError:
            raise ParseError(f"bad degree {deg_s!r}",
                             position=text.find(tok)) from None
        c = parse_complex_literal(coeff_s)
        prev = coeffs.get(deg)
        coeffs[deg] = c if prev is None else prev + c
    if "r" in tags:
        radius = Fraction(tags["r"])
    if radius is None:
        radius = Fraction(1)
    out = make_series(coeffs, radius, backend)
    return out, tags


def parse_series(text: str, backend: str = EXACT, radius=None) -> WeightedSeries:
    """Parse the ``deg:coeff`` literal format (tags other than r= ignored)."""
    out, _ = parse_series_tagged(text, backend, radius)
    return out


def format_series(s: WeightedSeries, with_radius: bool = True) -> str:
    st = s.trim()
    parts = [f"{st.low + i}:{format_scalar(c)}"
             for i, c in enumerate(st.coeffs) if not scalar_is_zero(c)]
    if not parts:
        parts = ["0:0"]
    if with_radius:
        if s.backend == EXACT:
            parts.append(f"r={format_rational(as_fraction(s.radius))}")
        else:
            parts.append(f"r={s.radius!r}")
    return " ".join(parts)
