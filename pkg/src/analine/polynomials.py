"""Dense univariate polynomials over the Gaussian rationals.

Coefficients ascend from degree 0 and are kept trimmed, so the zero
polynomial is the empty tuple and equality and hashing are structural.
This is the shared element type for spectrum relations, region
constraints and the symbolic Huber-pair site.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError
from .scalars import EXACT, ExactComplex
from .series import format_series, make_series, parse_series


@dataclass(frozen=True, slots=True)
class Poly:
    coeffs: tuple[ExactComplex, ...]

    # -- structure ------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def leading(self) -> ExactComplex:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, n: int) -> ExactComplex:
        if 0 <= n < len(self.coeffs):
            return self.coeffs[n]
        return ExactComplex.of(0)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return _trim([self.coeff(i) + other.coeff(i) for i in range(n)])

    def __sub__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return _trim([self.coeff(i) - other.coeff(i) for i in range(n)])

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return ZERO
        out = [ExactComplex.of(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return _trim(out)

    def scale(self, k: ExactComplex) -> "Poly":
        if k.is_zero():
            return ZERO
        return Poly(tuple(c * k for c in self.coeffs))

    def monic(self) -> "Poly":
        """Divide by the leading coefficient (identity on zero)."""
        if self.is_zero():
            return self
        lead = self.leading()
        if lead == ExactComplex.of(1):
            return self
        return self.scale(ExactComplex.of(1) / lead)

    def derivative(self) -> "Poly":
        return _trim([self.coeffs[i] * ExactComplex.of(i)
                      for i in range(1, len(self.coeffs))])

    def eval(self, z: ExactComplex) -> ExactComplex:
        acc = ExactComplex.of(0)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def eval_complex(self, z: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c.to_complex()
        return acc

    def to_complex_list(self) -> list[complex]:
        """Ascending coefficients as machine complexes."""
        return [c.to_complex() for c in self.coeffs]

    def shift(self, k: int) -> "Poly":
        """Multiply by T**k."""
        if self.is_zero():
            return self
        return Poly((ExactComplex.of(0),) * k + self.coeffs)


def _trim(coeffs: list[ExactComplex]) -> Poly:
    n = len(coeffs)
    while n > 0 and coeffs[n - 1].is_zero():
        n -= 1
    return Poly(tuple(coeffs[:n]))


ZERO = Poly(())
ONE = Poly((ExactComplex.of(1),))
T = Poly((ExactComplex.of(0), ExactComplex.of(1)))


def constant(c) -> Poly:
    c = c if isinstance(c, ExactComplex) else ExactComplex.of(c)
    return _trim([c])


def from_pairs(pairs: dict[int, object]) -> Poly:
    if not pairs:
        return ZERO
    top = max(pairs)
    out = [ExactComplex.of(0)] * (top + 1)
    for n, c in pairs.items():
        if n < 0:
            raise ValueError("polynomials have nonnegative support")
        out[n] = c if isinstance(c, ExactComplex) else ExactComplex.of(c)
    return _trim(out)


def from_ints(*coeffs) -> Poly:
    """Ascending integer coefficients, e.g. from_ints(1, 0, -1) = 1 - T^2."""
    return _trim([ExactComplex.of(c) for c in coeffs])


def divmod_poly(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Euclidean division over the coefficient field."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a.coeffs)
    db, lead = b.degree, b.leading()
    if a.degree < db:
        return ZERO, a
    quo = [ExactComplex.of(0)] * (a.degree - db + 1)
    for k in range(a.degree - db, -1, -1):
        c = rem[k + db] / lead
        quo[k] = c
        if not c.is_zero():
            for j, bc in enumerate(b.coeffs):
                rem[k + j] = rem[k + j] - c * bc
    return _trim(quo), _trim(rem[:db])


def gcd_poly(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero when both arguments are zero)."""
    while not b.is_zero():
        a, b = b, divmod_poly(a, b)[1]
    return a.monic()


def xgcd_poly(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Extended Euclid: returns (g, u, v) with u*a + v*b = g, g monic."""
    r0, r1 = a, b
    u0, u1 = ONE, ZERO
    v0, v1 = ZERO, ONE
    while not r1.is_zero():
        q, r = divmod_poly(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    if r0.is_zero():
        return ZERO, ZERO, ZERO
    lead = r0.leading()
    inv = constant(ExactComplex.of(1) / lead)
    return r0.monic(), u0 * inv, v0 * inv


def bezout_family(fs: list[Poly]) -> list[Poly] | None:
    """Coefficients c_i with sum c_i f_i = 1, or None if the ideal is proper.

    Folds pairwise extended Euclid over the family.
    """
    fs = [f for f in fs]
    if not fs:
        return None
    g = fs[0]
    coeffs = [ONE]
    for f in fs[1:]:
        g2, u, v = xgcd_poly(g, f)
        coeffs = [c * u for c in coeffs]
        coeffs.append(v)
        g = g2
    if g.is_zero() or not g.is_constant():
        return None
    inv = constant(ExactComplex.of(1) / g.leading())
    return [c * inv for c in coeffs]


def generates_unit_ideal(fs: list[Poly]) -> bool:
    witness = bezout_family(fs)
    return witness is not None


def squarefree_part(p: Poly) -> Poly:
    """p / gcd(p, p'), monic: same roots without multiplicity."""
    if p.is_zero():
        return ZERO
    g = gcd_poly(p, p.derivative())
    if g.is_constant():
        return p.monic()
    q, r = divmod_poly(p, g)
    assert r.is_zero()
    return q.monic()


def ord_at(p: Poly, z: ExactComplex) -> int | None:
    """Order of vanishing of p at z; None for the zero polynomial.

    Repeated synthetic division by (T - z): one Horner pass yields both
    the remainder p(z) and the quotient, with no coefficient division.
    """
    if p.is_zero():
        return None
    order = 0
    coeffs = list(p.coeffs)
    while True:
        carries = []
        carry = ExactComplex.of(0)
        for a in reversed(coeffs):
            carry = carry * z + a
            carries.append(carry)
        if not carries[-1].is_zero():
            return order
        order += 1
        coeffs = carries[-2::-1]        # quotient, ascending degrees
        if not coeffs:
            return order


# -- the shared literal format -----------------------------------------

def parse_poly(text: str) -> Poly:
    """Parse the ``deg:coeff`` literal, degrees >= 0.

    Commas may stand in for whitespace so polynomials can live inside
    ``key=value`` fixture fields.
    """
    s = parse_series(text.replace(",", " "), backend=EXACT)
    if s.coeffs and s.low < 0:
        raise ParseError("polynomial literals need nonnegative degrees")
    out = [ExactComplex.of(0)] * (s.high + 1 if s.coeffs else 0)
    for i, c in enumerate(s.coeffs):
        out[s.low + i] = c
    return _trim(out)


def format_poly(p: Poly, compact: bool = False) -> str:
    s = make_series({i: c for i, c in enumerate(p.coeffs)}, 1, EXACT)
    text = format_series(s, with_radius=False)
    return text.replace(" ", ",") if compact else text


def poly_to_series(p: Poly, radius, backend: str = EXACT):
    coeffs = {i: c for i, c in enumerate(p.coeffs) if not c.is_zero()}
    return make_series(coeffs, radius, backend)
