"""Rational functions on the projective line over the closure of F_p, and places."""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

from .fields import GF, common_field, field, is_prime
from .poly import FF, Poly, factor, minimal_polynomial, roots


@dataclass(frozen=True)
class PrimeContext:
    """The residue characteristic p together with v_K(p)."""

    p: int
    vKp: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.vKp <= 0:
            raise ValueError("vKp must be positive")
        if self.vKp % (self.p - 1):
            raise ValueError(f"p-1={self.p - 1} must divide vKp={self.vKp}")

    @property
    def vLambda(self) -> int:
        return self.vKp // (self.p - 1)


# -- places --

@functools.cache
def _conjugates(poly: tuple[int, ...], p: int) -> tuple[FF, ...]:
    """Roots of an irreducible F_p-polynomial, ordered alpha, alpha^p, alpha^(p^2), ..."""
    rs = roots(Poly(field(p, 1), poly))
    if len(rs) != len(poly) - 1:
        raise ValueError(f"{poly} is not irreducible and separable over F_{p}")
    alpha = min(rs)
    out = [alpha]
    for _ in range(len(rs) - 1):
        out.append(out[-1].frobenius())
    return tuple(out)


@dataclass(frozen=True, order=True)
class Place:
    """A closed geometric point of P^1: infinity, or root ``index`` of ``poly``.

    ``poly`` is a monic irreducible polynomial over F_p (little-endian ints);
    its roots are numbered by successive p-th powers of the smallest root.
    """

    p: int
    poly: tuple[int, ...] = ()
    index: int = 0

    def __post_init__(self):
        if self.poly and not 0 <= self.index < len(self.poly) - 1:
            raise ValueError(f"root index {self.index} out of range for {self.poly}")

    @classmethod
    def infinity(cls, p: int) -> "Place":
        return cls(p)

    @classmethod
    def at(cls, a: FF | int, p: int | None = None) -> "Place":
        if isinstance(a, int):
            a = FF.of(p, a)
        poly = minimal_polynomial(a)
        conj = _conjugates(poly, a.p)
        return cls(a.p, poly, conj.index(a))

    @property
    def is_infinity(self) -> bool:
        return not self.poly

    @property
    def degree(self) -> int:
        return max(1, len(self.poly) - 1)

    @property
    def point(self) -> FF:
        if self.is_infinity:
            raise ValueError("infinity has no affine coordinate")
        return _conjugates(self.poly, self.p)[self.index]

    def frobenius(self, k: int = 1) -> "Place":
        """Image under x -> x^(p^k)."""
        if self.is_infinity:
            return self
        d = len(self.poly) - 1
        return Place(self.p, self.poly, (self.index + k) % d)

    def sort_key(self) -> tuple:
        return (0,) if self.is_infinity else (1, len(self.poly), self.poly, self.index)

    def __repr__(self):
        if self.is_infinity:
            return "inf"
        if len(self.poly) == 2:
            return str((-self.poly[0]) % self.p)
        return f"root{self.index}{list(self.poly)}"


# -- rational functions --

class RationalFunction:
    """num/den in coprime form with monic denominator; immutable."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.const(num.F, 1)
        if not den:
            raise ZeroDivisionError("zero denominator")
        F = common_field(num.F, den.F)
        num, den = num.lift(F), den.lift(F)
        if not num:
            num, den = Poly(F, []), Poly.const(F, 1)
        else:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num.exact_div(g), den.exact_div(g)
            lc = F.inv(den.lead)
            num, den = num.scale(lc), den.scale(lc)
        F = common_field(num.minimal_field(), den.minimal_field())
        G = num.F
        self.num = Poly(F, [G.descend(a, F) for a in num.c])
        self.den = Poly(F, [G.descend(a, F) for a in den.c])

    @classmethod
    def const(cls, a: FF) -> "RationalFunction":
        return cls(Poly(a.F, [a.v]))

    @classmethod
    def t(cls, p: int) -> "RationalFunction":
        return cls(Poly.t(field(p, 1)))

    @property
    def F(self) -> GF:
        return self.num.F

    @property
    def p(self) -> int:
        return self.num.F.p

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if not other:
            raise ZeroDivisionError("division by the zero function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __pow__(self, e: int):
        if e < 0:
            return RationalFunction(self.den ** (-e), self.num ** (-e))
        return RationalFunction(self.num**e, self.den**e)

    def derivative(self) -> "RationalFunction":
        n, d = self.num, self.den
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d)

    def frobenius(self, k: int = 1) -> "RationalFunction":
        return RationalFunction(self.num.frobenius(k), self.den.frobenius(k))

    def coefficient_degree(self) -> int:
        """Degree over F_p of the smallest field containing all coefficients."""
        return self.F.n

    def __repr__(self):
        if self.den.degree == 0:
            return f"({self.num!r})"
        return f"({self.num!r})/({self.den!r})"


def _valuation_at(f: Poly, a: FF) -> int:
    F = common_field(f.F, a.F)
    g = f.lift(F)
    lin = Poly.linear(a).lift(F)
    k = 0
    while g:
        q, r = g.divmod(lin)
        if r:
            break
        g = q
        k += 1
    return k


def order_at(f: RationalFunction, z: Place) -> int:
    """Valuation of the nonzero function f at the place z."""
    if f.is_zero():
        raise ValueError("order of the zero function is undefined")
    if z.is_infinity:
        return f.den.degree - f.num.degree
    a = z.point
    return _valuation_at(f.num, a) - _valuation_at(f.den, a)


def differential_order(coef: RationalFunction, z: Place) -> int:
    """Order at z of the differential coef(t) dt (dt has a double pole at infinity)."""
    return order_at(coef, z) - (2 if z.is_infinity else 0)


def _poly_zeros(f: Poly) -> list[tuple[Place, int]]:
    out = []
    for g, e in factor(f):
        d = g.degree
        F = field(g.F.p, g.F.n * d)
        from .poly import equal_degree

        for h in equal_degree(g.lift(F).monic(), 1):
            out.append((Place.at(FF(F, F.neg(h.c[0]))), e))
    out.sort(key=lambda pe: pe[0].sort_key())
    return out


def zeros_with_multiplicity(f: RationalFunction) -> list[tuple[Place, int]]:
    """Affine geometric zeros of f with their orders."""
    if f.is_zero():
        raise ValueError("zeros of the zero function are undefined")
    return _poly_zeros(f.num)


def poles_with_multiplicity(f: RationalFunction) -> list[tuple[Place, int]]:
    if f.is_zero():
        raise ValueError("poles of the zero function are undefined")
    return _poly_zeros(f.den)


def divisor(f: RationalFunction) -> dict[Place, int]:
    """All places (infinity included) where f has nonzero order."""
    out = {z: e for z, e in zeros_with_multiplicity(f)}
    for z, e in poles_with_multiplicity(f):
        out[z] = -e
    inf = Place.infinity(f.p)
    k = order_at(f, inf)
    if k:
        out[inf] = k
    return dict(sorted(out.items(), key=lambda ze: ze[0].sort_key()))


def differential_divisor(coef: RationalFunction) -> dict[Place, int]:
    out = {z: e for z, e in divisor(coef).items() if not z.is_infinity}
    inf = Place.infinity(coef.p)
    k = differential_order(coef, inf)
    if k:
        out[inf] = k
    return dict(sorted(out.items(), key=lambda ze: ze[0].sort_key()))


def place_coordinate_field(places, F: GF) -> GF:
    """Smallest field containing F and the coordinates of the given places."""
    n = F.n
    for z in places:
        if not z.is_infinity:
            n = math.lcm(n, z.degree)
    return field(F.p, n)


__all__ = [
    "GaloisElement",
    "FF",
    "Poly",
    "PrimeContext",
    "Place",
    "RationalFunction",
    "divisor",
    "differential_divisor",
    "differential_order",
    "field",
    "order_at",
    "poles_with_multiplicity",
    "zeros_with_multiplicity",
]


@dataclass(frozen=True)
class GaloisElement:
    """The automorphism x -> x^(q^exponent) of the closure, q = p^base_degree.

    Elements of the base field F_q are fixed; the residue-field Galois group is
    modeled as the pro-cyclic group generated by this Frobenius.
    """

    p: int
    base_degree: int = 1
    exponent: int = 1

    def __post_init__(self):
        if self.exponent < 0:
            raise ValueError("exponent must be nonnegative")

    @classmethod
    def identity(cls, p: int, base_degree: int = 1) -> "GaloisElement":
        return cls(p, base_degree, 0)

    @property
    def q(self) -> int:
        return self.p**self.base_degree

    @property
    def p_power(self) -> int:
        """k such that this element is x -> x^(p^k)."""
        return self.base_degree * self.exponent

    def __mul__(self, other: "GaloisElement") -> "GaloisElement":
        if (self.p, self.base_degree) != (other.p, other.base_degree):
            raise ValueError("Galois elements over different base fields")
        return GaloisElement(self.p, self.base_degree, self.exponent + other.exponent)

    def __call__(self, x):
        k = self.p_power
        if isinstance(x, (FF, Place, RationalFunction, Poly)):
            return x.frobenius(k) if k else x
        raise TypeError(f"cannot apply a Galois element to {type(x).__name__}")
