"""Rank-p torsor representatives on punctured projective lines.

Three kinds occur over the residue field: the constant group Z/pZ (Artin-Schreier
form y^p - y = g), mu_p (Kummer form y^p = f) and alpha_p (y^p = g).  A
representative is always stored in a reduced canonical form, so two
representatives of the same class over the algebraic closure compare equal.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field

from .arith import (
    FF,
    GaloisElement,
    Place,
    Poly,
    RationalFunction,
    differential_divisor,
    differential_order,
    divisor,
    order_at,
    poles_with_multiplicity,
)
from .fields import field
from .poly import equal_degree, factor


class GroupKind(str, enum.Enum):
    ETALE = "etale"
    MULT = "mult"
    ADD = "add"
    SPLIT = "split"

    @property
    def is_radicial(self) -> bool:
        return self in (GroupKind.MULT, GroupKind.ADD)

    def __str__(self):
        return self.value


class SplitTorsor(ValueError):
    """The representative defines the trivial class."""


@dataclass(frozen=True)
class BoundaryType:
    """Degeneration type (G, m, h) on a boundary or at a point."""

    kind: GroupKind
    m: int
    h: int = 0

    def problems(self, p: int) -> list[str]:
        out = []
        if self.m != 0 and self.m % p == 0:
            out.append(f"conductor m={self.m} is divisible by p={p}")
        if not 0 <= self.h < p:
            out.append(f"residue h={self.h} is not reduced mod p")
        elif self.h != 0 and not (self.kind is GroupKind.MULT and self.m == 0):
            out.append(f"residue h={self.h} nonzero outside the (mult, m=0) case")
        return out


# -- partial fractions over the closure --

def _series_inverse(c: list[int], n: int, F) -> list[int]:
    """First n coefficients of 1/c(u), c(0) != 0."""
    inv0 = F.inv(c[0])
    out = [inv0]
    for k in range(1, n):
        acc = 0
        for j in range(1, min(k, len(c) - 1) + 1):
            acc = F.add(acc, F.mul(c[j], out[k - j]))
        out.append(F.mul(F.neg(acc), inv0))
    return out


def principal_parts(g: RationalFunction):
    """Decompose g = P(t) + sum_alpha sum_k c_{alpha,k} (t - alpha)^(-k).

    Returns (P, {alpha: {k: c}}) with alpha and c in FF.
    """
    P, R = g.num.divmod(g.den)
    parts: dict[FF, dict[int, FF]] = {}
    if not R:
        return P, parts
    for irr, e in factor(g.den):
        F = field(irr.F.p, irr.F.n * irr.degree)
        for lin in equal_degree(irr.lift(F).monic(), 1):
            a = F.neg(lin.c[0])
            num = R.lift(F).shift(a)
            den = g.den.lift(F).shift(a)
            d1 = list(den.c[e:])
            inv = _series_inverse(d1, e, F)
            ncoef = [num.coeff(i) for i in range(e)]
            coeffs = {}
            for k in range(e):
                s = 0
                for i in range(k + 1):
                    s = F.add(s, F.mul(ncoef[i], inv[k - i]))
                if s:
                    coeffs[e - k] = FF(F, s)
            if coeffs:
                parts[FF(F, a)] = coeffs
    return P, parts


def _assemble(p: int, poly_terms: dict[int, FF], parts: dict[FF, dict[int, FF]]) -> RationalFunction:
    F1 = field(p, 1)
    total = RationalFunction(Poly(F1, []))
    if poly_terms:
        total = total + RationalFunction(
            Poly.from_elements([poly_terms.get(i, FF.of(p, 0)) for i in range(max(poly_terms) + 1)])
        )
    for a, coeffs in parts.items():
        lin = Poly.linear(a)
        top = max(coeffs)
        # sum_k c_k (t-a)^(top-k) / (t-a)^top
        num = Poly(a.F, [])
        for k, c in coeffs.items():
            num = num + Poly.from_elements([c]) * lin ** (top - k)
        total = total + RationalFunction(num, lin**top)
    return total


def _fold(terms: dict, p: int, keep_pth: bool) -> dict:
    """Replace c*x^(pk) by c^(1/p)*x^k (or drop it) until no exponent is divisible by p."""
    terms = dict(terms)
    while True:
        hits = [k for k in terms if k % p == 0]
        if not hits:
            return terms
        k = max(hits)
        c = terms.pop(k)
        if keep_pth and k:
            j = k // p
            terms[j] = terms.get(j, FF.of(p, 0)) + c.frobenius(-1)
            if not terms[j]:
                del terms[j]


def _reduce_terms(poly_terms, parts, p, keep_pth: bool):
    """Fold or drop terms whose exponent is divisible by p; constants are dropped."""
    poly_terms = _fold(poly_terms, p, keep_pth)
    new_parts = {}
    for a, coeffs in parts.items():
        coeffs = _fold(coeffs, p, keep_pth)
        if coeffs:
            new_parts[a] = coeffs
    return poly_terms, new_parts


def _terms(g: RationalFunction):
    P, parts = principal_parts(g)
    poly_terms = {i: FF(P.F, c) for i, c in enumerate(P.c) if c}
    return poly_terms, parts


def as_reduce(g: RationalFunction) -> RationalFunction:
    """Reduced Artin-Schreier representative of g modulo a^p - a.

    Every pole order of the result is prime to p and the constant term is
    dropped (constants are of the form a^p - a over the closure).
    Raises SplitTorsor if g is in the image of a -> a^p - a.
    """
    p = g.p
    poly_terms, parts = _reduce_terms(*_terms(g), p, keep_pth=True)
    out = _assemble(p, poly_terms, parts)
    if out.is_constant():
        raise SplitTorsor("Artin-Schreier class is trivial")
    return out


def add_reduce(g: RationalFunction) -> RationalFunction:
    """Representative of g modulo p-th powers (alpha_p torsors)."""
    p = g.p
    poly_terms, parts = _reduce_terms(*_terms(g), p, keep_pth=False)
    out = _assemble(p, poly_terms, parts)
    if out.is_constant():
        raise SplitTorsor("alpha_p class is trivial")
    return out


def kummer_reduce(f: RationalFunction) -> RationalFunction:
    """Monic representative of f modulo p-th powers, exponents in 1..p-1."""
    if f.is_zero():
        raise ValueError("Kummer representative must be nonzero")
    p = f.p
    F = f.F
    out = Poly.const(F, 1)
    exps: dict = {}
    for irr, e in factor(f.num):
        exps[irr.c] = (irr, exps.get(irr.c, (irr, 0))[1] + e)
    for irr, e in factor(f.den):
        exps[irr.c] = (irr, exps.get(irr.c, (irr, 0))[1] - e)
    for irr, e in exps.values():
        e %= p
        if e:
            out = out * irr**e
    if out.degree == 0:
        raise SplitTorsor("Kummer class is trivial")
    return RationalFunction(out)


_REDUCERS = {GroupKind.ETALE: as_reduce, GroupKind.MULT: kummer_reduce, GroupKind.ADD: add_reduce}


@dataclass(frozen=True)
class TorsorRep:
    """A nontrivial torsor on P^1 minus ``punctures``, in reduced form."""

    kind: GroupKind
    rep: RationalFunction
    punctures: tuple[Place, ...] = dc_field(default=())

    def __post_init__(self):
        kind = GroupKind(self.kind)
        if kind is GroupKind.SPLIT:
            raise ValueError("split torsors are not TorsorReps; use the split marker")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "rep", _REDUCERS[kind](self.rep))
        object.__setattr__(
            self, "punctures", tuple(sorted(set(self.punctures), key=Place.sort_key))
        )

    @property
    def p(self) -> int:
        return self.rep.p


def omega(T: TorsorRep) -> RationalFunction:
    """Coefficient of dt in the differential form attached to T."""
    if T.kind is GroupKind.MULT:
        w = T.rep.derivative() / T.rep
    else:
        w = T.rep.derivative()
    if w.is_zero():
        raise ValueError("representative is a p-th power; its differential vanishes")
    return w


def conductor_residue_at(T: TorsorRep, z: Place) -> tuple[int, int]:
    p = T.p
    if T.kind is GroupKind.ETALE:
        return max(0, -order_at(T.rep, z)), 0
    m = -differential_order(omega(T), z) - 1
    if T.kind is GroupKind.MULT:
        return m, order_at(T.rep, z) % p
    return m, 0


def boundary_type_at(T: TorsorRep, z: Place) -> BoundaryType:
    m, h = conductor_residue_at(T, z)
    return BoundaryType(T.kind, m, h)


def singular_places(T: TorsorRep) -> list[Place]:
    """Places where T fails to be an honest smooth torsor (poles / zeros and poles of omega)."""
    if T.kind is GroupKind.ETALE:
        out = [z for z, _ in poles_with_multiplicity(T.rep)]
        inf = Place.infinity(T.p)
        if order_at(T.rep, inf) < 0:
            out.append(inf)
        return out
    return list(differential_divisor(omega(T)))


def critical_places(T: TorsorRep) -> list[tuple[Place, int]]:
    """Zeros of omega with their orders (radicial kinds only)."""
    if not T.kind.is_radicial:
        return []
    return [(z, k) for z, k in differential_divisor(omega(T)).items() if k > 0]


def is_admissible(T: TorsorRep, special) -> bool:
    special = set(special)
    return all(z in special for z in singular_places(T))


def galois_apply(sigma: GaloisElement, T: TorsorRep) -> TorsorRep:
    return TorsorRep(T.kind, sigma(T.rep), tuple(sigma(z) for z in T.punctures))
