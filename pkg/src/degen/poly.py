"""Univariate polynomials over the finite-field lattice, with factorization."""

from __future__ import annotations

import random
from functools import total_ordering

from .fields import GF, common_field, field


@total_ordering
class FF:
    """An element of the algebraic closure of F_p, stored in its minimal field."""

    __slots__ = ("F", "v")

    def __init__(self, F: GF, v: int):
        m = F.degree_of(v)
        if m != F.n:
            sub = field(F.p, m)
            v = F.descend(v, sub)
            F = sub
        self.F = F
        self.v = v

    @classmethod
    def of(cls, p: int, c: int) -> "FF":
        return cls(field(p, 1), c % p)

    @property
    def p(self) -> int:
        return self.F.p

    @property
    def degree(self) -> int:
        return self.F.n

    def value_in(self, F: GF) -> int:
        return self.F.embed(self.v, F)

    def _lift(self, other):
        if isinstance(other, int):
            other = FF.of(self.p, other)
        F = common_field(self.F, other.F)
        return F, self.value_in(F), other.value_in(F)

    def __add__(self, other):
        F, a, b = self._lift(other)
        return FF(F, F.add(a, b))

    __radd__ = __add__

    def __sub__(self, other):
        F, a, b = self._lift(other)
        return FF(F, F.sub(a, b))

    def __rsub__(self, other):
        F, a, b = self._lift(other)
        return FF(F, F.sub(b, a))

    def __mul__(self, other):
        F, a, b = self._lift(other)
        return FF(F, F.mul(a, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        F, a, b = self._lift(other)
        return FF(F, F.div(a, b))

    def __neg__(self):
        return FF(self.F, self.F.neg(self.v))

    def __pow__(self, e: int):
        return FF(self.F, self.F.pow(self.v, e))

    def frobenius(self, k: int = 1) -> "FF":
        return FF(self.F, self.F.frobenius(self.v, k))

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        if isinstance(other, int):
            other = FF.of(self.p, other)
        if not isinstance(other, FF):
            return NotImplemented
        return self.F is other.F and self.v == other.v

    def __lt__(self, other):
        return self.key() < other.key()

    def __hash__(self):
        return hash((self.F.p, self.F.n, self.v))

    def key(self) -> tuple[int, int]:
        return (self.F.n, self.v)

    def coords(self) -> list[int]:
        return self.F.coords(self.v)

    def __repr__(self):
        if self.F.n == 1:
            return str(self.v)
        return f"FF({self.F.p}^{self.F.n}:{self.coords()})"


class Poly:
    """Dense polynomial in t with coefficients (little-endian) in a fixed field."""

    __slots__ = ("F", "c")

    def __init__(self, F: GF, coeffs):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.F = F
        self.c = tuple(c)

    # -- constructors --
    @classmethod
    def const(cls, F: GF, a: int) -> "Poly":
        return cls(F, [a])

    @classmethod
    def t(cls, F: GF) -> "Poly":
        return cls(F, [0, 1])

    @classmethod
    def from_elements(cls, coeffs) -> "Poly":
        coeffs = list(coeffs)
        F = coeffs[0].F
        for a in coeffs[1:]:
            F = common_field(F, a.F)
        return cls(F, [a.value_in(F) for a in coeffs])

    @classmethod
    def linear(cls, a: FF) -> "Poly":
        """t - a."""
        return cls(a.F, [a.F.neg(a.v), 1])

    # -- basic properties --
    @property
    def degree(self) -> int:
        return len(self.c) - 1

    @property
    def lead(self) -> int:
        return self.c[-1]

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def coeff(self, i: int) -> int:
        return self.c[i] if 0 <= i < len(self.c) else 0

    def elements(self) -> list[FF]:
        return [FF(self.F, a) for a in self.c]

    def lift(self, F: GF) -> "Poly":
        if F is self.F:
            return self
        return Poly(F, [self.F.embed(a, F) for a in self.c])

    def minimal_field(self) -> GF:
        import math

        n = 1
        for a in self.c:
            n = math.lcm(n, self.F.degree_of(a))
        return field(self.F.p, n)

    def normalized(self) -> "Poly":
        """Same polynomial over its smallest field of definition."""
        sub = self.minimal_field()
        if sub is self.F:
            return self
        return Poly(sub, [self.F.descend(a, sub) for a in self.c])

    def _pair(self, other: "Poly"):
        F = common_field(self.F, other.F)
        return F, self.lift(F), other.lift(F)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        F, a, b = self._pair(other)
        return a.c == b.c

    def __hash__(self):
        q = self.normalized()
        return hash((q.F.p, q.F.n, q.c))

    # -- ring operations --
    def __add__(self, other: "Poly") -> "Poly":
        F, a, b = self._pair(other)
        n = max(len(a.c), len(b.c))
        return Poly(F, [F.add(a.coeff(i), b.coeff(i)) for i in range(n)])

    def __neg__(self) -> "Poly":
        return Poly(self.F, [self.F.neg(x) for x in self.c])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        F, a, b = self._pair(other)
        if not a.c or not b.c:
            return Poly(F, [])
        out = [0] * (len(a.c) + len(b.c) - 1)
        for i, x in enumerate(a.c):
            if x:
                for j, y in enumerate(b.c):
                    if y:
                        out[i + j] = F.add(out[i + j], F.mul(x, y))
        return Poly(F, out)

    def scale(self, a: int) -> "Poly":
        return Poly(self.F, [self.F.mul(a, x) for x in self.c])

    def __pow__(self, e: int) -> "Poly":
        result = Poly.const(self.F, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def monic(self) -> "Poly":
        if not self.c:
            return self
        return self.scale(self.F.inv(self.lead))

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        F, a, b = self._pair(other)
        if not b.c:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(a.c)
        db = len(b.c) - 1
        inv_lead = F.inv(b.lead)
        q = [0] * max(0, len(r) - db)
        for k in range(len(r) - 1, db - 1, -1):
            coef = r[k]
            if coef:
                f = F.mul(coef, inv_lead)
                q[k - db] = f
                for j, y in enumerate(b.c):
                    if y:
                        r[k - db + j] = F.sub(r[k - db + j], F.mul(f, y))
        return Poly(F, q), Poly(F, r[:db])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if r:
            raise ValueError("division is not exact")
        return q

    def gcd(self, other: "Poly") -> "Poly":
        F, a, b = self._pair(other)
        while b:
            a, b = b, a % b
        return a.monic()

    def derivative(self) -> "Poly":
        F = self.F
        return Poly(F, [F.mul(F.scalar(i), x) for i, x in enumerate(self.c)][1:])

    def __call__(self, x: int) -> int:
        """Evaluate at an integer code of ``self.F``."""
        F = self.F
        acc = 0
        for a in reversed(self.c):
            acc = F.add(F.mul(acc, x), a)
        return acc

    def evaluate(self, x: FF) -> FF:
        F = common_field(self.F, x.F)
        return FF(F, self.lift(F)(x.value_in(F)))

    def frobenius(self, k: int = 1) -> "Poly":
        """Apply x -> x^(p^k) to every coefficient."""
        return Poly(self.F, [self.F.frobenius(a, k) for a in self.c])

    def shift(self, a: int) -> "Poly":
        """The polynomial f(t + a) (a a code of ``self.F``)."""
        F = self.F
        out = Poly(F, [])
        lin = Poly(F, [a, 1])
        for coef in reversed(self.c):
            out = out * lin + Poly.const(F, coef)
        return out

    def pth_root(self) -> "Poly":
        """g with g^p == self, for self a polynomial in t^p."""
        p = self.F.p
        if any(x for i, x in enumerate(self.c) if i % p):
            raise ValueError("not a p-th power")
        return Poly(self.F, [self.F.pth_root(x) for x in self.c[::p]])

    def __repr__(self):
        if not self.c:
            return "0"
        terms = []
        for i, x in enumerate(self.c):
            if x:
                a = repr(FF(self.F, x))
                terms.append(a if i == 0 else f"{a}*t^{i}")
        return " + ".join(terms)


# -- factorization over a finite field --

def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Pairs (g, e) with f = lc * prod g^e, each g monic squarefree, pairwise coprime."""
    if f.degree < 1:
        return []
    p = f.F.p
    out: list[tuple[Poly, int]] = []

    def rec(f: Poly, mult: int):
        f = f.monic()
        if f.degree < 1:
            return
        df = f.derivative()
        if not df:
            rec(f.pth_root(), mult * p)
            return
        c = f.gcd(df)
        w = f.exact_div(c)
        i = 1
        while w.degree > 0:
            y = w.gcd(c)
            z = w.exact_div(y)
            if z.degree > 0:
                out.append((z.monic(), i * mult))
            i += 1
            w = y
            c = c.exact_div(y)
        if c.degree > 0:
            rec(c.pth_root(), mult * p)

    rec(f, 1)
    return out


def _powmod(a: Poly, e: int, m: Poly) -> Poly:
    result = Poly.const(m.F, 1)
    base = a % m
    while e:
        if e & 1:
            result = (result * base) % m
        base = (base * base) % m
        e >>= 1
    return result


def distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    """For squarefree monic f: pairs (g_d, d), g_d the product of degree-d factors."""
    q = f.F.order
    out = []
    x = Poly.t(f.F)
    h = x
    d = 0
    rest = f
    while rest.degree >= 2 * (d + 1):
        d += 1
        h = _powmod(h, q, rest)
        g = rest.gcd(h - x)
        if g.degree > 0:
            out.append((g, d))
            rest = rest.exact_div(g)
            h = h % rest
    if rest.degree > 0:
        out.append((rest.monic(), rest.degree))
    return out


def equal_degree(f: Poly, d: int, rng: random.Random | None = None) -> list[Poly]:
    """Split f (squarefree, monic, all factors of degree d) into irreducibles."""
    if f.degree == d:
        return [f]
    rng = rng or random.Random(0x5EED)
    F = f.F
    q = F.order
    while True:
        a = Poly(F, [rng.randrange(q) for _ in range(f.degree)])
        if a.degree < 1:
            continue
        if F.p == 2:
            # trace map a + a^2 + ... + a^(2^(nd-1))
            t = a
            b = a
            for _ in range(F.n * d - 1):
                b = (b * b) % f
                t = t + b
            g = f.gcd(t)
        else:
            b = _powmod(a, (q**d - 1) // 2, f)
            g = f.gcd(b - Poly.const(F, 1))
        if 0 < g.degree < f.degree:
            return equal_degree(g, d, rng) + equal_degree(f.exact_div(g), d, rng)


def factor(f: Poly) -> list[tuple[Poly, int]]:
    """Irreducible factorization over f.F: sorted pairs (monic irreducible, multiplicity)."""
    out = []
    for g, e in squarefree_decomposition(f):
        for h, d in distinct_degree(g):
            for irr in equal_degree(h, d):
                out.append((irr, e))
    out.sort(key=lambda pe: (pe[0].degree, pe[0].c, pe[1]))
    return out


def roots(f: Poly) -> list[FF]:
    """Distinct roots of f in the algebraic closure."""
    out = []
    for g, _ in factor(f):
        out.extend(_roots_of_irreducible(g))
    return sorted(set(out))


def _roots_of_irreducible(g: Poly) -> list[FF]:
    d = g.degree
    F = field(g.F.p, g.F.n * d)
    lin = equal_degree(g.lift(F).monic(), 1)
    return [FF(F, F.neg(h.c[0])) for h in lin]


def minimal_polynomial(a: FF) -> tuple[int, ...]:
    """Monic minimal polynomial over F_p, as little-endian prime-field ints."""
    conj = [a]
    b = a.frobenius()
    while b != a:
        conj.append(b)
        b = b.frobenius()
    F = a.F
    prod = Poly.const(F, 1)
    for c in conj:
        prod = prod * Poly.linear(c)
    prod = prod.normalized()
    assert prod.F.n == 1
    return prod.c
