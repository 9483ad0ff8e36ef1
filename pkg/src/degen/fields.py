"""Finite fields F_{p^n} in a compatible (Conway) lattice.

Elements of F_{p^n} are encoded as integers ``sum(c_i * p**i)`` where
``c_0, ..., c_{n-1}`` are the coordinates in the power basis of the Conway
generator.  Integers ``0 <= c < p`` therefore denote the same prime-field
element in every field of characteristic p.

Because the defining polynomials are Conway polynomials, the embedding
F_{p^m} -> F_{p^n} (m | n) sending the generator to ``gamma_n ** ((p^n-1)/(p^m-1))``
is canonical, and the lattice of all such fields behaves as a single lazily
grown model of the algebraic closure.
"""

from __future__ import annotations

import functools
import itertools
import math

MAX_FIELD_ORDER = 1 << 22


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


# -- dense polynomial helpers over the prime field (little-endian int lists) --

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _mulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    """Product of a and b reduced modulo the monic polynomial f."""
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    n = len(f) - 1
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k]
        if c:
            for j in range(n + 1):
                prod[k - n + j] = (prod[k - n + j] - c * f[j]) % p
    return _trim(prod[:n])


def _powmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = a
    while e:
        if e & 1:
            result = _mulmod(result, base, f, p)
        base = _mulmod(base, base, f, p)
        e >>= 1
    return result


def _conway_candidates(p: int, n: int):
    # Conway order: x^n - a_{n-1} x^{n-1} + a_{n-2} x^{n-2} - ... with the
    # tuple (a_{n-1}, ..., a_0) increasing lexicographically.
    for digits in itertools.product(range(p), repeat=n):
        coeffs = [0] * (n + 1)
        coeffs[n] = 1
        for k, a in enumerate(digits):
            i = n - 1 - k
            coeffs[i] = a % p if (n - i) % 2 == 0 else (-a) % p
        yield coeffs


@functools.cache
def conway_polynomial(p: int, n: int) -> tuple[int, ...]:
    """Little-endian coefficients (monic, degree n) of the Conway polynomial."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError("extension degree must be positive")
    q = p**n
    order_primes = prime_factors(q - 1)
    subs = [(m, conway_polynomial(p, m)) for m in divisors(n) if m < n]
    for f in _conway_candidates(p, n):
        if f[0] == 0:
            continue
        x = [0, 1] if n > 1 else [(-f[0]) % p]
        if _powmod(x, q - 1, f, p) != [1]:
            continue
        if any(_powmod(x, (q - 1) // ell, f, p) == [1] for ell in order_primes):
            continue
        ok = True
        for m, g in subs:
            y = _powmod(x, (q - 1) // (p**m - 1), f, p)
            acc: list[int] = []
            for c in reversed(g):
                acc = _mulmod(acc, y, f, p)
                acc = _trim([(c + (acc[0] if acc else 0)) % p] + acc[1:])
            if acc:
                ok = False
                break
        if ok:
            return tuple(f)
    raise RuntimeError(f"no Conway polynomial found for p={p}, n={n}")


class GF:
    """The field with p**n elements, arithmetic via exp/log tables."""

    def __init__(self, p: int, n: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if n < 1:
            raise ValueError("extension degree must be positive")
        if p**n > MAX_FIELD_ORDER:
            raise OverflowError(f"field of order {p}^{n} exceeds the table limit")
        self.p = p
        self.n = n
        self.order = p**n
        self.modulus = conway_polynomial(p, n)
        self._build_tables()

    def _build_tables(self) -> None:
        p, n, q = self.p, self.n, self.order
        f = self.modulus
        exp = [0] * (q - 1)
        log = [0] * q
        vec = [1] + [0] * (n - 1)
        for k in range(q - 1):
            v = 0
            for c in reversed(vec):
                v = v * p + c
            exp[k] = v
            log[v] = k
            # multiply by the generator x
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                for j in range(n):
                    vec[j] = (vec[j] - top * f[j]) % p
        self._exp = exp
        self._log = log

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.n})"

    def __reduce__(self):
        return (field, (self.p, self.n))

    # -- arithmetic on integer codes --
    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        out, scale = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * scale
            scale *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if p == 2:
            return a
        out, scale = 0, 1
        while a:
            a, x = divmod(a, p)
            out += ((-x) % p) * scale
            scale *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(-self._log[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.order - 1)]

    def scalar(self, c: int) -> int:
        """Image of the integer c in the prime field."""
        return c % self.p

    def frobenius(self, a: int, k: int = 1) -> int:
        """x -> x^(p^k); k may be negative."""
        if a == 0:
            return 0
        k %= self.n
        return self._exp[(self._log[a] * pow(self.p, k, self.order - 1)) % (self.order - 1)]

    def pth_root(self, a: int) -> int:
        return self.frobenius(a, -1)

    def log(self, a: int) -> int:
        return self._log[a]

    def exp(self, k: int) -> int:
        return self._exp[k % (self.order - 1)]

    def elements(self) -> range:
        return range(self.order)

    def coords(self, a: int) -> list[int]:
        out = []
        for _ in range(self.n):
            a, c = divmod(a, self.p)
            out.append(c)
        return out

    def from_coords(self, cs) -> int:
        cs = list(cs)
        if len(cs) > self.n:
            raise ValueError(f"{len(cs)} coordinates for a degree-{self.n} field")
        v = 0
        for c in reversed(cs):
            v = v * self.p + (c % self.p)
        return v

    # -- the lattice of subfields --
    def embed(self, a: int, target: "GF") -> int:
        """Image of a under the canonical embedding into ``target``."""
        if target.n % self.n:
            raise ValueError(f"{self} does not embed in {target}")
        if a == 0 or target.n == self.n:
            return a
        c = (target.order - 1) // (self.order - 1)
        return target._exp[(self._log[a] * c) % (target.order - 1)]

    def degree_of(self, a: int) -> int:
        """Degree over F_p of the smallest subfield containing a."""
        if a == 0:
            return 1
        k = self._log[a]
        for m in divisors(self.n):
            if k % ((self.order - 1) // (self.p**m - 1)) == 0:
                return m
        return self.n

    def descend(self, a: int, sub: "GF") -> int:
        if self.n % sub.n:
            raise ValueError(f"{sub} is not a subfield of {self}")
        if a == 0:
            return 0
        c = (self.order - 1) // (sub.order - 1)
        k = self._log[a]
        if k % c:
            raise ValueError(f"element does not lie in {sub}")
        return sub._exp[k // c]


@functools.cache
def field(p: int, n: int = 1) -> GF:
    return GF(p, n)


def field_make(p: int, n: int = 1) -> GF:
    """Field of order p**n (cached; all fields of one characteristic are compatible)."""
    return field(p, n)


def common_field(a: GF, b: GF) -> GF:
    if a is b:
        return a
    if a.p != b.p:
        raise ValueError("fields of different characteristic")
    return field(a.p, math.lcm(a.n, b.n))
