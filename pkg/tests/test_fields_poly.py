import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from degen.fields import MAX_FIELD_ORDER, GF, conway_polynomial, field, is_prime
from degen.poly import FF, Poly, factor, minimal_polynomial, roots, squarefree_decomposition

# published Conway polynomials, little-endian
CONWAY = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 1): (1, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 1): (3, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 2): (3, 6, 1),
}


@pytest.mark.parametrize("pn,expected", CONWAY.items())
def test_conway_table(pn, expected):
    assert conway_polynomial(*pn) == expected


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_field_size_limit():
    with pytest.raises(OverflowError):
        GF(2, 23)
    with pytest.raises(OverflowError):
        GF(3, 14)
    assert 2**22 == MAX_FIELD_ORDER


def test_rejects_non_prime():
    with pytest.raises(ValueError):
        field(4, 1)


FIELDS = [(2, 3), (3, 2), (5, 2), (3, 3)]


@st.composite
def elements(draw):
    p, n = draw(st.sampled_from(FIELDS))
    F = field(p, n)
    a, b, c = (draw(st.integers(0, F.order - 1)) for _ in range(3))
    return F, a, b, c


@given(elements())
def test_field_axioms(x):
    F, a, b, c = x
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.mul(a, F.inv(a)) == 1
    # Frobenius is additive and multiplicative, of order n
    assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
    assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b))
    assert F.frobenius(a, F.n) == a
    assert F.pth_root(F.frobenius(a)) == a


@given(st.sampled_from([(2, 2, 4), (3, 1, 2), (3, 2, 4), (5, 1, 2), (2, 3, 6)]), st.data())
def test_embedding_is_a_ring_map(pmn, data):
    p, m, n = pmn
    S, L = field(p, m), field(p, n)
    a = data.draw(st.integers(0, S.order - 1))
    b = data.draw(st.integers(0, S.order - 1))
    e = lambda x: S.embed(x, L)  # noqa: E731
    assert e(S.add(a, b)) == L.add(e(a), e(b))
    assert e(S.mul(a, b)) == L.mul(e(a), e(b))
    assert L.descend(e(a), S) == a
    assert L.degree_of(e(a)) == S.degree_of(a)


def test_ff_lives_in_minimal_field():
    F = field(3, 4)
    one = FF(F, 1)
    assert one.F.n == 1
    a = FF(field(3, 2), 3)
    assert (a + one).F.n == 2
    assert a.frobenius(2) == a


def _poly_eval_all(f: Poly):
    F = f.F
    return [x for x in F.elements() if not f.evaluate(FF(F, x))]


@given(st.sampled_from([2, 3, 5]), st.lists(st.integers(0, 4), min_size=2, max_size=7))
def test_factor_reconstructs_and_roots_match_brute_force(p, coeffs):
    F = field(p, 1)
    f = Poly(F, [c % p for c in coeffs])
    if f.degree < 1:
        return
    fac = factor(f)
    prod = Poly.const(F, f.lead)
    for g, e in fac:
        assert g.lead == 1
        prod = prod * g**e
    assert prod == f
    for g, _ in fac:
        # irreducible factors of degree 2 or 3 have no roots in the base field
        if g.degree in (2, 3):
            assert not _poly_eval_all(g)
    got = sorted(r.v for r in roots(f) if r.F.n == 1)
    assert got == sorted(_poly_eval_all(f))


def test_squarefree_of_power():
    F = field(3, 1)
    t = Poly.t(F)
    f = (t + Poly.const(F, 1)) ** 4 * t
    parts = dict((g.c, e) for g, e in squarefree_decomposition(f))
    assert parts[(1, 1)] == 4 and parts[(0, 1)] == 1


@pytest.mark.parametrize("p,n", [(2, 2), (3, 2), (5, 2), (2, 4)])
def test_all_field_elements_are_roots_of_t_q_minus_t(p, n):
    F = field(p, n)
    t = Poly.t(field(p, 1))
    f = t ** F.order - t
    rs = roots(f)
    assert len(rs) == F.order
    assert len({(r.F.n, r.v) for r in rs}) == F.order


@pytest.mark.parametrize("p,n", [(2, 3), (3, 2), (5, 2), (3, 4)])
def test_generator_minimal_polynomial_is_conway(p, n):
    F = field(p, n)
    x = FF(F, p)  # the class of the generator x
    assert minimal_polynomial(x) == conway_polynomial(p, n)


def test_minimal_polynomials_of_conjugates_agree():
    F = field(3, 3)
    for v in itertools.islice(F.elements(), 1, 27):
        a = FF(F, v)
        assert minimal_polynomial(a) == minimal_polynomial(a.frobenius())
