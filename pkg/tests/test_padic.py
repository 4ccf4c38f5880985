import random

import pytest
from hypothesis import given, strategies as st

from padicfactor.errors import EmptyInput, NonMonicDivisor, ZeroDiscriminant
from padicfactor.padic import (
    INF, MonicDivisor, PadicElement, PadicPoly, disc_valuation, format_poly,
    parse_expression, parse_poly, pdivmod, pexpand, phi_expansion, pmul,
    poly_quotrem, v1, zmul,
)
from padicfactor.testpolys import FamilySpec, gen_family

from support import disc_oracle, vp

PRIMES = st.sampled_from([2, 3, 5, 7, 13])


@st.composite
def poly_triple(draw):
    p = draw(PRIMES)
    prec = draw(st.integers(1, 12))
    M = p ** prec
    polys = [draw(st.lists(st.integers(0, M - 1), min_size=1, max_size=8)) for _ in range(3)]
    return p, prec, [PadicPoly(c, p, prec) for c in polys]


@st.composite
def dividend_and_monic(draw, max_deg=40):
    p = draw(PRIMES)
    prec = draw(st.integers(1, 10))
    M = p ** prec
    f = draw(st.lists(st.integers(0, M - 1), min_size=1, max_size=max_deg))
    g = draw(st.lists(st.integers(0, M - 1), min_size=1, max_size=max_deg // 2)) + [1]
    return p, prec, f, g


# -- examples -----------------------------------------------------------------

def test_v1_examples():
    assert PadicPoly([9, 3], 3, 10).v1() == 1
    assert PadicPoly([7, 0, 1], 7, 10).v1() == 0
    assert PadicPoly([125], 5, 10).v1() == 3
    assert PadicPoly([5 ** 10], 5, 10).v1() == INF


def test_quotrem_examples():
    p, N = 5, 12
    f = PadicPoly([p, 0, 1], p, N)
    q, r = f.quotrem(PadicPoly([0, 1], p, N))
    assert (q.coeffs, r.coeffs) == ((0, 1), (p,))
    q, r = f.quotrem(PadicPoly([p + p ** 3, 0, 1], p, N))
    assert q.coeffs == (1,) and r.coeffs == ((-p ** 3) % p ** N,)
    q, r = PadicPoly([0, 0, 0, 1], p, N).quotrem(PadicPoly([1, 1], p, N))
    M = p ** N
    assert q.coeffs == (1, M - 1, 1) and r.coeffs == (M - 1,)


def test_phi_expansion_examples():
    p, N = 5, 12
    g = PadicPoly([p, 0, 1], p, N)
    assert [a.coeffs for a in phi_expansion(g, PadicPoly([0, 1], p, N))] == [(p,), (), (1,)]
    phi = PadicPoly([p + p ** 3, 0, 1], p, N)
    assert [a.coeffs for a in g.phi_expansion(phi)] == [((-p ** 3) % p ** N,), (1,)]
    phi = PadicPoly([3, 2, 1], p, N)
    sq = PadicPoly(pmul(list(phi.coeffs), list(phi.coeffs), p ** N), p, N)
    assert [a.coeffs for a in sq.phi_expansion(phi)] == [(), (), (1,)]


def test_nonmonic_divisor_rejected():
    with pytest.raises(NonMonicDivisor):
        PadicPoly([1, 1], 5, 4).quotrem(PadicPoly([1, 5], 5, 4))
    with pytest.raises(NonMonicDivisor):
        PadicPoly([1, 1], 5, 4).phi_expansion(PadicPoly([1], 5, 4))


def test_disc_valuation_examples():
    assert disc_valuation([5, 0, 1], 5) == 1
    assert disc_valuation([126, 2, 1], 5) == 3
    assert disc_valuation(gen_family(FamilySpec.make("B", p=7, k=5)), 7) == 20
    with pytest.raises(ZeroDiscriminant):
        disc_valuation([1, 2, 1], 3)
    with pytest.raises(EmptyInput):
        disc_valuation([3], 3)


def test_element_arithmetic():
    a = PadicElement(7, 3, 5)
    assert (a * 5).valuation() == 1
    assert (PadicElement(5 ** 3, 3, 5)).valuation() == INF
    assert (a + PadicElement(118, 2, 5)).prec == 2
    assert (-a + a).value == 0


def test_precision_never_grows():
    a, b = PadicPoly([1, 2], 3, 4), PadicPoly([2, 1], 3, 7)
    assert (a + b).prec == 4 and (a * b).prec == 4


def test_text_formats():
    assert parse_poly("5, 0, 1") == [5, 0, 1]
    assert parse_poly("[1,2,0]") == [1, 2]
    assert format_poly([5, 0, 1]) == "5,0,1"
    assert parse_expression("x^2 + p", p=5) == [5, 0, 1]
    assert parse_expression("(x+1)^2 - 2*x") == [1, 0, 1]
    with pytest.raises(EmptyInput):
        parse_poly("")
    with pytest.raises(ValueError):
        parse_expression("x^y")


# -- properties -----------------------------------------------------------------

@given(poly_triple())
def test_ring_axioms(data):
    p, prec, (a, b, c) = data
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a - a).is_zero()


@given(dividend_and_monic())
def test_quotrem_round_trip(data):
    p, prec, f, g = data
    F, G = PadicPoly(f, p, prec), PadicPoly(g, p, prec)
    q, r = poly_quotrem(F, G)
    assert r.degree < G.degree
    assert q * G + r == F


@given(dividend_and_monic(max_deg=120))
def test_fast_division_agrees_with_schoolbook(data):
    p, prec, f, g = data
    M = p ** prec
    D = MonicDivisor(g, M)
    assert list(D.divmod(f)) == list(pdivmod(f, g, M))


@given(dividend_and_monic())
def test_phi_expansion_round_trip(data):
    p, prec, g, phi = data
    if len(phi) < 2:
        phi = [0, 1]
    M = p ** prec
    parts = pexpand(g, phi, M)
    assert all(len(a) < len(phi) for a in parts)
    acc = PadicPoly([], p, prec)
    power = PadicPoly([1], p, prec)
    Phi = PadicPoly(phi, p, prec)
    for a in parts:
        acc = acc + PadicPoly(a, p, prec) * power
        power = power * Phi
    assert acc == PadicPoly(g, p, prec)


@given(PRIMES, st.integers(2, 10), st.data())
def test_gauss_lemma_special_case(p, prec, data):
    g = data.draw(st.lists(st.integers(-10 ** 6, 10 ** 6), min_size=1, max_size=6))
    h = data.draw(st.lists(st.integers(-10 ** 6, 10 ** 6), min_size=1, max_size=6))
    vg, vh = v1(g, p), v1(h, p)
    if vg == INF or vh == INF or (vg and vh):
        return
    prod = zmul(g, h)
    assert v1(prod, p) == vg + vh


@given(st.data())
def test_disc_valuation_against_sympy(data):
    p = data.draw(PRIMES)
    n = data.draw(st.integers(1, 6))
    f = data.draw(st.lists(st.integers(-50, 50), min_size=n, max_size=n)) + [1]
    try:
        ours = disc_valuation(f, p)
    except ZeroDiscriminant:
        import sympy
        from support import to_sympy, X
        assert sympy.discriminant(to_sympy(f).as_expr(), X) == 0
        return
    assert ours == disc_oracle(f, p)


def _sampled_family_specs(count=200, seed=11):
    from math import gcd
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        fam = rng.choice(["A", "Am", "D"])
        if fam == "A":
            p = rng.choice([2, 3, 5, 7, 11, 13])
            n = rng.randint(2, 5)
            k = rng.randint(1, 12)
            if gcd(n, k) != 1:
                continue
            out.append(FamilySpec.make("A", p=p, n=n, k=k, r=rng.randint(0, k // n)))
        elif fam == "Am":
            p = rng.choice([5, 7, 11])
            n = rng.randint(2, 4)
            k = rng.randint(1, 8)
            m = rng.randint(2, (p - 1) // 2)
            if gcd(n, k) != 1 or k <= n * (vp(n, p) if n % p == 0 else 0):
                continue
            out.append(FamilySpec.make("Am", p=p, n=n, k=k, m=m))
        else:
            p = rng.choice([2, 3, 5])
            l = rng.choice([q for q in (3, 5, 7) if q != p])
            n = rng.randint(2, 3)
            k = rng.randint(1, 5)
            if gcd(n, k) != 1:
                continue
            out.append(FamilySpec.make("D", l=l, p=p, n=n, k=k))
    return out


def _closed_form(spec):
    g = dict(spec.params)
    p = spec.p
    if spec.family == "A":
        n, k = g["n"], g["k"]
        return k * (n - 1) + n * (vp(n, p) if n % p == 0 else 0)
    if spec.family == "Am":
        n, k, m = g["n"], g["k"], g["m"]
        return m * (n * (vp(n, p) if n % p == 0 else 0) + k * (n - 1))
    l, n, k = g["l"], g["n"], g["k"]
    return (l - 1) * (n * (vp(n, p) if n % p == 0 else 0) + k * (n - 1))


@pytest.mark.parametrize("spec", _sampled_family_specs(), ids=lambda s: s.name)
def test_disc_valuation_closed_forms(spec):
    assert disc_valuation(gen_family(spec), spec.p) == _closed_form(spec)
