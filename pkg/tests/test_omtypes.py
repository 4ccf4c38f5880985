import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from padicfactor.errors import Infeasible, OutOfRange, PrecisionExhausted
from padicfactor.omtypes import OMType, ord_in_type
from padicfactor.padic import pdivmod, pexpand, pmul, strip
from padicfactor.polygon import principal_part
from padicfactor.sfl import lift_factor
from padicfactor.tower import pdivmod as ff_divmod, pstrip

from support import res_oracle, type_pool

POOL = type_pool()
TYPE = st.integers(0, len(POOL) - 1).map(lambda i: POOL[i])
SEED = st.integers(0, 2 ** 32)


def _blocks(t):
    """Polynomials whose type-theoretic behaviour is interesting."""
    out = [list(t.representative), [t.p]]
    out += [list(L.phi) for L in t.levels]
    return out


def _random_poly(t, rng, max_blocks=3):
    """A random product of building blocks plus high-order noise."""
    M = t.M
    g = [1]
    blocks = _blocks(t)
    for _ in range(rng.randint(0, max_blocks)):
        g = pmul(g, rng.choice(blocks), M)
    m = t.degree
    unit = [rng.randrange(M) for _ in range(rng.randint(1, m))]
    unit[0] = unit[0] * t.p + rng.randrange(1, t.p)
    g = pmul(g, unit, M)
    K = rng.randint(t.prec // 2, t.prec)
    noise = [t.p ** K * rng.randrange(t.p ** 3) for _ in range(len(g))]
    return strip([(a + b) % M for a, b in zip(g, noise)])


def _scalar_multiple(K, R, psi) -> bool:
    R = pstrip(K, list(R))
    if len(R) != len(psi):
        return False
    q, r = ff_divmod(K, R, list(psi))
    return not r and len(q) == 1


# -- construction and basic data ----------------------------------------------

def test_order_zero_type():
    t = OMType.order_zero(5, 20, [2, 0, 1])
    assert (t.order, t.e, t.f, t.degree) == (0, 1, 2, 2)
    assert t.representative == (2, 0, 1)
    assert t.ord_in_type([2, 0, 1]) == 1
    assert ord_in_type(t, pmul([2, 0, 1], [2, 0, 1], t.M)) == 2
    assert t.ord_in_type([1, 1]) == 0


def test_value_at_root_rejects_high_degree():
    name, f, mf = POOL[2]
    with pytest.raises(OutOfRange):
        mf.type.value_at_root([0] * mf.type.degree + [1, 1])


def test_type_serialization_round_trip():
    import json
    for _, _, mf in POOL:
        d = mf.type.to_dict()
        assert json.loads(mf.type.dump()) == json.loads(json.dumps(d, sort_keys=True))
        assert len(d["levels"]) == mf.type.order


def test_representative_has_residual_psi():
    for name, f, mf in POOL:
        t = mf.type
        rep = list(t.representative)
        assert len(rep) - 1 == t.degree
        if t.order:
            K = t.fields[t.order]
            assert _scalar_multiple(K, t.residual_poly(t.order, rep), t.last_psi), name
        assert t.ord_in_type(rep) == 1, name


def test_residual_polynomial_of_the_factor_is_a_power_of_psi():
    for name, f, mf in POOL:
        t = mf.type
        Phi = list(lift_factor(f, t, mf.phi, t.prec).Phi.coeffs)
        m = [t.f0] + [L.m * L.e * L.f for L in t.levels]
        for i in range(t.order + 1):
            K = t.fields[i]
            psi = list(t.psi0 if i == 0 else t.levels[i - 1].psi)
            a = t.degree // m[i]
            R = t.residual_poly(i, Phi)
            target = [K.one]
            for _ in range(a):
                from padicfactor.tower import pmul as ff_mul
                target = ff_mul(K, target, psi)
            assert _scalar_multiple(K, R, target), (name, i)


# -- properties -----------------------------------------------------------------

@given(TYPE, SEED)
def test_ord_in_type_product_rule(entry, seed):
    _, _, mf = entry
    t = mf.type
    rng = random.Random(seed)
    g, h = _random_poly(t, rng), _random_poly(t, rng)
    try:
        og, oh = t.ord_in_type(g), t.ord_in_type(h)
        ogh = t.ord_in_type(pmul(g, h, t.M))
    except PrecisionExhausted:
        assume(False)
    assert ogh == og + oh


@given(TYPE, SEED)
def test_polygon_length_equals_order(entry, seed):
    _, _, mf = entry
    t = mf.type
    rng = random.Random(seed)
    i = rng.randint(0, t.order)
    if i < t.order:
        sub, phi, V = t.truncate(i), list(t.levels[i].phi), t.levels[i].V
    else:
        sub, phi, V = t, list(t.representative), t.V_next
    g = _random_poly(t, rng)
    n = len(pexpand(g, phi, t.M)) - 1
    try:
        hull, _ = sub.polygon(phi, V, g, n)
        o = sub.ord_in_type(g)
    except PrecisionExhausted:
        assume(False)
    assume(not hull.uncertain)
    assert principal_part(hull).length == o


@given(TYPE, st.data())
def test_universal_polynomial(entry, data):
    _, _, mf = entry
    t = mf.type
    u = data.draw(st.integers(-5 * t.e, 5 * t.e))
    P = t.universal_eval(u)
    assert P.degree < t.degree
    assert t.w(list(P.coeffs)) - t.e * P.d == u
    j_pi, js = t.universal_poly(u)
    assert len(js) == t.depth


@given(TYPE, SEED)
def test_construct_is_right_inverse_of_lc(entry, seed):
    _, _, mf = entry
    t = mf.type
    rng = random.Random(seed)
    k = rng.randint(1, t.order + 1)
    K = t.fields[k]
    tau = K.random(rng)
    assume(not K.is_zero(tau))
    u = rng.randint(0, 6 * t.E(k - 1))
    try:
        b, d = t.construct(k, u, tau)
    except Infeasible:
        assume(False)
    m_k = t.f0 if k == 1 else t.levels[k - 2].m * t.levels[k - 2].e * t.levels[k - 2].f
    assert d == 0 and len(b) - 1 < m_k
    assert t.lc(k, b) == (u, tau)


@given(TYPE, SEED)
def test_lc_multiplicative_modulo_representative(entry, seed):
    _, _, mf = entry
    t = mf.type
    rng = random.Random(seed)
    i = t.order + 1
    K = t.fields[i]
    rep = list(t.representative)

    def sample():
        tau = K.random(rng)
        while K.is_zero(tau):
            tau = K.random(rng)
        b, _ = t.construct(i, rng.randint(0, 3 * t.e), tau, integral=False)
        return b

    try:
        a, b = sample(), sample()
        (ua, la), (ub, lb) = t.lc(i, a), t.lc(i, b)
        _, ab = pdivmod(pmul(a, b, t.M), rep, t.M)
        uab, lab = t.lc(i, ab)
    except (Infeasible, PrecisionExhausted):
        assume(False)
    assert uab == ua + ub
    assert lab == K.mul(la, lb)


@given(TYPE, SEED)
def test_representative_criterion(entry, seed):
    """Monic ``g`` of degree ``m_i``: ``R_{i-1}(g) ~ psi_{i-1}`` iff ``v(g(theta)) > V_i / E``."""
    _, _, mf = entry
    t = mf.type
    rng = random.Random(seed)
    levels = [j for j in range(1, t.order + 1) if t.levels[j - 1].m < t.degree]
    assume(levels)
    i = rng.choice(levels)
    L = t.levels[i - 1]
    phi = list(L.phi)
    m = len(phi) - 1
    # perturb phi_i by a random polynomial of random valuation below degree m
    k = rng.randint(0, L.V // max(1, t.E(i - 1)) + 2)
    pert = [t.p ** k * rng.randrange(t.p ** 2) for _ in range(m)]
    g = [(a + b) % t.M for a, b in zip(phi, pert + [0])]
    sub = t.truncate(i - 1)
    K = t.fields[i - 1]
    psi = list(t.psi0 if i == 1 else t.levels[i - 2].psi)
    try:
        a = _scalar_multiple(K, sub.residual_poly(i - 1, g), psi)
        c = t.value_at_root(g) > Fraction(L.V, t.E(i - 1))
    except PrecisionExhausted:
        assume(False)
    assert a == c


@given(TYPE, SEED)
def test_value_at_root_matches_resultant(entry, seed):
    _, _, mf = entry
    t = mf.type
    rng = random.Random(seed)
    rep = list(t.representative)
    m = t.degree
    g = _random_poly(t, rng, max_blocks=2)
    _, g = pdivmod(g, rep, t.M)
    g = [c - t.M if c > t.M // 2 else c for c in g]
    assume(g)
    try:
        v = t.value_at_root(g)
    except PrecisionExhausted:
        assume(False)
    r = res_oracle(rep, g, t.p)
    assume(r is not None)
    assert v == Fraction(r, m)
