import json

import pytest
from hypothesis import given, strategies as st

from padicfactor.factor import cross_index, factor
from padicfactor.padic import disc_valuation
from padicfactor.testpolys import FamilySpec, gen_family

from support import disc_oracle, known_products, reduce_mod, res_oracle, sympy_mul

PRODUCTS = known_products(200, seed=9)


def _pair(F, facs):
    """Index into ``facs`` of the factor singled out by each reported type."""
    out = []
    for r in F.factors:
        hits = [i for i, G in enumerate(facs) if r.type.ord_in_type(G) == 1]
        assert len(hits) == 1
        out.append(hits[0])
    return out


@given(st.integers(0, len(PRODUCTS) - 1))
def test_index_and_discriminant_of_known_products(i):
    """Eisenstein factors have index 0, so ``ind_p`` is the sum of cross resultants."""
    p, facs = PRODUCTS[i]
    f = sympy_mul(*facs)
    F = factor(f, p, 12)
    assert F.product_ok
    who = _pair(F, facs)
    for (a, b), v in F.cross.items():
        assert v == res_oracle(facs[who[a]], facs[who[b]], p)
    assert F.index == sum(res_oracle(facs[a], facs[b], p)
                          for a in range(len(facs)) for b in range(a + 1, len(facs)))
    assert F.disc_valuation == disc_oracle(f, p)
    assert F.delta == sum(disc_oracle(G, p) for G in facs)
    for r, k in zip(F.factors, who):
        assert list(r.lifted.coeffs) == reduce_mod(facs[k], p ** 12)


def test_cross_index_needs_precision():
    f = sympy_mul([5, 0, 1], [5 + 5 ** 9, 0, 1])  # very close factors
    F = factor(f, 5, 20)
    assert F.cross[(0, 1)] == res_oracle([5, 0, 1], [5 + 5 ** 9, 0, 1], 5)
    r0, r1 = F.factors
    low = [c % 5 ** 3 for c in r1.lifted.coeffs]
    assert cross_index(r0.type, [c % 5 ** 3 for c in r0.lifted.coeffs], low, 3) is None


@pytest.mark.parametrize("spec", [
    FamilySpec.make("B", p=7, k=5),
    FamilySpec.make("D", l=7, p=2, n=2, k=3),
    FamilySpec.make("Am", p=7, n=3, k=4, m=3),
], ids=lambda s: s.name)
def test_local_and_exact_discriminant_agree(spec):
    f = gen_family(spec)
    a = factor(f, spec.p, 15)
    b = factor(f, spec.p, 15, exact_disc=True)
    assert a.disc_valuation == b.disc_valuation == disc_valuation(f, spec.p)


def test_direct_path_and_algorithm_two():
    f = sympy_mul([-1, 1], [-2, 1], [1, 0, 1], [7, 0, 1])
    base = factor(f, 7, 30)
    for kw in (dict(direct=True), dict(algorithm=2)):
        other = factor(f, 7, 30, **kw)
        assert [r.lifted for r in other.factors] == [r.lifted for r in base.factors]


def test_report_serialises():
    F = factor(gen_family(FamilySpec.make("B", p=7, k=5)), 7, 10)
    d = json.loads(json.dumps(F.to_dict()))
    assert d["ind_p"] == 8 and d["delta_p"] == 4 and d["n_factors"] == 2
    assert d["splitting"] == [[3, 1], [3, 1]]
    assert all(len(x["factor"]) == 4 for x in d["factors"])
