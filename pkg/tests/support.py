"""Independent oracles and shared fixtures for the test suite.

Nothing here calls into the algorithms under test: products are built
from known irreducible factors, discriminants and resultants come from
sympy, and the Hensel reference is sympy's own lifting routine.
"""

from __future__ import annotations

import functools
import random

import sympy
from sympy import ZZ, Poly, symbols
from sympy.polys.factortools import dup_zz_hensel_lift

X = symbols("x")


def vp(n: int, p: int) -> int:
    n = abs(int(n))
    assert n, "valuation of zero"
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def to_sympy(coeffs) -> Poly:
    return Poly(list(reversed([int(c) for c in coeffs])), X, domain=ZZ)


def from_sympy(P: Poly) -> list:
    return [int(c) for c in reversed(P.all_coeffs())]


def sympy_mul(*polys) -> list:
    out = Poly(1, X, domain=ZZ)
    for g in polys:
        out = out * to_sympy(g)
    return from_sympy(out)


def disc_oracle(f, p: int) -> int:
    return vp(sympy.discriminant(to_sympy(f).as_expr(), X), p)


def res_oracle(f, g, p: int):
    r = sympy.resultant(to_sympy(f).as_expr(), to_sympy(g).as_expr(), X)
    return None if r == 0 else vp(r, p)


def reduce_mod(f, M: int) -> list:
    out = [int(c) % M for c in f]
    while out and out[-1] == 0:
        out.pop()
    return out


def hensel_oracle(f, gbar, p: int, nu: int) -> list:
    """Monic lift of ``gbar`` from sympy's multifactor Hensel lifting."""
    fz = [int(c) for c in reversed(f)]
    fbar = Poly(list(reversed([c % p for c in f])), X, modulus=p)
    g = Poly(list(reversed([c % p for c in gbar])), X, modulus=p)
    h, r = divmod(fbar, g)
    assert r.is_zero
    facs = [[int(c) % p for c in g.monic().all_coeffs()],
            [int(c) % p for c in h.monic().all_coeffs()]]
    lifted = dup_zz_hensel_lift(ZZ(p), fz, facs, nu, ZZ)
    M = p ** nu
    return reduce_mod([int(c) for c in reversed(lifted[0])], M)


def squarefree_case(rng: random.Random):
    """Random monic ``f`` and a simple irreducible factor of ``f mod p`` (factored by sympy)."""
    while True:
        p = rng.choice([2, 3, 5, 7, 11])
        n = rng.randint(2, 8)
        f = [rng.randrange(-p ** 5, p ** 5) for _ in range(n)] + [1]
        fbar = Poly(list(reversed([c % p for c in f])), X, modulus=p)
        facs = fbar.factor_list()[1]
        simple = [g for g, m in facs if m == 1]
        if simple and len(facs) > 1:
            g = rng.choice(simple).monic()
            return p, f, [int(c) % p for c in reversed(g.all_coeffs())]


# -- known-factor products -------------------------------------------------

def eisenstein(n: int, p: int, rng: random.Random, shift: int = 0) -> list:
    """Monic Eisenstein polynomial of degree ``n``, optionally ``F(x - shift)``."""
    c = [p * rng.randrange(-9, 10) for _ in range(n)] + [1]
    u = rng.randrange(1, 10 * p)
    while u % p == 0:
        u = rng.randrange(1, 10 * p)
    c[0] = p * u
    if shift:
        c = from_sympy(Poly(to_sympy(c).as_expr().subs(X, X - shift), X, domain=ZZ))
    return c


def known_products(count: int, seed: int):
    """``(p, [F_1, ..., F_k])`` with distinct p-adically irreducible ``F_i``."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        p = rng.choice((2, 3, 5, 7))
        k = rng.choice((2, 2, 3))
        facs = []
        for _ in range(k):
            n = rng.randint(1, 4)
            shift = rng.choice((0, 0, rng.randrange(1, 3 * p)))
            facs.append(eisenstein(n, p, rng, shift))
        if len({tuple(F) for F in facs}) < k:
            continue
        out.append((p, facs))
    return out


# -- family grid -------------------------------------------------------------

def _grid():
    from padicfactor.testpolys import FamilySpec
    from math import gcd
    specs = []
    for p in (5, 13):
        for n in (2, 3, 4):
            for k in range(1, 2 * n + 2):
                if gcd(n, k) != 1:
                    continue
                for r in (0, 1):
                    if r <= k // n:
                        specs.append(FamilySpec.make("A", p=p, n=n, k=k, r=r))
    for m in (2, 3):
        specs.append(FamilySpec.make("Am", p=7, n=3, k=4, m=m))
    for p in (7, 13):
        for k in (2, 4, 5):
            specs.append(FamilySpec.make("B", p=p, k=k))
    specs.append(FamilySpec.make("C", p=17, k=19))
    for l in (5, 7):
        for p in (2, 3):
            specs.append(FamilySpec.make("D", l=l, p=p, n=2, k=3))
    for j in range(1, 6):
        specs.append(FamilySpec.make("E", p=5, j=j))
    return specs


GRID = _grid()


@functools.lru_cache(maxsize=None)
def grid_factorization(spec):
    from padicfactor.factor import factor
    from padicfactor.testpolys import gen_family
    return factor(gen_family(spec), spec.p, 20)


@functools.lru_cache(maxsize=None)
def type_pool():
    """Complete types of several orders, with their polynomial ``f``."""
    from padicfactor.montes import montes
    from padicfactor.testpolys import FamilySpec, gen_family
    pool = []
    for fam, params in (("E", dict(p=5, j=2)), ("E", dict(p=5, j=3)),
                        ("B", dict(p=7, k=5)), ("A", dict(p=5, n=3, k=7, r=1)),
                        ("C", dict(p=17, k=19)), ("D", dict(l=5, p=2, n=2, k=3)),
                        ("Am", dict(p=7, n=3, k=4, m=2))):
        spec = FamilySpec.make(fam, **params)
        f = gen_family(spec)
        for mf in montes(f, spec.p).factors:
            pool.append((spec.name, f, mf))
    return pool


# criterion number -> verdict line, filled by the acceptance module
ACCEPTANCE: dict = {}
