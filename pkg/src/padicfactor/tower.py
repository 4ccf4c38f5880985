"""Finite-field towers ``F_0 = F_p`` and ``F_{i+1} = F_i[y]/(psi_i)``.

Elements are plain Python values: an ``int`` at level 0, the base value
itself for a degree-one extension (the generator is then the root of the
linear modulus), and a tuple of base values otherwise.  Polynomials over a
field are lists of elements, constant term first, with no trailing zeros.
"""

from __future__ import annotations

import random
from functools import cached_property

from .errors import DivisionByZero, ReducibleModulus

__all__ = [
    "FFTowerField",
    "PrimeField",
    "ExtensionField",
    "tower_extend",
    "ff_factor",
    "ff_inverse",
    "pstrip",
]


class FFTowerField:
    """Common interface of all tower levels."""

    level: int
    p: int
    abs_degree: int
    base: "FFTowerField | None"
    modulus: list | None

    @property
    def order(self) -> int:
        return self.p ** self.abs_degree

    # subclasses provide: zero, one, add, sub, neg, mul, inv, from_int,
    # embed, evaluate, gen, random, key, tree

    def is_zero(self, a) -> bool:
        return a == self.zero

    def pow(self, a, k: int):
        if k < 0:
            a, k = self.inv(a), -k
        out = self.one
        while k:
            if k & 1:
                out = self.mul(out, a)
            k >>= 1
            if k:
                a = self.mul(a, a)
        return out

    def elements(self):
        """Iterate over all elements (only sensible for tiny fields)."""
        if self.base is None:
            yield from range(self.p)
            return
        if len(self.modulus) == 2:
            yield from self.base.elements()
            return
        import itertools
        base = list(self.base.elements())
        for combo in itertools.product(base, repeat=len(self.modulus) - 1):
            yield tuple(combo)

    def sqrt_p(self, a):
        """The unique ``p``-th root of ``a`` (Frobenius is bijective)."""
        return self.pow(a, self.order // self.p)


class PrimeField(FFTowerField):
    """The prime field ``F_p``."""

    def __init__(self, p: int):
        self.p = p
        self.level = 0
        self.abs_degree = 1
        self.base = None
        self.modulus = None
        self.zero = 0
        self.one = 1

    def __repr__(self):
        return f"F_{self.p}"

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero("zero has no inverse")
        return pow(a, -1, self.p)

    def from_int(self, n: int):
        return n % self.p

    def embed(self, a):
        raise TypeError("the prime field has no base")

    def random(self, rng):
        return rng.randrange(self.p)

    def key(self, a):
        return a

    def tree(self, a):
        return a


class ExtensionField(FFTowerField):
    """``base[y]/(modulus)`` with ``z`` the class of ``y``."""

    def __init__(self, base: FFTowerField, modulus: list):
        self.base = base
        self.modulus = list(modulus)
        self.p = base.p
        self.level = base.level + 1
        self.degree = len(modulus) - 1
        self.abs_degree = base.abs_degree * self.degree
        if self.degree == 1:
            self.zero, self.one = base.zero, base.one
        else:
            self.zero = tuple([base.zero] * self.degree)
            self.one = tuple([base.one] + [base.zero] * (self.degree - 1))

    def __repr__(self):
        return f"{self.base!r}[y]/({self.degree})"

    @cached_property
    def gen(self):
        B = self.base
        if self.degree == 1:
            return B.neg(self.modulus[0])
        return tuple([B.zero, B.one] + [B.zero] * (self.degree - 2))

    def add(self, a, b):
        B = self.base
        if self.degree == 1:
            return B.add(a, b)
        return tuple(B.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        B = self.base
        if self.degree == 1:
            return B.sub(a, b)
        return tuple(B.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        B = self.base
        if self.degree == 1:
            return B.neg(a)
        return tuple(B.neg(x) for x in a)

    def mul(self, a, b):
        B = self.base
        if self.degree == 1:
            return B.mul(a, b)
        prod = pmul(B, list(a), list(b))
        return self._reduce(prod)

    def _reduce(self, poly):
        B = self.base
        r = pdivmod(B, poly, self.modulus)[1]
        return tuple(r + [B.zero] * (self.degree - len(r)))

    def inv(self, a):
        B = self.base
        if self.degree == 1:
            return B.inv(a)
        if a == self.zero:
            raise DivisionByZero("zero has no inverse")
        g, s, _ = pxgcd(B, pstrip(B, list(a)), list(self.modulus))
        c = B.inv(g[0])
        return self._reduce(pscale(B, s, c))

    def from_int(self, n: int):
        return self.embed(self.base.from_int(n))

    def embed(self, b):
        """Image of a base element."""
        if self.degree == 1:
            return b
        return tuple([b] + [self.base.zero] * (self.degree - 1))

    def evaluate(self, poly):
        """Evaluate a polynomial over the base at the generator ``z``."""
        B = self.base
        if self.degree == 1:
            z = self.gen
            acc = B.zero
            for c in reversed(poly):
                acc = B.add(B.mul(acc, z), c)
            return acc
        return self._reduce(list(poly))

    def to_base_poly(self, a) -> list:
        """Coefficients of ``a`` as a polynomial in ``z`` of degree < deg."""
        if self.degree == 1:
            return pstrip(self.base, [a])
        return pstrip(self.base, list(a))

    def random(self, rng):
        if self.degree == 1:
            return self.base.random(rng)
        return tuple(self.base.random(rng) for _ in range(self.degree))

    def key(self, a):
        if self.degree == 1:
            return self.base.key(a)
        return tuple(self.base.key(x) for x in a)

    def tree(self, a):
        if self.degree == 1:
            return self.base.tree(a)
        return [self.base.tree(x) for x in a]


# ---------------------------------------------------------------------------
# dense polynomials over a field K

def pstrip(K, a: list) -> list:
    while a and K.is_zero(a[-1]):
        a.pop()
    return a


def padd(K, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = K.add(out[i], c)
    return pstrip(K, out)


def psub(K, a, b):
    return padd(K, a, [K.neg(c) for c in b])


def pscale(K, a, c):
    if K.is_zero(c):
        return []
    return pstrip(K, [K.mul(x, c) for x in a])


def pmul(K, a, b):
    if not a or not b:
        return []
    out = [K.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if K.is_zero(x):
            continue
        for j, y in enumerate(b):
            if not K.is_zero(y):
                out[i + j] = K.add(out[i + j], K.mul(x, y))
    return pstrip(K, out)


def pdivmod(K, a, b):
    """Euclidean division over a field."""
    a = pstrip(K, list(a))
    b = pstrip(K, list(b))
    if not b:
        raise DivisionByZero("polynomial division by zero")
    db = len(b) - 1
    if len(a) <= db:
        return [], a
    inv = K.inv(b[-1])
    r = list(a)
    q = [K.zero] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if K.is_zero(c):
            continue
        c = K.mul(c, inv)
        k = i - db
        q[k] = c
        for j in range(db + 1):
            r[k + j] = K.sub(r[k + j], K.mul(c, b[j]))
    return pstrip(K, q), pstrip(K, r[:db])


def pmonic(K, a):
    if not a:
        return a
    return pscale(K, a, K.inv(a[-1]))


def pgcd(K, a, b):
    a, b = pstrip(K, list(a)), pstrip(K, list(b))
    while b:
        a, b = b, pdivmod(K, a, b)[1]
    return pmonic(K, a)


def pxgcd(K, a, b):
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` (``g`` not normalised)."""
    r0, r1 = list(a), list(b)
    s0, s1 = [K.one], []
    t0, t1 = [], [K.one]
    while r1:
        q, r = pdivmod(K, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(K, s0, pmul(K, q, s1))
        t0, t1 = t1, psub(K, t0, pmul(K, q, t1))
    return r0, s0, t0


def pderiv(K, a):
    return pstrip(K, [K.mul(K.from_int(i), c) for i, c in enumerate(a)][1:])


def ppowmod(K, a, k: int, m):
    out = [K.one]
    a = pdivmod(K, a, m)[1]
    while k:
        if k & 1:
            out = pdivmod(K, pmul(K, out, a), m)[1]
        k >>= 1
        if k:
            a = pdivmod(K, pmul(K, a, a), m)[1]
    return out


def peval(K, a, x):
    acc = K.zero
    for c in reversed(a):
        acc = K.add(K.mul(acc, x), c)
    return acc


def pkey(K, a):
    return (len(a), tuple(K.key(c) for c in reversed(a)))


# ---------------------------------------------------------------------------
# factorization

def _squarefree(K, f):
    """Yun-style square-free decomposition in characteristic ``p``."""
    out = []
    df = pderiv(K, f)
    if not df:
        root = [K.sqrt_p(c) for c in f[::K.p]]
        return [(g, m * K.p) for g, m in _squarefree(K, root)]
    c = pgcd(K, f, df)
    w = pdivmod(K, f, c)[0]
    i = 1
    while len(w) > 1:
        y = pgcd(K, w, c)
        fac = pdivmod(K, w, y)[0]
        if len(fac) > 1:
            out.append((pmonic(K, fac), i))
        w = y
        c = pdivmod(K, c, y)[0]
        i += 1
    if len(c) > 1:
        root = [K.sqrt_p(x) for x in c[::K.p]]
        out.extend((g, m * K.p) for g, m in _squarefree(K, pmonic(K, root)))
    return out


def _distinct_degree(K, f):
    q = K.order
    out = []
    x = [K.zero, K.one]
    h = x
    i = 1
    g_rest = f
    while len(g_rest) - 1 >= 2 * i:
        h = ppowmod(K, h, q, g_rest)
        g = pgcd(K, g_rest, psub(K, h, x))
        if len(g) > 1:
            out.append((g, i))
            g_rest = pdivmod(K, g_rest, g)[0]
            h = pdivmod(K, h, g_rest)[1]
        i += 1
    if len(g_rest) > 1:
        out.append((g_rest, len(g_rest) - 1))
    return out


def _equal_degree(K, f, d: int, rng):
    n = len(f) - 1
    if n == d:
        return [f]
    q = K.order
    while True:
        a = pstrip(K, [K.random(rng) for _ in range(n)])
        if len(a) < 2:
            continue
        if K.p == 2:
            t = a
            b = a
            for _ in range(K.abs_degree * d - 1):
                b = pdivmod(K, pmul(K, b, b), f)[1]
                t = padd(K, t, b)
        else:
            t = psub(K, ppowmod(K, a, (q ** d - 1) // 2, f), [K.one])
        g = pgcd(K, f, t)
        if 1 < len(g) < len(f):
            h = pdivmod(K, f, g)[0]
            return (_equal_degree(K, g, d, rng)
                    + _equal_degree(K, pmonic(K, h), d, rng))


def ff_factor(K: FFTowerField, g, seed: int = 0):
    """Factor a nonzero polynomial over ``K`` into monic irreducibles.

    Returns ``[(factor, multiplicity), ...]`` sorted by degree and then by
    coefficients, so the output does not depend on the random seed.

    >>> F5 = PrimeField(5)
    >>> ff_factor(F5, [4, 0, 1])
    [([1, 1], 1), ([4, 1], 1)]
    """
    g = pstrip(K, list(g))
    if not g:
        raise ValueError("cannot factor the zero polynomial")
    if len(g) == 1:
        return []
    rng = random.Random(seed)
    out = []
    for part, mult in _squarefree(K, pmonic(K, g)):
        for block, d in _distinct_degree(K, part):
            for fac in _equal_degree(K, pmonic(K, block), d, rng):
                out.append((pmonic(K, fac), mult))
    out.sort(key=lambda t: pkey(K, t[0]))
    return out


def is_irreducible(K, g) -> bool:
    g = pstrip(K, list(g))
    if len(g) < 2:
        return False
    facs = ff_factor(K, g)
    return len(facs) == 1 and facs[0][1] == 1


def tower_extend(K: FFTowerField, psi) -> ExtensionField:
    """Adjoin a root of the monic irreducible ``psi`` to ``K``.

    Raises :class:`ReducibleModulus` when ``psi`` splits over ``K``.
    """
    psi = pstrip(K, [K.from_int(c) if isinstance(c, int) and K.level else c
                     for c in psi])
    if len(psi) < 2 or psi[-1] != K.one:
        raise ReducibleModulus("modulus must be monic of positive degree")
    if len(psi) > 2 and not is_irreducible(K, psi):
        raise ReducibleModulus("modulus is reducible")
    return ExtensionField(K, psi)


def ff_inverse(K: FFTowerField, a):
    return K.inv(a)
