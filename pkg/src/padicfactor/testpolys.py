"""Exact generators for the test families and their expected invariants.

Families: ``A`` (p, n, k, r), ``Am`` (p, n, k, m), ``B`` (p, k),
``C`` (p, k), ``D`` (l, p, n, k) and ``E`` (p, j).  Every generator works
over the integers; truncation happens later.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import BadParams
from .padic import vp, zadd, zmul, zpow

__all__ = ["FamilySpec", "ExpectedRow", "gen_family", "expected_invariants",
           "is_prime", "parse_params", "E_SLOPES"]

#: Slopes ``(h_i, e_i)`` of the levels of the E family.
E_SLOPES = ((1, 2), (3, 2), (2, 3), (2, 3), (1, 2), (1, 2), (1, 3), (1, 2))
_E_DEGREES = (2, 4, 12, 36, 72, 144, 432, 864)
# Tabulated (width_sum, ind_p, delta_p) for E_3 ... E_8.
_E_TABLE = {3: (3, 52, 11), 4: (4, 553, 35), 5: (5, 2300, 71),
            6: (6, 9378, 143), 7: (7, 85476, 431), 8: (8, 342981, 863)}

_PARAMS = {
    "A": ("p", "n", "k", "r"),
    "Am": ("p", "n", "k", "m"),
    "B": ("p", "k"),
    "C": ("p", "k"),
    "D": ("l", "p", "n", "k"),
    "E": ("p", "j"),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d, s = d // 2, s + 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple  # sorted (name, value) pairs

    @classmethod
    def make(cls, family: str, **params) -> "FamilySpec":
        spec = cls(family, tuple(sorted(params.items())))
        spec.check()
        return spec

    def __getitem__(self, key):
        return dict(self.params)[key]

    @property
    def name(self) -> str:
        args = ",".join(str(self[k]) for k in _PARAMS[self.family])
        return f"{self.family}_{{{args}}}"

    @property
    def p(self) -> int:
        return self["p"]

    def check(self):
        fam = self.family
        if fam not in _PARAMS:
            raise BadParams(f"unknown family {fam!r}")
        given = dict(self.params)
        missing = [k for k in _PARAMS[fam] if k not in given]
        extra = [k for k in given if k not in _PARAMS[fam]]
        if missing or extra:
            raise BadParams(f"family {fam} takes parameters {', '.join(_PARAMS[fam])}")
        p = given["p"]
        if not is_prime(p):
            raise BadParams("p must be prime")

        def need(cond, what):
            if not cond:
                raise BadParams(f"{fam}: {what}")

        if fam == "A":
            n, k, r = given["n"], given["k"], given["r"]
            need(n >= 2 and k >= 1, "n >= 2 and k >= 1")
            need(math.gcd(n, k) == 1, "gcd(n, k) = 1")
            need(0 <= r <= k // n, "0 <= r <= floor(k/n)")
        elif fam == "Am":
            n, k, m = given["n"], given["k"], given["m"]
            need(p > 3, "p > 3")
            need(n >= 2 and k >= 1, "n >= 2 and k >= 1")
            need(math.gcd(n, k) == 1, "gcd(n, k) = 1")
            need(k > n * vp(n, p), "k > n v_p(n)")
            need(1 < m < p / 2, "1 < m < p/2")
        elif fam == "B":
            k = given["k"]
            need(p % 3 == 1, "p = 1 mod 3")
            need(k >= 1 and k % 3 != 0, "k not divisible by 3")
        elif fam == "C":
            need(p % 12 == 5, "p = 5 mod 12")
            need(given["k"] > 18, "k > 18")
        elif fam == "D":
            l, n, k = given["l"], given["n"], given["k"]
            need(is_prime(l) and l != p, "l and p distinct primes")
            need(n >= 2 and k >= 1, "n >= 2 and k >= 1")
            need(math.gcd(n, k) == 1, "gcd(n, k) = 1")
        elif fam == "E":
            need(p > 3, "p > 3")
            need(1 <= given["j"] <= 8, "j in 1..8")


@dataclass(frozen=True)
class ExpectedRow:
    degree: int
    n_factors: int
    depth: int
    width_sum: int
    ind_p: int
    delta_p: int
    splitting: tuple          # (e, f) per prime ideal
    widths: tuple = field(default=())  # width vector per factor, when known

    def to_dict(self) -> dict:
        return {
            "degree": self.degree, "n_factors": self.n_factors, "depth": self.depth,
            "width_sum": self.width_sum, "ind_p": self.ind_p, "delta_p": self.delta_p,
            "splitting": [list(x) for x in self.splitting],
            "widths": [list(w) for w in self.widths],
        }


def _E(p: int, j: int) -> list:
    E1 = [p, 0, 1]
    seq = {1: E1}
    seq[2] = zadd(zpow(E1, 2), [0, (p - 1) * p ** 3])
    seq[3] = zadd(zpow(seq[2], 3), [p ** 11])
    seq[4] = zadd(zpow(seq[3], 3), zmul([0, p ** 29], seq[2]))
    if j <= 4:
        return seq[j]
    seq[5] = zadd(zpow(seq[4], 2),
                  zmul(zmul([0, (p - 1) * p ** 42], E1), zpow(seq[3], 2)))
    if j == 5:
        return seq[5]
    seq[6] = zadd(zpow(seq[5], 2), zmul(zmul([0, p ** 88], seq[3]), seq[4]))
    if j == 6:
        return seq[6]
    seq[7] = zadd(zpow(seq[6], 3), zmul(zmul([p ** 295], seq[2]), zmul(seq[4], seq[5])))
    if j == 7:
        return seq[7]
    tail = zmul(zmul(zmul([0, (p - 1) * p ** 632], E1), zpow(seq[2], 2)),
                zmul(zpow(seq[3], 2), seq[6]))
    return zadd(zpow(seq[7], 2), tail)


def gen_family(spec: FamilySpec) -> list:
    """Integer coefficients (constant first) of the family member.

    >>> gen_family(FamilySpec.make("A", p=5, n=2, k=3, r=0))
    [126, 2, 1]
    """
    spec.check()
    g = dict(spec.params)
    p = g["p"]
    fam = spec.family
    if fam == "A":
        shift = sum(p ** i for i in range(g["r"] + 1))
        return zadd(zpow([shift, 1], g["n"]), [p ** g["k"]])
    if fam == "Am":
        n, k, m = g["n"], g["k"], g["m"]
        out = [1]
        for i in range(m):
            out = zmul(out, zadd(zpow([2 * i, 1], n), [2 * p ** k]))
        return zadd(out, [2 * p ** (m * n * k)])
    if fam == "B":
        return zadd(zpow([4, -2, 1], 3), [p ** g["k"]])
    if fam == "C":
        inner = [4 * p ** 2, 0, 3 * p ** 2, 4 * p, 0, 0, 1]
        mid = zadd(zpow(inner, 2), [p ** 6])
        return zadd(zpow(mid, 3), [p ** g["k"]])
    if fam == "D":
        cyc = [1] * g["l"]
        return zadd(zpow(cyc, g["n"]), [p ** g["k"]])
    return _E(p, g["j"])


def _ceil(a: int, b: int) -> int:
    return -(-a // b)


def _index_from_slopes(slopes, fs=None) -> int:
    """Index of an irreducible factor from its per-level ``(h, e)`` and ``f``."""
    from fractions import Fraction
    fs = fs or [1] * (len(slopes) + 1)
    deg = fs[0]
    for (h, e), f in zip(slopes, fs[1:]):
        deg *= e * f
    total = Fraction(0)
    E = 1
    m = fs[0]
    for (h, e), f in zip(slopes, fs[1:]):
        total += Fraction(1, E) * (Fraction(h, e) * (Fraction(deg, m) - 1) - Fraction(e - 1, e))
        E *= e
        m *= e * f
    val = Fraction(deg, 2) * total
    assert val.denominator == 1
    return int(val)


def expected_invariants(spec: FamilySpec) -> ExpectedRow:
    """Closed-form characteristics of a family member.

    >>> expected_invariants(FamilySpec.make("A", p=5, n=2, k=3, r=0)).ind_p
    1
    """
    spec.check()
    g = dict(spec.params)
    p = g["p"]
    fam = spec.family
    if fam == "A":
        n, k = g["n"], g["k"]
        w = _ceil(k, n)
        return ExpectedRow(n, 1, 1, w, (k - 1) * (n - 1) // 2,
                           n * vp(n, p) + n - 1, ((n, 1),), ((w,),))
    if fam == "Am":
        n, k, m = g["n"], g["k"], g["m"]
        w = _ceil(k, n)
        return ExpectedRow(n * m, m, 1, m * w, m * (k - 1) * (n - 1) // 2,
                           m * (n * vp(n, p) + n - 1), ((n, 1),) * m, ((w,),) * m)
    if fam == "B":
        k = g["k"]
        w = _ceil(k, 3)
        return ExpectedRow(6, 2, 1, 2 * w, 2 * (k - 1), 4, ((3, 1),) * 2, ((w,),) * 2)
    if fam == "C":
        k = g["k"]
        return ExpectedRow(36, 6, 3, 6 * k - 90, 12 * k + 78, 24, ((3, 2),) * 6,
                           ((1, 1, k - 17),) * 6)
    if fam == "D":
        l, n, k = g["l"], g["n"], g["k"]
        f = 1
        while pow(p, f, l) != 1:
            f += 1
        gg = (l - 1) // f
        w = _ceil(k, n)
        ind = gg * (f * (n - 1) * (k - 1)) // 2
        return ExpectedRow(n * (l - 1), gg, 1, gg * w, ind,
                           (l - 1) * (n * vp(n, p) + n - 1), ((n, f),) * gg, ((w,),) * gg)
    j = g["j"]
    deg = _E_DEGREES[j - 1]
    slopes = E_SLOPES[:j]
    widths = tuple(_ceil(h, e) for h, e in slopes)
    if j in _E_TABLE:
        wsum, ind, delta = _E_TABLE[j]
    else:
        wsum, ind, delta = sum(widths), _index_from_slopes(slopes), deg - 1
    return ExpectedRow(deg, 1, j, wsum, ind, delta, ((deg, 1),), (widths,))


def parse_params(text: str) -> dict:
    """``"p=5,n=2"`` -> ``{"p": 5, "n": 2}``."""
    out = {}
    for part in filter(None, (s.strip() for s in text.split(","))):
        if "=" not in part:
            raise BadParams(f"expected name=value, got {part!r}")
        key, val = part.split("=", 1)
        try:
            out[key.strip()] = int(val)
        except ValueError as exc:
            raise BadParams(f"parameter {key!r} must be an integer") from exc
    return out
