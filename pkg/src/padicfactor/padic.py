"""Truncated p-adic integers and dense polynomials over them.

Two layers live here.  The kernel functions (``padd``, ``pmul``,
``pdivmod``, ``pexpand`` ...) operate on plain lists of Python integers,
constant term first, reduced into ``[0, M)`` for a modulus ``M = p**N``.
The classes :class:`PadicElement` and :class:`PadicPoly` wrap those
kernels with an explicit precision and an optional denominator exponent.

Exact integer polynomials (no truncation) are also lists of ints; they
feed :func:`disc_valuation` and the family generators.
"""

from __future__ import annotations

import ast
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import EmptyInput, NonMonicDivisor, ZeroDiscriminant

try:  # GMP multiplication is much faster on the packed integers below
    import gmpy2 as _gmpy2
except ImportError:  # pragma: no cover - optional speedup
    _gmpy2 = None

INF = math.inf

#: Polynomials shorter than this are multiplied by the schoolbook method.
KRONECKER_THRESHOLD = 24
#: Quotients shorter than this are computed by schoolbook division.
FAST_DIVISION_THRESHOLD = 24

__all__ = [
    "INF",
    "PadicElement",
    "PadicPoly",
    "MonicDivisor",
    "vp",
    "v1",
    "poly_quotrem",
    "phi_expansion",
    "disc_valuation",
    "parse_poly",
    "format_poly",
    "parse_expression",
]


# ---------------------------------------------------------------------------
# integer helpers

def vp(c: int, p: int) -> float | int:
    """Return the ``p``-adic valuation of the integer ``c`` (``INF`` for 0)."""
    if c == 0:
        return INF
    if _gmpy2 is not None:
        return int(_gmpy2.remove(_gmpy2.mpz(c), p)[1])
    k = 0
    while c % p == 0:
        c //= p
        k += 1
    return k


def v1(coeffs, p: int) -> float | int:
    """Minimum coefficient valuation of an integer coefficient list."""
    best = INF
    for c in coeffs:
        if c:
            v = vp(c, p)
            if v < best:
                best = v
                if v == 0:
                    break
    return best


def strip(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


# ---------------------------------------------------------------------------
# kernels on lists modulo M

def preduce(a, M: int) -> list:
    return strip([c % M for c in a])


def padd(a, b, M: int) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return preduce(out, M)


def psub(a, b, M: int) -> list:
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] -= c
    return preduce(out, M)


def pscale(a, c: int, M: int) -> list:
    c %= M
    if not c:
        return []
    return preduce([x * c for x in a], M)


def _pack(a, nb: int) -> int:
    return int.from_bytes(b"".join(c.to_bytes(nb, "little") for c in a), "little")


def _kron_mul(a, b, M: int) -> list:
    n = len(a) + len(b) - 1
    bits = 2 * M.bit_length() + min(len(a), len(b)).bit_length() + 1
    nb = (bits + 7) // 8
    A = _pack(a, nb)
    B = A if a is b else _pack(b, nb)
    if _gmpy2 is not None:
        C = int(_gmpy2.mpz(A) * _gmpy2.mpz(B))
    else:  # pragma: no cover
        C = A * B
    data = C.to_bytes(nb * n, "little")
    frm = int.from_bytes
    return strip([frm(data[i:i + nb], "little") % M for i in range(0, nb * n, nb)])


def pmul(a, b, M: int) -> list:
    """Product of two coefficient lists modulo ``M``."""
    if not a or not b:
        return []
    if min(len(a), len(b)) >= KRONECKER_THRESHOLD:
        return _kron_mul(a, b, M)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return preduce(out, M)


def pmul_low(a, b, n: int, M: int) -> list:
    """First ``n`` coefficients of ``a*b`` modulo ``M``."""
    return strip(pmul(a[:n], b[:n], M)[:n])


def _series_inverse(g, n: int, M: int) -> list:
    """Inverse of the power series ``g`` (unit constant term) modulo ``x**n``."""
    x = [pow(g[0], -1, M)]
    k = 1
    while k < n:
        k = min(2 * k, n)
        t = pmul_low(g, x, k, M)
        t = [(-c) % M for c in t]
        t += [0] * (k - len(t))
        t[0] = (t[0] + 2) % M
        x = pmul_low(x, t, k, M)
    return x


class MonicDivisor:
    """A monic divisor modulo ``M`` with a cached reversed inverse.

    Repeated division by the same polynomial (Newton loops, phi-adic
    expansions) reuses the power-series inverse of its reversal.
    """

    __slots__ = ("g", "M", "deg", "_rev", "_inv")

    def __init__(self, g, M: int):
        g = preduce(list(g), M)
        if not g or g[-1] != 1:
            raise NonMonicDivisor("divisor must be monic")
        self.g = g
        self.M = M
        self.deg = len(g) - 1
        self._rev = g[::-1]
        self._inv: list = []

    def _inverse(self, n: int) -> list:
        if len(self._inv) < n:
            self._inv = _series_inverse(self._rev, n, self.M)
            self._inv += [0] * (n - len(self._inv))
        return self._inv[:n]

    def divmod(self, a) -> tuple[list, list]:
        M, g, m = self.M, self.g, self.deg
        a = [c % M for c in a]
        strip(a)
        if len(a) <= m:
            return [], a
        nq = len(a) - m
        if m == 0:
            return a, []
        if nq < FAST_DIVISION_THRESHOLD or m < FAST_DIVISION_THRESHOLD:
            r = list(a)
            q = [0] * nq
            for i in range(len(a) - 1, m - 1, -1):
                c = r[i] % M
                if c:
                    k = i - m
                    q[k] = c
                    for j in range(m):
                        r[k + j] -= c * g[j]
            return strip(q), preduce(r[:m], M)
        ra = a[::-1][:nq]
        qr = pmul_low(ra, self._inverse(nq), nq, M)
        qr += [0] * (nq - len(qr))
        q = strip(qr[::-1])
        low = pmul_low(q, g, m, M)
        return q, psub(a[:m], low, M)

    def rem(self, a) -> list:
        return self.divmod(a)[1]


def pdivmod(a, g, M: int) -> tuple[list, list]:
    """Quotient and remainder of ``a`` by the monic ``g`` modulo ``M``."""
    return MonicDivisor(g, M).divmod(a)


class PowerLadder:
    """Divisors ``phi**(2**j)`` modulo ``M`` for divide-and-conquer expansion."""

    def __init__(self, phi, M: int):
        self.M = M
        self.m = len(preduce(list(phi), M)) - 1
        self.divs = [MonicDivisor(phi, M)]

    def div(self, j: int) -> MonicDivisor:
        while len(self.divs) <= j:
            g = self.divs[-1].g
            self.divs.append(MonicDivisor(pmul(g, g, self.M), self.M))
        return self.divs[j]

    def expand(self, a, count: int | None = None) -> list:
        """phi-adic coefficients of ``a``; at least ``count`` entries."""
        a = preduce(list(a), self.M)
        out = self._expand(a)
        if count is not None and len(out) < count:
            out += [[] for _ in range(count - len(out))]
        return out

    def _expand(self, a) -> list:
        m = self.m
        if len(a) <= m:
            return [a]
        nc = (len(a) - 1) // m + 1  # number of coefficients needed
        if nc <= 3:
            d = self.divs[0]
            out = []
            while len(a) > m:
                a, r = d.divmod(a)
                out.append(r)
            out.append(a)
            return out
        j = (nc - 1).bit_length() - 1
        q, r = self.div(j).divmod(a)
        low = self._expand(r)
        low += [[] for _ in range((1 << j) - len(low))]
        return low + self._expand(q)


def pexpand(a, phi, M: int) -> list:
    """phi-adic expansion ``a = sum a_s phi**s`` modulo ``M``."""
    return PowerLadder(phi, M).expand(a)


def ppow(a, k: int, M: int) -> list:
    out = [1]
    base = list(a)
    while k:
        if k & 1:
            out = pmul(out, base, M)
        k >>= 1
        if k:
            base = pmul(base, base, M)
    return out


# ---------------------------------------------------------------------------
# exact integer polynomials

def zmul(a, b) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return strip(out)


def zadd(a, b) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return strip(out)


def zpow(a, k: int) -> list:
    out = [1]
    for _ in range(k):
        out = zmul(out, a)
    return out


def zderiv(a) -> list:
    return strip([i * c for i, c in enumerate(a)][1:])


# ---------------------------------------------------------------------------
# public element and polynomial types

@dataclass(frozen=True)
class PadicElement:
    """A p-adic integer known modulo ``prime**prec``."""

    value: int
    prec: int
    prime: int

    def __post_init__(self):
        if self.prec < 1:
            raise ValueError("precision must be positive")
        object.__setattr__(self, "value", self.value % self.prime ** self.prec)

    def valuation(self):
        """Valuation, or ``INF`` when the element is zero at this precision."""
        return vp(self.value, self.prime)

    def _coerce(self, other):
        if isinstance(other, PadicElement):
            if other.prime != self.prime:
                raise ValueError("different primes")
            return other.value, min(self.prec, other.prec)
        return int(other), self.prec

    def __add__(self, other):
        v, n = self._coerce(other)
        return PadicElement(self.value + v, n, self.prime)

    __radd__ = __add__

    def __sub__(self, other):
        v, n = self._coerce(other)
        return PadicElement(self.value - v, n, self.prime)

    def __rsub__(self, other):
        v, n = self._coerce(other)
        return PadicElement(v - self.value, n, self.prime)

    def __mul__(self, other):
        v, n = self._coerce(other)
        return PadicElement(self.value * v, n, self.prime)

    __rmul__ = __mul__

    def __neg__(self):
        return PadicElement(-self.value, self.prec, self.prime)


class PadicPoly:
    """Polynomial ``b(x) / p**d`` with ``b`` known modulo ``p**prec``.

    Coefficients are stored constant-first as canonical residues.  All
    binary operations use the smaller of the operand precisions; nothing
    grows silently.

    Examples
    --------
    >>> f = PadicPoly([5, 0, 1], 5, 10)
    >>> f.v1()
    0
    >>> q, r = f.quotrem(PadicPoly([0, 1], 5, 10))
    >>> q.coeffs, r.coeffs
    ((0, 1), (5,))
    """

    __slots__ = ("coeffs", "p", "prec", "d")

    def __init__(self, coeffs, p: int, prec: int, d: int = 0):
        if prec < 1:
            raise ValueError("precision must be positive")
        if d < 0:
            raise ValueError("denominator exponent must be non-negative")
        M = p ** prec
        self.coeffs = tuple(preduce([int(c) for c in coeffs], M))
        self.p = p
        self.prec = prec
        self.d = d

    # -- basic data
    @property
    def modulus(self) -> int:
        return self.p ** self.prec

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.d == 0 and bool(self.coeffs) and self.coeffs[-1] == 1

    def __repr__(self):
        den = f"/{self.p}^{self.d}" if self.d else ""
        return f"PadicPoly({list(self.coeffs)}{den}, p={self.p}, prec={self.prec})"

    def __eq__(self, other):
        if not isinstance(other, PadicPoly):
            return NotImplemented
        return (self.p, self.prec, self.d, self.coeffs) == (
            other.p, other.prec, other.d, other.coeffs)

    def __hash__(self):
        return hash((self.p, self.prec, self.d, self.coeffs))

    def elements(self) -> list[PadicElement]:
        return [PadicElement(c, self.prec, self.p) for c in self.coeffs]

    # -- precision handling
    def with_prec(self, prec: int) -> "PadicPoly":
        return PadicPoly(self.coeffs, self.p, prec, self.d)

    def normalized(self) -> "PadicPoly":
        """Strip common powers of ``p`` shared by numerator and denominator."""
        if not self.d or not self.coeffs:
            return self if self.coeffs else PadicPoly([], self.p, self.prec)
        k = min(self.d, v1(self.coeffs, self.p), self.prec - 1)
        if k <= 0:
            return self
        q = self.p ** k
        return PadicPoly([c // q for c in self.coeffs], self.p, self.prec - k, self.d - k)

    def _align(self, other: "PadicPoly"):
        if other.p != self.p:
            raise ValueError("different primes")
        d = max(self.d, other.d)
        a = [c * self.p ** (d - self.d) for c in self.coeffs]
        b = [c * other.p ** (d - other.d) for c in other.coeffs]
        prec = min(self.prec + d - self.d, other.prec + d - other.d)
        return a, b, d, prec

    # -- ring operations
    def __add__(self, other: "PadicPoly") -> "PadicPoly":
        a, b, d, prec = self._align(other)
        return PadicPoly(zadd(a, b), self.p, prec, d)

    def __neg__(self) -> "PadicPoly":
        return PadicPoly([-c for c in self.coeffs], self.p, self.prec, self.d)

    def __sub__(self, other: "PadicPoly") -> "PadicPoly":
        return self + (-other)

    def __mul__(self, other) -> "PadicPoly":
        if isinstance(other, int):
            return PadicPoly([c * other for c in self.coeffs], self.p, self.prec, self.d)
        if other.p != self.p:
            raise ValueError("different primes")
        prec = min(self.prec, other.prec)
        M = self.p ** prec
        return PadicPoly(pmul(list(self.coeffs), list(other.coeffs), M), self.p, prec,
                         self.d + other.d)

    __rmul__ = __mul__

    def v1(self):
        """Minimum coefficient valuation (``INF`` when zero at this precision).

        The denominator exponent is subtracted, so the value may be negative.
        """
        v = v1(self.coeffs, self.p)
        return v if v == INF else v - self.d

    def quotrem(self, g: "PadicPoly") -> tuple["PadicPoly", "PadicPoly"]:
        """Division by a monic ``g``: ``self = q*g + r`` with ``deg r < deg g``."""
        if not g.is_monic():
            raise NonMonicDivisor("divisor must be monic with integral coefficients")
        prec = min(self.prec, g.prec)
        q, r = pdivmod(list(self.coeffs), list(g.coeffs), self.p ** prec)
        return (PadicPoly(q, self.p, prec, self.d), PadicPoly(r, self.p, prec, self.d))

    def __mod__(self, g: "PadicPoly") -> "PadicPoly":
        return self.quotrem(g)[1]

    def phi_expansion(self, phi: "PadicPoly") -> list["PadicPoly"]:
        """Coefficients ``[a_0, a_1, ...]`` of ``self = sum a_s phi**s``."""
        if not phi.is_monic() or phi.degree < 1:
            raise NonMonicDivisor("phi must be monic of positive degree")
        prec = min(self.prec, phi.prec)
        parts = pexpand(list(self.coeffs), list(phi.coeffs), self.p ** prec)
        return [PadicPoly(a, self.p, prec, self.d) for a in parts]


def poly_quotrem(f: PadicPoly, g: PadicPoly) -> tuple[PadicPoly, PadicPoly]:
    return f.quotrem(g)


def phi_expansion(g: PadicPoly, phi: PadicPoly) -> list[PadicPoly]:
    return g.phi_expansion(phi)


# ---------------------------------------------------------------------------
# discriminant valuation over the integers

def _content(a) -> int:
    g = 0
    for c in a:
        g = math.gcd(g, c)
        if g == 1:
            break
    return g


def _zprem(a, b) -> list:
    """Pseudo-remainder ``lc(b)**(deg a - deg b + 1) * a mod b`` over Z."""
    r = list(a)
    nb = len(b) - 1
    c = b[-1]
    for i in range(len(a) - 1, nb - 1, -1):
        t = r[i]
        r = [c * x for x in r]
        if t:
            k = i - nb
            for j, y in enumerate(b):
                r[k + j] -= t * y
        r[i] = 0
    return strip(r[:nb] if nb else [])


def resultant_valuation(a, b, p: int) -> float | int:
    """``v_p(Res(a, b))`` for exact integer polynomials with ``deg a >= deg b``.

    Primitive pseudo-remainder sequence: contents are divided out exactly
    and every scaling factor is accounted for by its valuation, so no
    cancellation can be mistaken for a zero.
    """
    total = 0
    a, b = strip(list(a)), strip(list(b))
    if not a or not b:
        return INF
    if len(a) < len(b):
        a, b = b, a
    while True:
        na, nb = len(a) - 1, len(b) - 1
        if nb == 0:
            return total + na * vp(b[0], p)
        vc = vp(b[-1], p)
        r = _zprem(a, b)
        if not r:
            return INF
        cont = _content(r)
        r = [x // cont for x in r]
        delta = na - nb
        # Res(b, a) from Res(b, prem) with prem = cont * r
        total += (na - (len(r) - 1)) * vc - (delta + 1) * nb * vc + nb * vp(cont, p)
        cb = _content(b)
        if cb != 1:
            total += (len(r) - 1) * vp(cb, p)
            b = [x // cb for x in b]
        a, b = b, r


def disc_valuation(f, p: int) -> int:
    """Valuation at ``p`` of the discriminant of an integer polynomial.

    Examples
    --------
    >>> disc_valuation([5, 0, 1], 5)
    1
    """
    f = strip([int(c) for c in f])
    if len(f) < 2:
        raise EmptyInput("need a polynomial of positive degree")
    v = resultant_valuation(f, zderiv(f), p)
    if v == INF:
        raise ZeroDiscriminant("polynomial is not separable")
    return int(v - vp(f[-1], p))


# ---------------------------------------------------------------------------
# text formats

def parse_poly(text: str) -> list[int]:
    """Parse the constant-first comma list ``"5,0,1"`` into ``[5, 0, 1]``."""
    parts = [t.strip() for t in text.strip().strip("[]").split(",")]
    if not parts or parts == [""]:
        raise EmptyInput("empty polynomial")
    return strip([int(t) for t in parts])


def format_poly(coeffs) -> str:
    return ",".join(str(int(c)) for c in coeffs) if coeffs else "0"


def parse_expression(text: str, p: int | None = None) -> list[int]:
    """Read an integer polynomial written in ``x`` (and optionally ``p``).

    Supports ``+ - *``, non-negative integer powers and parentheses.

    >>> parse_expression("(x^2 - 2*x + 4)^3 + p^2", p=7)[:2]
    [113, -96]
    """
    tree = ast.parse(text.replace("^", "**"), mode="eval")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return [node.value] if node.value else []
        if isinstance(node, ast.Name):
            if node.id == "x":
                return [0, 1]
            if node.id == "p" and p is not None:
                return [p]
            raise ValueError(f"unknown symbol {node.id!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return [-c for c in v] if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            left = ev(node.left)
            if isinstance(node.op, ast.Pow):
                k = ev(node.right)
                if len(k) > 1 or (k and k[0] < 0):
                    raise ValueError("exponent must be a non-negative integer")
                return zpow(left, k[0] if k else 0)
            right = ev(node.right)
            if isinstance(node.op, ast.Add):
                return zadd(left, right)
            if isinstance(node.op, ast.Sub):
                return zadd(left, [-c for c in right])
            if isinstance(node.op, ast.Mult):
                return zmul(left, right)
        raise ValueError("unsupported expression")

    return ev(tree)


def fraction_ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)
