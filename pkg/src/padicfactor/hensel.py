"""Classical quadratic Hensel lifting of a coprime split ``f = g h mod p``.

Used by the benchmark harness as the reference against the order-zero
single-factor lift.
"""

from __future__ import annotations

from .errors import SquareFactor
from .padic import pdivmod, pmul, preduce, psub, padd, strip
from .tower import PrimeField, pdivmod as ff_divmod, pmul as ff_mul, pstrip, pxgcd

__all__ = ["hensel_lift"]


def _mulmod(a, b, M):
    return pmul(a, b, M)


def hensel_lift(f, gbar, p: int, nu: int) -> list:
    """Monic ``g`` with ``g = gbar mod p`` and ``g | f mod p**nu``.

    ``gbar`` must be monic and coprime to ``(f mod p) / gbar``.

    >>> hensel_lift([2, -3, 1], [6, 1], 7, 3)
    [342, 1]
    """
    F = PrimeField(p)
    f = [int(c) for c in f]
    fbar = pstrip(F, [c % p for c in f])
    gbar = pstrip(F, [c % p for c in gbar])
    hbar, r = ff_divmod(F, fbar, gbar)
    if r:
        raise ValueError("gbar does not divide f mod p")
    d, s, t = pxgcd(F, gbar, hbar)
    if len(d) != 1:
        raise SquareFactor("factors are not coprime mod p")
    inv = F.inv(d[0])
    s = ff_mul(F, s, [inv])
    t = ff_mul(F, t, [inv])
    g, h = list(gbar), list(hbar)
    s, t = [int(c) for c in s], [int(c) for c in t]
    k = 1
    while k < nu:
        k2 = min(2 * k, nu)
        M = p ** k2
        # e = f - g h, then g += t e mod g, h += s e mod h
        e = psub(preduce(f, M), _mulmod(g, h, M), M)
        q, r = pdivmod(_mulmod(t, e, M), g, M)
        g_new = padd(g, r, M)
        h_new = padd(h, padd(_mulmod(s, e, M), _mulmod(q, h, M), M), M)
        # Bezout update: b = s g + t h - 1
        b = psub(padd(_mulmod(s, g_new, M), _mulmod(t, h_new, M), M), [1], M)
        q2, r2 = pdivmod(_mulmod(t, b, M), g_new, M)
        t = psub(t, r2, M)
        s = psub(s, padd(_mulmod(s, b, M), _mulmod(q2, h_new, M), M), M)
        g, h = g_new, h_new
        k = k2
    return strip(preduce(g, p ** nu))
