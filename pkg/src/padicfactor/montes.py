"""The Montes loop: one complete optimal type per irreducible p-adic factor."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NotARepresentative, NotMonic, NotSeparable, PrecisionExhausted, ZeroDiscriminant
from .omtypes import OMType, _Context
from .padic import PowerLadder, disc_valuation, preduce, strip, zderiv
from .tower import PrimeField, ff_factor, pgcd, pstrip

__all__ = ["MontesFactor", "MontesOutput", "montes", "approximation_slope", "is_separable"]

log = logging.getLogger(__name__)

#: Word-size primes used for the quick separability test.
_SEPARABILITY_PRIMES = (1000003, 1000033, 1000037, 1000039)
#: Cap on precision doublings before giving up.
MAX_RESTARTS = 12


@dataclass
class MontesFactor:
    """A complete type, its Montes approximation and the slope ``h_phi``.

    ``h_exact`` is false when ``f mod phi`` vanished at the working precision;
    ``h_phi`` is then only a lower bound.
    """

    type: OMType
    phi: tuple
    h_phi: int
    h_exact: bool = True

    @property
    def degree(self) -> int:
        return len(self.phi) - 1


@dataclass
class MontesOutput:
    factors: list
    prec: int
    iterations: int
    restarts: int = 0
    trace: list = field(default_factory=list)

    @property
    def types(self) -> list:
        return [(m.type, m.phi, m.h_phi) for m in self.factors]

    @property
    def total_index(self) -> int:
        from .invariants import index_of
        return sum(index_of(m.type) for m in self.factors)


def is_separable(f, p: int | None = None) -> bool:
    """True when ``gcd(f, f') = 1`` over ``Q``.

    A coprime reduction modulo some auxiliary prime settles it; otherwise
    the exact discriminant is consulted.
    """
    df = zderiv(f)
    if not df:
        return False
    for q in _SEPARABILITY_PRIMES:
        K = PrimeField(q)
        a = pstrip(K, [c % q for c in f])
        b = pstrip(K, [c % q for c in df])
        if len(a) == len(f) and len(pgcd(K, a, b)) == 1:
            return True
    try:
        disc_valuation(f, p or 2)
    except ZeroDiscriminant:
        return False
    return True


def approximation_slope(t: OMType, phi, f) -> tuple[int, bool]:
    """``h_phi = w(a_0) - w(a_1) - V`` for ``f = ... + a_1 phi + a_0``.

    Returns ``(h, exact)``; when ``a_0`` vanishes at the working precision
    the value is the lower bound implied by that precision.
    """
    lad = PowerLadder(list(phi), t.M)
    a = lad.expand(preduce(list(f), t.M), 2)
    i = t.order + 1
    w1 = t.val(i, a[1])
    if not t._exact(w1, i):
        raise NotARepresentative("a_1 vanishes: phi is not a representative")
    w0 = t.val(i, a[0])
    V = t.V_next
    if not t._exact(w0, i):
        return t.prec * t.E(t.order) - w1 - V, False
    h = w0 - w1 - V
    if h <= 0:
        raise NotARepresentative("principal polygon does not have length one")
    return h, True


@dataclass
class _Node:
    prefix: OMType
    phi: tuple
    V: int
    rho: Fraction
    length: int


class _Run:
    def __init__(self, f, p: int, prec: int, seed: int, verbose: bool):
        self.f = list(f)
        self.p = p
        self.prec = prec
        self.seed = seed
        self.verbose = verbose
        self.ctx = _Context(p, prec)
        self.fM = strip(preduce(self.f, self.ctx.M))
        self.iterations = 0
        self.trace: list = []
        self.done: list = []

    def note(self, msg: str):
        self.trace.append(msg)
        if self.verbose:
            log.info(msg)

    def run(self):
        F0 = PrimeField(self.p)
        fbar = pstrip(F0, [c % self.p for c in self.f])
        facs = ff_factor(F0, fbar, self.seed)
        self.note(f"level 0: factors {[(list(g), b) for g, b in facs]}")
        stack = []
        for psi0, b in facs:
            t = OMType(self.ctx, psi0)
            if b == 1:
                self.complete(t)
            else:
                stack.append(_Node(t, t.representative, 0, Fraction(0), b))
        # depth first, in schedule order
        stack.reverse()
        while stack:
            node = stack.pop()
            children = self.step(node)
            stack.extend(reversed(children))

    def complete(self, t: OMType):
        phi = t.representative
        h, exact = approximation_slope(t, phi, self.fM)
        self.done.append(MontesFactor(t, phi, h, exact))
        self.note(f"complete: order {t.order}, degree {len(phi) - 1}, h_phi {h}")

    def step(self, node: _Node) -> list:
        self.iterations += 1
        t, phi, V = node.prefix, node.phi, node.V
        i = t.order + 1
        try:
            hull, coeffs = t.polygon(phi, V, self.fM, node.length)
        except PrecisionExhausted:
            phi = self.perturb(t, phi, V, node.rho)
            hull, coeffs = t.polygon(phi, V, self.fM, node.length)
        sides = [S for S in hull.sides if S.slope < -node.rho]
        if sum(S.length for S in sides) != node.length:
            raise PrecisionExhausted("principal polygon length mismatch")
        children = []
        K = t.fields[i]
        for S in sides:
            h, e = S.h, S.e
            _, _, R = t.side_residual(coeffs, V, h, e)
            facs = ff_factor(K, R, self.seed)
            self.note(f"level {i}: deg phi {len(phi) - 1}, slope -{h}/{e}, "
                      f"length {S.length}, residual factors "
                      f"{[(len(g) - 1, b) for g, b in facs]}")
            for psi, b in facs:
                t2 = t.extend(phi, V, h, e, psi)
                f2 = len(psi) - 1
                if b == 1:
                    self.complete(t2)
                elif e * f2 > 1:
                    children.append(_Node(t2, t2.representative, t2.V_next, Fraction(0), b))
                else:
                    children.append(_Node(t, t2.representative, V, Fraction(h), b))
        return children

    def perturb(self, t: OMType, phi, V: int, rho: Fraction) -> tuple:
        """Shift ``phi`` by ``p**K`` when ``f mod phi`` vanishes at working precision.

        The shift keeps ``phi`` inside the same branch as long as
        ``v(p**K)`` exceeds ``V + rho``.
        """
        K = self.prec // 2
        if K * t.E(t.order) <= V + rho:
            raise PrecisionExhausted("no room to perturb phi")
        out = list(phi)
        out[0] = (out[0] + self.p ** K) % self.ctx.M
        self.note(f"perturb phi of degree {len(phi) - 1} by p^{K}")
        return tuple(out)


def default_precision(f) -> int:
    return 2 * (len(f) - 1) + 16


def montes(f, p: int, prec: int | None = None, *, seed: int = 0,
           verbose: bool = False, check: bool = True) -> MontesOutput:
    """Complete optimal types of the monic integer polynomial ``f``.

    The working precision starts at ``prec`` (a heuristic default when
    omitted) and doubles whenever a valuation cannot be decided.

    >>> out = montes([5, 0, 1], 5)
    >>> [(m.type.order, m.degree) for m in out.factors]
    [(1, 2)]
    """
    f = [int(c) for c in f]
    strip(f)
    if len(f) < 2:
        raise NotMonic("polynomial must have positive degree")
    if f[-1] != 1:
        raise NotMonic("polynomial must be monic")
    if check and not is_separable(f, p):
        raise NotSeparable("polynomial has a repeated factor")
    N = prec or default_precision(f)
    last = None
    for restart in range(MAX_RESTARTS + 1):
        run = _Run(f, p, N, seed, verbose)
        try:
            run.run()
        except PrecisionExhausted as exc:
            last = exc
            log.debug("precision %d exhausted (%s); doubling", N, exc)
            N *= 2
            continue
        total = sum(m.degree for m in run.done)
        if total != len(f) - 1:
            raise AssertionError("factor degrees do not add up")
        return MontesOutput(run.done, N, run.iterations, restart, run.trace)
    raise PrecisionExhausted(f"gave up after {MAX_RESTARTS} restarts: {last}")
