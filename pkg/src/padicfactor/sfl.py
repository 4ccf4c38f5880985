"""Single-factor lifting.

Three drivers refine a Montes approximation ``phi`` of an irreducible
factor ``F`` of ``f`` until ``Phi = F mod p**nu``:

* :func:`sfl_lift`: Newton-inversion warm-up, then one quotrem and one
  Newton step per pass (the default);
* :func:`sfl_lift_short`: no warm-up, more passes;
* :func:`direct_sfl`: order-zero specialisation for a simple factor of
  the reduction of ``f``.

Every pass works on numerators ``b(x)`` modulo ``p**N`` with a separate
denominator exponent ``d`` (see :class:`~padicfactor.padic.PadicPoly`).
Stored approximations are integer polynomials: truncating ``Phi`` to the
digits that are already correct keeps it a valid approximation, so the
working precision can grow from pass to pass.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import NotARepresentative, NotAUnit, PrecisionExhausted, SquareFactor
from .invariants import exponent_of, nu0_of
from .omtypes import OMType
from .padic import INF, MonicDivisor, PadicPoly, pmul, preduce, v1, zmul
from .tower import PrimeField, pdivmod as ff_divmod, pmul as ff_mul, pstrip, pxgcd

__all__ = [
    "LiftState",
    "LiftStep",
    "LiftResult",
    "nu0_of",
    "precision_schedule",
    "target_slope",
    "universal_numerator",
    "a1_value",
    "initial_inverse",
    "newton_inverse_step",
    "lift_factor",
    "sfl_lift",
    "sfl_lift_short",
    "direct_sfl",
]

#: Retries with extra guard digits before giving up.
MAX_RETRIES = 6


def precision_schedule(h: int, V: int, e: int, expF: int) -> int:
    """Numerator digits for a pass whose input slope is at least ``h``.

    >>> precision_schedule(3, 6, 2, 1)
    10
    """
    return -(-(2 * h + V) // e) + 4 * expF


def target_slope(t: OMType, nu: int) -> int:
    """Least integer ``h`` with ``h >= e (nu - nu_0)``."""
    q = t.e * (Fraction(nu) - nu0_of(t))
    return max(0, -(-q.numerator // q.denominator))


# -- representation helpers ---------------------------------------------------

class _Reducer:
    """Reduction modulo a fixed monic integer polynomial, per precision."""

    def __init__(self, g, p: int):
        self.g = list(g)
        self.p = p
        self._cache: dict = {}

    def rem(self, a: PadicPoly) -> PadicPoly:
        D = self._cache.get(a.prec)
        if D is None:
            D = self._cache[a.prec] = MonicDivisor(self.g, a.modulus)
        return PadicPoly(D.rem(list(a.coeffs)), a.p, a.prec, a.d)

    def divmod(self, a, prec: int):
        D = self._cache.get(prec)
        if D is None:
            D = self._cache[prec] = MonicDivisor(self.g, self.p ** prec)
        return D.divmod(a)


def _mulmod(a: PadicPoly, b: PadicPoly, red: _Reducer) -> PadicPoly:
    return red.rem(a * b).normalized()


def _const(c: int, p: int, prec: int) -> PadicPoly:
    return PadicPoly([c], p, prec)


def _integral(C: PadicPoly) -> PadicPoly:
    C = C.normalized()
    if C.d:
        raise PrecisionExhausted("correction is not integral at working precision")
    return C


def universal_numerator(t: OMType, u: int):
    """``(b, j_pi)`` with ``w(p**j_pi * b) = u``; ``b`` is an exact integer product."""
    j_pi, js = t.universal_poly(u)
    b = [1]
    for L, j in zip(t.levels, js):
        for _ in range(j):
            b = zmul(b, list(L.phi))
    return b, j_pi


def _scaled(b, j: int, p: int, prec: int) -> PadicPoly:
    """``p**j * b`` as a numerator/denominator pair."""
    if j >= 0:
        return PadicPoly([c * p ** j for c in b], p, prec)
    return PadicPoly(b, p, prec, -j)


# -- inversion ---------------------------------------------------------------------

def initial_inverse(t: OMType, phi, A1: PadicPoly) -> PadicPoly:
    """``x0`` with ``deg x0 < deg phi`` and ``w((x0 A1 mod phi) - 1) > 0``.

    The residue of ``A1`` is read through ``lc_{r+1}`` (which is
    multiplicative), inverted in ``F_{r+1}`` and pulled back with
    :meth:`OMType.construct` at value zero.
    """
    A1 = A1.normalized()
    if A1.is_zero():
        raise PrecisionExhausted("A1 vanishes at working precision")
    i = t.order + 1
    tw = t.with_precision(max(t.prec, A1.prec))
    K = tw.fields[i]
    u, xi = tw.lc(i, list(A1.coeffs))
    if u != tw.e * A1.d:
        raise NotAUnit(f"w(A1) = {Fraction(u, tw.e) - A1.d} is not zero")
    if A1.d:
        _, lp = tw.lc(i, [t.p])
        xi = K.mul(xi, K.pow(K.inv(lp), A1.d))
    b, d = tw.construct(i, 0, K.inv(xi), integral=False)
    return PadicPoly(b, t.p, A1.prec, d)


def newton_inverse_step(Cinv: PadicPoly, C1: PadicPoly, red: _Reducer) -> PadicPoly:
    """``Cinv (2 - C1 Cinv) mod Phi``: doubles the accuracy of an inverse.

    >>> r = _Reducer([0, 1], 5)
    >>> newton_inverse_step(PadicPoly([2], 5, 2), PadicPoly([3], 5, 2), r).coeffs
    (17,)
    """
    prod = _mulmod(C1, Cinv, red)
    two = PadicPoly([2 * Cinv.p ** prod.d], Cinv.p, prod.prec + prod.d, prod.d)
    return _mulmod(Cinv, two - prod, red)


# -- state and trace ---------------------------------------------------------------

@dataclass
class LiftStep:
    """One instrumented pass: the input slope bound and the new approximation."""

    iteration: int
    h: int
    work_prec: int
    seconds: float
    attained_prec: int
    needed_prec: int
    phi: tuple = ()

    @property
    def ledger_ok(self) -> bool:
        return self.attained_prec >= self.needed_prec


@dataclass
class LiftState:
    Phi: tuple
    Cinv: PadicPoly | None
    h: int
    Psi: tuple
    nu0: Fraction
    target_h: int
    work_prec: int


@dataclass
class LiftResult:
    Phi: PadicPoly
    state: LiftState
    steps: list = field(default_factory=list)
    quotrems: int = 0
    h_phi: int = 0
    guard: int = 0


class _Lifter:
    def __init__(self, f, t: OMType, phi, nu: int, algorithm: int, guard: int,
                 offset: int, keep_phi: bool, hook: Callable | None, bare: bool = False):
        self.f = [int(c) for c in f]
        self.t = t
        self.p = t.p
        self.phi = [int(c) for c in phi]
        self.m = len(self.phi) - 1
        self.nu = nu
        self.algorithm = algorithm
        self.guard = guard
        self.offset = offset
        self.bare = bare
        self.keep_phi = keep_phi
        self.hook = hook
        self.e = t.e
        self.V = t.V_next
        self.expF = max(0, exponent_of(t)) if t.order else 0
        self.nu0 = nu0_of(t)
        self.target = target_slope(t, nu)
        self.psi = universal_numerator(t, -a1_value(f, t, phi))
        self.steps: list = []
        self.quotrems = 0
        self.t0 = time.perf_counter()

    def ledger(self, h: int) -> int:
        """Digits for a main-loop pass (``bare`` drops the guard there)."""
        extra = self.offset + (0 if self.bare else self.guard)
        return precision_schedule(h, self.V, self.e, self.expF) + extra

    def setup_prec(self, h: int) -> int:
        return precision_schedule(h, self.V, self.e, self.expF) + self.guard

    def needed(self, h: int) -> int:
        return -(-(2 * h + self.V) // self.e)

    def split(self, Phi, prec: int):
        """``c_0, c_1`` of the ``Phi``-adic expansion of ``f`` modulo ``p**prec``."""
        self.quotrems += 1
        red = _Reducer(Phi, self.p)
        M = self.p ** prec
        q, c0 = red.divmod(preduce(self.f, M), prec)
        _, c1 = red.divmod(q, prec)
        return red, PadicPoly(c0, self.p, prec), PadicPoly(c1, self.p, prec)

    def record(self, h: int, prec: int, C: PadicPoly, Phi):
        need = self.needed(h)
        step = LiftStep(len(self.steps) + 1, h, prec, time.perf_counter() - self.t0,
                        C.prec, need, tuple(Phi) if self.keep_phi else ())
        self.steps.append(step)
        if self.hook:
            self.hook(step)
        return need

    def correct(self, Phi, C: PadicPoly, need: int) -> list:
        keep = C.prec
        M = self.p ** keep
        out = list(Phi)
        for i, c in enumerate(C.coeffs):
            out[i] += c
        return [c % M if i < self.m else c for i, c in enumerate(out)]

    # The three stages shared by both algorithms.
    def slope_of_phi(self) -> tuple[int, bool]:
        from .montes import approximation_slope
        t = self.t
        need = max(t.prec, self.setup_prec(self.target))
        while True:
            tw = t.with_precision(need)
            h, exact = approximation_slope(tw, tw._reduce(self.phi), tw._reduce(self.f))
            if exact or h >= self.target:
                return h, exact
            need *= 2

    def prepare(self, prec: int):
        """``A_0``, ``A_1`` and the initial inverse at ``prec`` digits."""
        red, a0, a1 = self.split(self.phi, prec)
        Psi = self.psi_at(prec)
        A0 = _mulmod(Psi, a0, red)
        A1 = _mulmod(Psi, a1, red)
        return red, A0, A1, initial_inverse(self.t, self.phi, A1)

    def psi_at(self, prec: int) -> PadicPoly:
        b, j = self.psi
        return _scaled(b, j, self.p, prec)

    def main_pass(self, Phi, Cinv: PadicPoly, h: int):
        """One pass of the main loop; ``h`` bounds the slope of ``Phi`` from below."""
        prec = self.ledger(h)
        red, c0, c1 = self.split(Phi, prec)
        Psi = self.psi_at(prec)
        C0 = _mulmod(Psi, c0, red)
        C1 = _mulmod(Psi, c1, red)
        # the stored inverse is an exact numerator; widening it is harmless
        Cinv = newton_inverse_step(Cinv.with_prec(prec), C1, red)
        C = _integral(_mulmod(C0, Cinv, red))
        need = self.record(h, prec, C, Phi)
        return self.correct(Phi, C, need), Cinv, prec

    def run(self) -> LiftResult:
        if self.algorithm == 1:
            h_phi, _ = self.slope_of_phi()
            if h_phi >= self.target:
                return self.finish(self.phi, None, h_phi, h_phi, 0)
            prec = self.setup_prec(h_phi)
            red, A0, A1, Ainv = self.prepare(prec)
            s = 1
            while s < h_phi:
                Ainv = newton_inverse_step(Ainv, A1, red)
                s *= 2
            A = _integral(_mulmod(A0, Ainv, red))
            need = self.record(h_phi, prec, A, self.phi)
            Phi = self.correct(self.phi, A, need)
            Cinv = Ainv
            h = h_phi
            while h < self.target:
                Phi, Cinv, prec = self.main_pass(Phi, Cinv, 2 * h)
                h *= 2
            return self.finish(Phi, Cinv, h, h_phi, prec)
        # short variant: the first correction only assumes h_phi >= 1
        prec = self.setup_prec(1)
        red, A0, A1, Cinv = self.prepare(prec)
        A = _integral(_mulmod(A0, Cinv, red))
        need = self.record(1, prec, A, self.phi)
        Phi = self.correct(self.phi, A, need)
        h = 2
        while h < self.target:
            Phi, Cinv, prec = self.main_pass(Phi, Cinv, h)
            h *= 2
        return self.finish(Phi, Cinv, h, 0, prec)

    def finish(self, Phi, Cinv, h, h_phi, prec) -> LiftResult:
        out = PadicPoly(Phi, self.p, self.nu)
        b, j = self.psi
        state = LiftState(tuple(Phi), Cinv, h, (j, tuple(b)), self.nu0, self.target, prec)
        return LiftResult(out, state, self.steps, self.quotrems, h_phi, self.guard)


def lift_factor(f, t: OMType, phi, nu: int, *, algorithm: int = 1, guard: int | None = None,
                offset: int = 0, strict: bool = False, keep_phi: bool = False,
                hook: Callable | None = None, bare_loop: bool = False) -> LiftResult:
    """Lift ``phi`` to ``Phi = F mod p**nu`` and report the run.

    ``guard`` extra digits (by default the denominator of ``Psi``) are
    added to the set-up and, unless ``bare_loop``, to every main-loop pass;
    ``offset`` shifts the main-loop ledger and may be negative.  Without
    ``strict`` a pass that loses too many digits is retried with a larger
    guard.
    """
    if nu < 1:
        raise ValueError("nu must be positive")
    if algorithm not in (1, 2):
        raise ValueError("algorithm must be 1 or 2")
    if guard is None:
        guard = _psi_denominator(f, t, phi)
    for _ in range(MAX_RETRIES + 1):
        run = _Lifter(f, t, phi, nu, algorithm, guard, offset, keep_phi, hook, bare_loop)
        try:
            res = run.run()
        except PrecisionExhausted:
            if strict:
                raise
            guard = 2 * guard + 8
            continue
        if strict or all(s.ledger_ok for s in res.steps):
            return res
        guard = 2 * guard + 8
    raise PrecisionExhausted("lifting did not reach the requested precision")


def a1_value(f, t: OMType, phi) -> int:
    """``w(a_1)`` for ``f = ... + a_1 phi + a_0``, raising the precision as needed."""
    from .padic import pdivmod
    tw = t
    for _ in range(8):
        q, _ = pdivmod(list(f), list(phi), tw.M)
        _, a1 = pdivmod(q, list(phi), tw.M)
        w = tw.w(a1)
        if tw._exact(w, tw.order + 1):
            return w
        tw = tw.with_precision(2 * tw.prec)
    raise NotARepresentative("a_1 vanishes: phi is not a representative")


def _psi_denominator(f, t: OMType, phi) -> int:
    """Digits lost to the denominator of ``Psi`` (zero when ``Psi`` is integral)."""
    j, _ = t.universal_poly(-a1_value(f, t, phi))
    return max(0, -j)


def sfl_lift(f, t: OMType, phi, nu: int, **kw) -> PadicPoly:
    """Lifting with a Newton-inversion warm-up.

    >>> from padicfactor.montes import montes
    >>> m = montes([5, 0, 1], 5).factors[0]
    >>> sfl_lift([5, 0, 1], m.type, m.phi, 20).coeffs
    (5, 0, 1)
    """
    return lift_factor(f, t, phi, nu, algorithm=1, **kw).Phi


def sfl_lift_short(f, t: OMType, phi, nu: int, **kw) -> PadicPoly:
    """Lifting entered with slope bound one and no warm-up."""
    return lift_factor(f, t, phi, nu, algorithm=2, **kw).Phi


# -- order zero -----------------------------------------------------------------

def direct_sfl(f, phibar, p: int, nu: int, *, trace: list | None = None) -> PadicPoly:
    """Lift a simple factor ``phibar`` of ``f mod p`` to a factor mod ``p**nu``.

    >>> direct_sfl([2, -3, 1], [6, 1], 7, 5).coeffs  # x - 1 lifts to x - 1
    (16806, 1)
    """
    if nu < 1:
        raise ValueError("nu must be positive")
    f = [int(c) for c in f]
    F = PrimeField(p)
    phibar = pstrip(F, [c % p for c in phibar])
    if len(phibar) < 2 or phibar[-1] != 1:
        raise ValueError("phibar must be monic of positive degree")
    fbar = pstrip(F, [c % p for c in f])
    q, r = ff_divmod(F, fbar, phibar)
    if r:
        raise ValueError("phibar does not divide the reduction of f")
    _, r2 = ff_divmod(F, q, phibar)
    if not r2:
        raise SquareFactor("phibar divides the reduction of f twice")
    phi = list(phibar)

    def split(Phi, prec):
        D = MonicDivisor(Phi, p ** prec)
        a, a0 = D.divmod(preduce(f, p ** prec))
        return D, a0, D.rem(a)

    def inv_step(x, a1, D):
        M = D.M
        y = D.rem(pmul(a1, x, M))
        y = [(-c) % M for c in y] or [0]
        y[0] = (y[0] + 2) % M
        return D.rem(pmul(x, y, M))

    D, a0, a1 = split(phi, nu)
    h = v1(a0, p)
    if h == INF or h >= nu:
        return PadicPoly(phi, p, nu)
    # section of O[x] -> F_p[x]/(phibar)
    g, s, _ = pxgcd(F, pstrip(F, [c % p for c in a1]), phibar)
    if len(g) != 1:
        raise SquareFactor("a_1 is not a unit modulo phibar")
    x = [int(c) for c in ff_mul(F, s, [F.inv(g[0])])]
    for i in range(1, math.ceil(math.log2(h)) + 1):
        Di = MonicDivisor(phi, p ** min(2 ** i, 2 * h))
        x = inv_step([c % Di.M for c in x], [c % Di.M for c in a1], Di)
    prec = min(2 * h, nu)
    Dp = MonicDivisor(phi, p ** prec)
    A = Dp.rem(pmul(a0, x, Dp.M))
    Phi = _add_low(phi, A, Dp.M)
    if trace is not None:
        trace.append((0, h, prec))
    loops = max(0, math.ceil(math.log2(nu / h)) - 1)
    for i in range(1, loops + 1):
        prec = min(2 ** (i + 1) * h, nu)
        D, a0, a1 = split(Phi, prec)
        x = inv_step([c % D.M for c in x], a1, D)
        A = D.rem(pmul(a0, x, D.M))
        Phi = _add_low(Phi, A, D.M)
        if trace is not None:
            trace.append((i, 2 ** i * h, prec))
    return PadicPoly(Phi, p, nu)


def _add_low(Phi, A, M):
    out = list(Phi)
    for i, c in enumerate(A):
        out[i] = (out[i] + c) % M
    return out
