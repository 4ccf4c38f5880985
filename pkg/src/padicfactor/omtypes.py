"""Types: chains of (phi_i, slope_i, psi_i) and the machinery built on them.

Conventions
-----------
Valuations are integer normalised: ``v_1`` is the minimum coefficient
valuation and

    v_{i+1}(g) = min_s  e_i * v_i(a_s) + s * (e_i V_i + h_i)

for the ``phi_i``-expansion ``g = sum a_s phi_i**s``.  Hence ``v_i(p)`` is
``E_{i-1} = e_1 ... e_{i-1}`` and ``v_{i+1}(phi_i) = e_i V_i + h_i``.

The residual operators use fixed uniformisers ``Pi_1 = p`` and
``Pi_{i+1} = Pi_i**b_i * phi_i**ell_i`` with ``ell_i h_i = 1 mod e_i``.
For ``deg a < m_i`` the unit ``lc_i(a)`` in ``F_i`` is

    lc_1(a)     = (a / p**v_1(a)) mod (p, psi_0)
    lc_{i+1}(a) = R_i(a)(z_i) * z_i**((s_0 - ell_i v_{i+1}(a)) / e_i)

where ``s_0`` is the first abscissa on the supporting line of slope
``-h_i/e_i``, and ``R_i(g) = sum_j lc_i(a_{s_0 + j e_i}) y**j`` over the
points on that line.  With this twist ``R_i`` is multiplicative and
``construct`` is an exact right inverse of ``lc``.

Polynomials are lists of ints modulo ``p**prec`` (constant first).  A
value ``v_i`` computed on such a list is exact whenever it is smaller than
``prec * E_{i-1}``; every decision made here checks that bound and raises
:class:`PrecisionExhausted` otherwise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import Infeasible, OutOfRange, PrecisionExhausted
from .padic import INF, PowerLadder, PadicPoly, pmul, preduce, strip, v1
from .polygon import PolygonPoint, lower_hull
from .tower import PrimeField, pdivmod as ff_divmod, pstrip, tower_extend

__all__ = ["TypeLevel", "OMType", "ord_in_type"]


@dataclass(frozen=True)
class TypeLevel:
    """Data of one level ``i >= 1`` of a type."""

    phi: tuple          # monic integer coefficients, constant first
    V: int              # v_i(phi_i)
    h: int
    e: int
    psi: tuple          # monic irreducible over F_i, constant first
    E_before: int = 1   # e_1 ... e_{i-1}

    @property
    def m(self) -> int:
        return len(self.phi) - 1

    @property
    def f(self) -> int:
        return len(self.psi) - 1

    @property
    def slope(self) -> Fraction:
        return Fraction(-self.h, self.e)

    @property
    def ell(self) -> int:
        return pow(self.h, -1, self.e) if self.e > 1 else 0

    @property
    def next_value(self) -> int:
        """``v_{i+1}(phi_i) = e_i V_i + h_i``."""
        return self.e * self.V + self.h

    @property
    def V_next(self) -> int:
        return self.e * self.f * self.next_value


class _Context:
    """Modulus and phi-ladders shared by all types of one run."""

    def __init__(self, p: int, prec: int):
        self.p, self.prec, self.M = p, prec, p ** prec
        self._ladders: dict = {}

    def ladder(self, phi) -> PowerLadder:
        key = tuple(phi)
        lad = self._ladders.get(key)
        if lad is None:
            lad = self._ladders[key] = PowerLadder(list(phi), self.M)
        return lad


class OMType:
    """A type of order ``r``: ``psi_0`` and ``r`` sealed levels.

    ``fields[i]`` is ``F_i``; ``fields[r + 1]`` is built from the last
    residual factor.  The representative ``phi_{r+1}`` is available through
    :attr:`representative`.

    >>> t = OMType.order_zero(5, 20, [0, 1])
    >>> t.representative
    (0, 1)
    """

    def __init__(self, ctx: _Context, psi0, levels=(), fields=None):
        self.ctx = ctx
        self.p = ctx.p
        self.prec = ctx.prec
        self.M = ctx.M
        self.psi0 = tuple(psi0)
        self.levels = tuple(levels)
        if fields is None:
            fields = [PrimeField(self.p)]
            fields.append(tower_extend(fields[0], list(self.psi0)))
            for L in self.levels:
                fields.append(tower_extend(fields[-1], list(L.psi)))
        self.fields = list(fields)

    # -- construction ---------------------------------------------------
    @classmethod
    def order_zero(cls, p: int, prec: int, psi0, ctx: _Context | None = None):
        return cls(ctx or _Context(p, prec), [c % p for c in psi0])

    def extend(self, phi, V: int, h: int, e: int, psi) -> "OMType":
        """New type with one more level ``(phi, -h/e, psi)``."""
        Fr = self.fields[-1]
        psi = pstrip(Fr, list(psi))
        L = TypeLevel(tuple(phi), V, h, e, tuple(psi), self.E(self.order))
        return OMType(self.ctx, self.psi0, self.levels + (L,),
                      self.fields + [tower_extend(Fr, psi)])

    def with_precision(self, prec: int) -> "OMType":
        """The same type over a fresh context of ``prec`` digits."""
        return OMType(_Context(self.p, prec), self.psi0, self.levels, self.fields)

    def truncate(self, order: int) -> "OMType":
        return OMType(self.ctx, self.psi0, self.levels[:order], self.fields[:order + 2])

    # -- basic invariants --------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.levels)

    @property
    def f0(self) -> int:
        return len(self.psi0) - 1

    def E(self, i: int) -> int:
        """``e_1 ... e_i``."""
        out = 1
        for L in self.levels[:i]:
            out *= L.e
        return out

    @property
    def e(self) -> int:
        return self.E(self.order)

    @property
    def f(self) -> int:
        out = self.f0
        for L in self.levels:
            out *= L.f
        return out

    @property
    def degree(self) -> int:
        """``m_{r+1}``, the degree of a representative."""
        return self.e * self.f

    @property
    def V_next(self) -> int:
        """``V_{r+1} = w(phi_{r+1})``."""
        return self.levels[-1].V_next if self.levels else 0

    @property
    def last_psi(self) -> tuple:
        return self.levels[-1].psi if self.levels else self.psi0

    def is_optimal(self) -> bool:
        ms = [L.m for L in self.levels]
        return all(a < b for a, b in zip(ms, ms[1:]))

    def is_strongly_optimal(self) -> bool:
        if not self.levels:
            return True
        L = self.levels[-1]
        return self.is_optimal() and L.e * L.f > 1

    # -- valuations ----------------------------------------------------------
    def _reduce(self, g) -> list:
        return strip(preduce(list(g), self.M))

    def val(self, i: int, g) -> int | float:
        """``v_i(g)`` for ``1 <= i <= r + 1`` (``INF`` for zero mod ``p**prec``)."""
        g = self._reduce(g)
        return self._val(i, g)

    def _val(self, i: int, g) -> int | float:
        if not g:
            return INF
        if i == 1:
            return v1(g, self.p)
        L = self.levels[i - 2]
        slope = L.next_value
        best = INF
        for s, a in enumerate(self.ctx.ladder(L.phi).expand(g)):
            if not a:
                continue
            u = self._val(i - 1, a)
            if u != INF:
                best = min(best, L.e * u + s * slope)
        return best

    def w(self, g) -> int | float:
        return self.val(self.order + 1, g)

    def _exact(self, value, i: int) -> bool:
        return value != INF and value < self.prec * self.E(i - 1)

    # -- residual data ---------------------------------------------------------
    def lc(self, i: int, a):
        """``(v_i(a), lc_i(a))`` for ``deg a < m_i``; ``lc_i(a)`` lies in ``F_i``."""
        a = self._reduce(a)
        return self._lc(i, a)

    def _lc(self, i: int, a):
        if i == 1:
            v = v1(a, self.p) if a else INF
            if not self._exact(v, 1):
                raise PrecisionExhausted("coefficient vanishes at working precision")
            q = self.p ** v
            poly = pstrip(self.fields[0], [(c // q) % self.p for c in a])
            return v, self.fields[1].evaluate(poly)
        L = self.levels[i - 2]
        coeffs = self.ctx.ladder(L.phi).expand(a)
        H, s0, R = self._line_residual(i - 1, coeffs, L.h, L.e, L.V)
        Fi = self.fields[i]
        twist = Fi.pow(Fi.gen, (s0 - L.ell * H) // L.e)
        return H, Fi.mul(Fi.evaluate(R), twist)

    def _line_residual(self, j: int, coeffs, h: int, e: int, V: int):
        """Supporting line of slope ``-h/e`` for a ``phi_j``-expansion.

        Returns ``(H, s_0, R)`` with ``H`` the value at level ``j + 1``
        scale, ``s_0`` the first abscissa on the line and ``R`` over ``F_j``.
        """
        step = e * V + h
        vals = []
        H = INF
        for s, a in enumerate(coeffs):
            if not a:
                continue
            u = self._val(j, a)
            if u == INF:
                continue
            vals.append((s, u))
            H = min(H, e * u + s * step)
        if H == INF or H >= self.prec * self.E(j - 1) * e:
            raise PrecisionExhausted("supporting line not determined at working precision")
        on = [s for s, u in vals if e * u + s * step == H]
        s0 = on[0]
        Fj = self.fields[j]
        R = [Fj.zero] * ((on[-1] - s0) // e + 1)
        for s in on:
            R[(s - s0) // e] = self._lc(j, coeffs[s])[1]
        return H, s0, R

    def residual_poly(self, i: int, g) -> list:
        """``R_i(g)`` as a list over ``F_i`` (``0 <= i <= r``)."""
        g = self._reduce(g)
        if i == 0:
            v = v1(g, self.p) if g else INF
            if not self._exact(v, 1):
                raise PrecisionExhausted("polynomial vanishes at working precision")
            q = self.p ** v
            return pstrip(self.fields[0], [(c // q) % self.p for c in g])
        L = self.levels[i - 1]
        coeffs = self.ctx.ladder(L.phi).expand(g)
        return self._line_residual(i, coeffs, L.h, L.e, L.V)[2]

    def ord_in_type(self, g) -> int:
        """Multiplicity of the last residual factor in ``R_r(g)``."""
        K = self.fields[self.order]
        R = self.residual_poly(self.order, g)
        return _multiplicity(K, R, list(self.last_psi))

    # -- polygons at the open level -----------------------------------------
    def polygon(self, phi, V: int, g, length: int):
        """Points ``(s, v_{r+1}(a_s) + s V)`` for ``s <= length`` and their hull.

        ``phi`` is a candidate ``phi_{r+1}`` with ``v_{r+1}(phi) = V``.
        Returns ``(hull, coeffs)``.
        """
        i = self.order + 1
        coeffs = self.ctx.ladder(phi).expand(self._reduce(g), length + 1)[:length + 1]
        pts = []
        for s, a in enumerate(coeffs):
            u = self._val(i, a) if a else INF
            if s in (0, length) and not self._exact(u, i):
                raise PrecisionExhausted("polygon end point not determined")
            pts.append(PolygonPoint(s, None if u == INF else u + s * V))
        return lower_hull(pts), coeffs

    def side_residual(self, coeffs, V: int, h: int, e: int):
        """``(H, s_0, R)`` for the expansion ``coeffs`` w.r.t. a candidate phi."""
        return self._line_residual(self.order + 1, coeffs, h, e, V)

    # -- construction of polynomials -----------------------------------------
    def _plan(self, k: int, u: int, tau):
        if k == 1:
            lift = [int(c) for c in self.fields[1].to_base_poly(tau)]
            return (u, lift)
        L = self.levels[k - 2]
        Fk = self.fields[k]
        s0 = (L.ell * u) % L.e
        kappa = (s0 - L.ell * u) // L.e
        T = Fk.to_base_poly(Fk.mul(tau, Fk.pow(Fk.gen, -kappa)))
        terms = []
        for j, c in enumerate(T):
            if self.fields[k - 1].is_zero(c):
                continue
            s = s0 + j * L.e
            sub = (u - s * L.next_value) // L.e
            terms.append((s, self._plan(k - 1, sub, c)))
        return (L.phi, terms)

    def _min_exponent(self, plan) -> int:
        head, body = plan
        if isinstance(head, int):
            return head
        return min(self._min_exponent(sub) for _, sub in body)

    def _evaluate(self, plan, shift: int, M: int) -> list:
        head, body = plan
        if isinstance(head, int):
            c = self.p ** (head + shift)
            return preduce([c * x for x in body], M)
        phi = list(head)
        out: list = []
        power = [1]
        at = 0
        for s, sub in sorted(body, key=lambda t: t[0]):
            while at < s:
                power = pmul(power, phi, M)
                at += 1
            out = _add(out, pmul(self._evaluate(sub, shift, M), power, M), M)
        return out

    def construct(self, k: int, u: int, tau, integral: bool = True):
        """Polynomial ``P`` with ``deg P < m_k``, ``v_k(P) = u``, ``lc_k(P) = tau``.

        Returns ``(b, d)`` meaning ``b / p**d`` with ``b`` known modulo
        ``p**(prec + d)``.  Raises :class:`Infeasible` when ``integral`` is
        set and a denominator would be needed.
        """
        if self.fields[k].is_zero(tau):
            raise Infeasible("target residue must be nonzero")
        plan = self._plan(k, u, tau)
        d = max(0, -self._min_exponent(plan))
        if d and integral:
            raise Infeasible(f"value {u} is not attainable by an integral polynomial")
        b = self._evaluate(plan, d, self.p ** (self.prec + d))
        return b, d

    def construct_with_residual(self, u: int, target, integral: bool = True) -> PadicPoly:
        """``P`` with ``deg P < m_{r+1}``, ``w(P) = u`` and ``y**nu R_r(P) = target``.

        ``nu`` is the order of ``target`` at ``y``; for order zero the
        target is the reduction of ``P / p**u`` itself.
        """
        r = self.order
        K = self.fields[r]
        target = pstrip(K, list(target))
        cap = self.f0 if r == 0 else self.levels[-1].f
        if not target or len(target) > cap:
            raise Infeasible("target must be nonzero of degree below the residual degree")
        if r == 0:
            if u < 0 and integral:
                raise Infeasible("negative value needs a denominator")
            d = max(0, -u)
            b = [self.p ** (u + d) * int(c) for c in target]
            return PadicPoly(b, self.p, self.prec + d, d)
        nu = next(j for j, c in enumerate(target) if not K.is_zero(c))
        L = self.levels[-1]
        s0 = (L.ell * u) % L.e
        body = []
        for j, c in enumerate(target[nu:]):
            if K.is_zero(c):
                continue
            s = s0 + j * L.e
            body.append((s, self._plan(r, (u - s * L.next_value) // L.e, c)))
        plan = (L.phi, body)
        d = max(0, -self._min_exponent(plan))
        if d and integral:
            raise Infeasible(f"value {u} is not attainable by an integral polynomial")
        b = self._evaluate(plan, d, self.p ** (self.prec + d))
        return PadicPoly(b, self.p, self.prec + d, d)

    @cached_property
    def representative(self) -> tuple:
        """Monic ``phi_{r+1}`` of degree ``m_{r+1}`` with ``R_r(phi_{r+1}) = psi_r``."""
        if not self.levels:
            return tuple(c % self.p for c in self.psi0)
        L = self.levels[-1]
        r = self.order
        if self.prec * self.E(r) <= L.V_next:
            raise PrecisionExhausted("precision too small for a representative")
        M = self.M
        phi = list(L.phi)
        pe = _power(phi, L.e, M)
        out: list = []
        power = [1]
        for j in range(L.f + 1):
            c = L.psi[j]
            if j == L.f:
                term = power
            elif self.fields[r].is_zero(c):
                term = None
            else:
                b, _ = self.construct(r, (L.f - j) * L.next_value, c)
                term = pmul(b, power, M)
            if term is not None:
                out = _add(out, term, M)
            if j < L.f:
                power = pmul(power, pe, M)
        return tuple(out)

    # -- universal polynomial ------------------------------------------------
    @property
    def depth(self) -> int:
        r = self.order
        if r == 0:
            return 0
        L = self.levels[-1]
        return r if L.e * L.f > 1 else r - 1

    def universal_poly(self, u: int):
        """Exponents ``(j_pi, [j_1, ..., j_R])`` with ``w(p**j_pi prod phi_i**j_i) = u``."""
        R = self.depth
        e = self.e
        N, t = divmod(u, e)
        if R == 0:
            return N, []
        js = [0] * R
        LR = self.levels[R - 1]
        js[R - 1] = (pow(LR.h, -1, LR.e) * t) % LR.e if LR.e > 1 else 0
        Mv = (t - js[R - 1] * LR.h) // LR.e
        for i in range(R, 1, -1):
            Li, Lp = self.levels[i - 1], self.levels[i - 2]
            rest = Mv - js[i - 1] * Li.V
            js[i - 2] = (pow(Lp.h, -1, Lp.e) * rest) % Lp.e if Lp.e > 1 else 0
            Mv = (rest - js[i - 2] * Lp.h) // Lp.e
        return N + Mv, js

    def universal_eval(self, u: int) -> PadicPoly:
        """The universal polynomial of value ``u`` as ``b / p**d``."""
        j_pi, js = self.universal_poly(u)
        d = max(0, -j_pi)
        M = self.p ** (self.prec + d)
        out = [self.p ** (j_pi + d)]
        for L, j in zip(self.levels, js):
            if j:
                out = pmul(out, _power(list(L.phi), j, M), M)
        return PadicPoly(out, self.p, self.prec + d, d)

    # -- values at a root ------------------------------------------------------
    def value_at_root(self, g) -> Fraction:
        """``v(g(theta))`` for a root ``theta`` of any representative."""
        g = self._reduce(g)
        for i, L in enumerate(self.levels, start=1):
            if tuple(g) == L.phi:
                return Fraction(L.V * L.e + L.h, L.e * L.E_before)
        if len(g) - 1 >= self.degree:
            raise OutOfRange("degree must be below the degree of the factor")
        v = self.w(g)
        if not self._exact(v, self.order + 1):
            raise PrecisionExhausted("value not determined at working precision")
        return Fraction(v, self.e)

    # -- reporting ----------------------------------------------------------
    def to_dict(self) -> dict:
        F0 = self.fields[0]
        levels = []
        for i, L in enumerate(self.levels, start=1):
            Fi = self.fields[i]
            levels.append({
                "m": L.m, "h": L.h, "e": L.e, "f": L.f, "V": L.V,
                "slope": str(L.slope),
                "phi": [str(c) for c in L.phi],
                "psi": [Fi.tree(c) for c in L.psi],
            })
        return {
            "p": self.p,
            "order": self.order,
            "psi0": [F0.tree(c) for c in self.psi0],
            "levels": levels,
        }

    def dump(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def __repr__(self):
        parts = [f"psi0 deg {self.f0}"] + [
            f"(m={L.m}, -{L.h}/{L.e}, f={L.f})" for L in self.levels]
        return f"OMType(p={self.p}, " + ", ".join(parts) + ")"


def ord_in_type(t: OMType, g) -> int:
    return t.ord_in_type(g)


def _add(a, b, M):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % M
    return strip(out)


def _power(a, k: int, M: int) -> list:
    out = [1]
    base = list(a)
    while k:
        if k & 1:
            out = pmul(out, base, M)
        k >>= 1
        if k:
            base = pmul(base, base, M)
    return out


def _multiplicity(K, R, psi) -> int:
    n = 0
    R = pstrip(K, list(R))
    while len(R) >= len(psi):
        q, rem = ff_divmod(K, R, psi)
        if rem:
            break
        R, n = q, n + 1
    return n
