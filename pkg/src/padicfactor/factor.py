"""Full factorization: Montes, lifting, invariants and the index ledger."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .errors import PrecisionExhausted
from .invariants import InvariantReport, invariant_report
from .montes import MontesOutput, montes
from .omtypes import OMType
from .padic import PadicPoly, disc_valuation, pdivmod, preduce, zderiv, zmul
from .sfl import direct_sfl, lift_factor

__all__ = ["FactorReport", "Factorization", "factor", "cross_index"]


@dataclass
class FactorReport:
    type: OMType
    phi: tuple                 # Montes approximation
    h_phi: int
    lifted: PadicPoly          # Phi = F mod p**nu
    invariants: InvariantReport
    steps: list = field(default_factory=list)

    @property
    def degree(self) -> int:
        return len(self.phi) - 1

    def to_dict(self) -> dict:
        d = self.invariants.to_dict()
        d.update({
            "degree": self.degree,
            "h_phi": self.h_phi,
            "factor": [str(c) for c in self.lifted.coeffs],
            "approximation": [str(c) for c in self.phi],
            "type": self.type.to_dict(),
        })
        return d


@dataclass
class Factorization:
    f: list
    p: int
    nu: int
    factors: list
    cross: dict                # (i, j) -> v(Res(F_i, F_j)), i < j
    disc_valuation: int
    product_ok: bool
    montes: MontesOutput
    seconds: float = 0.0

    @property
    def index(self) -> int:
        """``ind_p(f)``: per-factor indices plus the cross resultants."""
        return sum(r.invariants.index for r in self.factors) + sum(self.cross.values())

    @property
    def delta(self) -> int:
        """``v_p`` of the discriminant of the etale algebra ``Q_p[x]/f``."""
        return self.disc_valuation - 2 * self.index

    @property
    def width_sum(self) -> int:
        return sum(r.invariants.width_sum for r in self.factors)

    @property
    def splitting(self) -> list:
        return sorted((r.invariants.e, r.invariants.f) for r in self.factors)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "nu": self.nu,
            "degree": len(self.f) - 1,
            "n_factors": len(self.factors),
            "ind_p": self.index,
            "disc_valuation": self.disc_valuation,
            "delta_p": self.delta,
            "width_sum": self.width_sum,
            "splitting": [list(x) for x in self.splitting],
            "cross_index": {f"{i},{j}": v for (i, j), v in sorted(self.cross.items())},
            "product_ok": self.product_ok,
            "montes": {"precision": self.montes.prec, "iterations": self.montes.iterations,
                       "restarts": self.montes.restarts},
            "factors": [r.to_dict() for r in self.factors],
        }


def cross_index(ti: OMType, Phi_i, Phi_j, nu: int) -> int | None:
    """``deg F_i * v(g(theta_i))`` for ``g = Phi_j``; this is ``v(Res(F_i, F_j))``.

    Reads ``v(g(theta_i)) = w_i(g mod Phi_i) / e_i`` with ``Phi_i`` correct
    modulo ``p**nu``; returns ``None`` when that precision does not decide it.
    """
    tw = ti.with_precision(nu)
    _, g = pdivmod(list(Phi_j), list(Phi_i), tw.M)
    w = tw.w(g)
    if not tw._exact(w, tw.order + 1):
        return None
    return ti.degree * w // ti.e


def _lift(f, mf, nu, algorithm, direct, hook):
    t = mf.type
    if direct and t.order == 0:
        return direct_sfl(f, list(t.psi0), t.p, nu), []
    res = lift_factor(f, t, mf.phi, nu, algorithm=algorithm, hook=hook)
    return res.Phi, res.steps


def factor(f, p: int, nu: int = 20, *, algorithm: int = 1, direct: bool = False,
           prec: int | None = None, seed: int = 0, verbose: bool = False,
           hook=None, exact_disc: bool = False) -> Factorization:
    """Factor the monic integer polynomial ``f`` over ``Z_p`` to ``nu`` digits.

    ``v_p(disc f)`` is read locally from the factors; ``exact_disc``
    computes it from the integer discriminant instead (slow in high degree).

    >>> F = factor([5, 0, 1], 5, 10)
    >>> [r.lifted.coeffs for r in F.factors], F.index
    ([(5, 0, 1)], 0)
    """
    t0 = time.perf_counter()
    f = [int(c) for c in f]
    out = montes(f, p, prec, seed=seed, verbose=verbose)
    reports = []
    for mf in out.factors:
        Phi, steps = _lift(f, mf, nu, algorithm, direct, hook)
        reports.append(FactorReport(mf.type, mf.phi, mf.h_phi, Phi,
                                    invariant_report(mf.type), steps))
    M = p ** nu
    prod = [1]
    for r in reports:
        prod = preduce(zmul(prod, list(r.lifted.coeffs)), M)
    product_ok = prod == preduce(f, M)
    cross, dv = _local_ledger(f, out, reports, nu, algorithm)
    if exact_disc:
        dv = disc_valuation(f, p)
    return Factorization(f, p, nu, reports, cross, dv, product_ok, out,
                         time.perf_counter() - t0)


def _local_ledger(f, out: MontesOutput, reports, nu: int, algorithm: int):
    """Cross resultants and ``v_p(disc f)`` read at the roots of each factor.

    ``v(disc f) = sum_i deg F_i * v(f'(theta_i))``; every value comes from
    ``w_i`` of a remainder modulo a lift, and the lifts are refined until
    all values are decided.
    """
    n = len(reports)
    df = zderiv(f)
    lifts = [tuple(r.lifted.coeffs) for r in reports]
    cross: dict = {}
    local: dict = {}
    prec = nu
    for _ in range(24):
        pending = False
        for i in range(n):
            if i not in local:
                v = cross_index(reports[i].type, lifts[i], df, prec)
                if v is None:
                    pending = True
                else:
                    local[i] = v
            for j in range(i + 1, n):
                if (i, j) in cross:
                    continue
                v = cross_index(reports[i].type, lifts[i], lifts[j], prec)
                if v is None:
                    pending = True
                else:
                    cross[(i, j)] = v
        if not pending:
            return cross, sum(local.values())
        prec *= 2
        lifts = [tuple(lift_factor(f, mf.type, mf.phi, prec, algorithm=algorithm).Phi.coeffs)
                 for mf in out.factors]
    raise PrecisionExhausted("resultant valuations not determined")
