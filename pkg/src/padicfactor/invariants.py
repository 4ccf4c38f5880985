"""Okutsu invariants read off a complete type."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NonIntegralIndex
from .omtypes import OMType

__all__ = [
    "InvariantReport",
    "okutsu_depth",
    "okutsu_width",
    "index_of",
    "exponent_of",
    "nu0_of",
    "splitting_entry",
    "invariant_report",
]


def okutsu_depth(t: OMType) -> int:
    """``r`` when the last level has ``e f > 1`` (or ``r = 0``), else ``r - 1``."""
    return t.depth


def okutsu_width(t: OMType) -> tuple:
    """Componentwise ``ceil(h_i / e_i)`` for ``1 <= i <= depth``."""
    return tuple(-(-L.h // L.e) for L in t.levels[:t.depth])


def index_of(t: OMType) -> int:
    """Index of the irreducible factor singled out by ``t``."""
    deg = t.degree
    total = Fraction(0)
    for L in t.levels[:t.depth]:
        total += Fraction(1, L.E_before) * (
            Fraction(L.h, L.e) * (Fraction(deg, L.m) - 1) - Fraction(L.e - 1, L.e))
    val = Fraction(deg, 2) * total
    if val.denominator != 1:
        raise NonIntegralIndex(f"index evaluates to {val}")
    return int(val)


def nu0_of(t: OMType) -> Fraction:
    """``sum_i h_i / (e_1 ... e_i)`` over all levels."""
    out = Fraction(0)
    E = 1
    for L in t.levels:
        E *= L.e
        out += Fraction(L.h, E)
    return out


def exponent_of(t: OMType) -> int:
    """``floor(V_{r+1} / e - nu_0)``."""
    mu = Fraction(t.V_next, t.e) - nu0_of(t)
    return mu.numerator // mu.denominator


def splitting_entry(e: int, f: int) -> str:
    """``"p_f^e"`` with trivial sub- and superscripts omitted."""
    out = "p"
    if f != 1:
        out += f"_{f}"
    if e != 1:
        out += f"^{e}"
    return out


@dataclass(frozen=True)
class InvariantReport:
    depth: int
    width: tuple
    index: int
    exponent: int
    e: int
    f: int
    nu0: Fraction
    splitting: str
    order: int
    slopes: tuple

    @property
    def width_sum(self) -> int:
        return sum(self.width)

    def to_dict(self) -> dict:
        return {
            "depth": self.depth,
            "width": list(self.width),
            "width_sum": self.width_sum,
            "index": self.index,
            "exponent": self.exponent,
            "e": self.e,
            "f": self.f,
            "nu0": str(self.nu0),
            "splitting": self.splitting,
            "order": self.order,
            "slopes": [str(s) for s in self.slopes],
        }


def invariant_report(t: OMType) -> InvariantReport:
    return InvariantReport(
        depth=okutsu_depth(t),
        width=okutsu_width(t),
        index=index_of(t),
        exponent=exponent_of(t),
        e=t.e,
        f=t.f,
        nu0=nu0_of(t),
        splitting=splitting_entry(t.e, t.f),
        order=t.order,
        slopes=tuple(L.slope for L in t.levels),
    )
