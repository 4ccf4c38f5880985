"""Exact p-adic polynomial factorization with OM types and single-factor lifting."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .factor import Factorization, FactorReport, factor
from .hensel import hensel_lift
from .invariants import (InvariantReport, exponent_of, index_of, invariant_report, nu0_of,
                         okutsu_depth, okutsu_width, splitting_entry)
from .montes import MontesOutput, approximation_slope, montes
from .omtypes import OMType, TypeLevel, ord_in_type
from .padic import PadicPoly, disc_valuation, resultant_valuation
from .polygon import NewtonPolygon, lower_hull
from .sfl import (direct_sfl, initial_inverse, lift_factor, newton_inverse_step,
                  precision_schedule, sfl_lift, sfl_lift_short)
from .testpolys import FamilySpec, expected_invariants, gen_family

__all__ = [
    "Factorization", "FactorReport", "factor", "hensel_lift", "InvariantReport",
    "exponent_of", "index_of", "invariant_report", "nu0_of", "okutsu_depth", "okutsu_width",
    "splitting_entry", "MontesOutput", "approximation_slope", "montes", "OMType", "TypeLevel",
    "ord_in_type", "PadicPoly", "disc_valuation", "resultant_valuation", "NewtonPolygon",
    "lower_hull", "direct_sfl", "initial_inverse", "lift_factor", "newton_inverse_step",
    "precision_schedule", "sfl_lift", "sfl_lift_short", "FamilySpec", "expected_invariants",
    "gen_family",
]
