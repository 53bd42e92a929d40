"""Exact invariants and tameness tests for plane curve singularities.

The modules build on each other in one direction:

    field -> poly -> intersect -> resolve -> invariants -> tameness -> cli

Everything is exact arithmetic over Q or over finite fields F_{p^k};
nothing here floats.
"""

from .errors import (CharplaneError, DegenerateDirection, DepthExceeded,
                     HypothesisFailed, InvalidCharacteristic, NotInvertible,
                     NotIrreducible, NotReduced, NotRegularParameter,
                     NotSupported, OracleFailure, ParseError,
                     UnsupportedExtension, ZeroInput)
from .field import field_make
from .intersect import INF, ExtNat, i0, i0_resultant_oracle
from .invariants import (PolarFactor, PolarIdentityReport, SingularityReport,
                         dedekind_polar_identity, generic_transversal,
                         invariant_report, jacobian_polar, milnor_number,
                         mu_bar, polar_factor_branches, teissier_bound)
from .poly import (BivarPoly, line_form, linear_change, monomial, parse_poly,
                   poly_str, reduced_test, require_reduced)
from .resolve import BranchData, ResolveResult, resolve, resolve_joint
from .tameness import (CriterionResult, MerleBundle, MerleReport,
                       merle_verify, newton_nondegenerate_test,
                       nguyen_criteria, semigroup_criterion, semigroup_hrs,
                       sqh_test, tame_criteria, tame_direct)

__version__ = "0.1.0"

__all__ = [
    "BivarPoly", "BranchData", "CharplaneError", "CriterionResult",
    "DegenerateDirection", "DepthExceeded", "ExtNat", "HypothesisFailed",
    "INF", "InvalidCharacteristic", "MerleBundle", "MerleReport",
    "NotInvertible", "NotIrreducible", "NotReduced", "NotRegularParameter",
    "NotSupported", "OracleFailure", "ParseError", "PolarFactor",
    "PolarIdentityReport", "ResolveResult", "SingularityReport",
    "UnsupportedExtension", "ZeroInput", "dedekind_polar_identity",
    "field_make", "generic_transversal", "i0", "i0_resultant_oracle",
    "invariant_report", "jacobian_polar", "line_form", "linear_change",
    "merle_verify", "milnor_number", "monomial", "mu_bar",
    "newton_nondegenerate_test", "nguyen_criteria", "parse_poly",
    "polar_factor_branches", "poly_str", "reduced_test", "require_reduced",
    "resolve", "resolve_joint", "semigroup_criterion", "semigroup_hrs",
    "sqh_test", "tame_criteria", "tame_direct", "teissier_bound",
]
