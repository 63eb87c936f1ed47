"""Exact-arithmetic toolkit for generalized root systems and their quotients."""

from .catalog import DiagramInvolution, DynkinDiagram, RootSystemId, build_root_system, duality_involution, dynkin_diagram
from .classify import (
    Fingerprint,
    Rank2Class,
    base_equivalent,
    base_isomorphic,
    classify_rank2,
    equivalent,
    fingerprint,
    isomorphic,
)
from .crosscheck import ClaimResult, run_all
from .exact_core import AmbientSpace, LinearMap, format_rat, parse_rat
from .grs_bases import (
    Base,
    CartanMatrix,
    PositiveSystem,
    base_from_positive,
    cartan_matrix,
    enumerate_bases,
    positive_from_base,
    reflect_base,
    standard_base,
    virtual_reflection,
)
from .grs_core import Grs, Violation, grs_from_document, grs_from_json, highest_root, root_info, root_string, validate_grs
from .quograph import QuotGraph, TableRow, ThetaMove, build_graph, table_csv, table_rows, theta_iso_witness, theta_move
from .quotient import QuotientMap, catalog_quotient, classical_form, fiber, quotient_grs

__all__ = [name for name in dir() if not name.startswith("_")]
