"""Exact cluster algebras of quivers, their automorphism groups, and triangulated surfaces."""

from .automorphisms import (
    DIRECT,
    INVERSE,
    AutGroup,
    ClusterAutomorphism,
    NoQuiverIso,
    NotACluster,
    aut_group,
    check_cluster_automorphism,
    compose,
    find_automorphisms_bounded,
    invert,
    opposite_mutation_equivalent,
    oracle_check,
)
from .exact_arith import IntPoly, RationalFn, as_laurent, is_positive_laurent, parse_ratfn, substitute
from .groups import FiniteGroup, identify_group, semidirect_check
from .quiver import Quiver, classify_type, mutate_quiver, quiver_isomorphisms
from .seeds import ExchangeGraph, Incomplete, Seed, explore, is_cluster, is_cluster_variable

__version__ = "0.1.0"
