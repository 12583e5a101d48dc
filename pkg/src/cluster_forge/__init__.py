"""Exact cluster-algebra computations: seeds, mutation, invariants and quiver Grassmannians."""

from .invariants import (
    KINDS,
    InvariantReport,
    Rerooter,
    check_conjecture,
    denominator_vector,
    extract_F_polynomial,
    extract_g_vector,
    f_vector,
    g_vector_mutation,
    h_vectors,
    reconstruct,
)
from .laurent import LaurentPoly, NonExactDivision, RationalFn, lp_exact_divide, lp_substitute
from .loaders import SchemaError, dumps, load_inputs, load_rep, load_seed, parse_rep, parse_seed
from .quiver import (
    ExchangeMatrix,
    IceQuiver,
    QuiverError,
    is_acyclic,
    matrix_mutate,
    matrix_to_quiver,
    principal_extend,
    quiver_to_matrix,
)
from .reps import (
    QuiverRep,
    count_submodules_mod_p,
    euler_form,
    ext1_dim,
    g_from_presentation,
    grassmannian_euler_char,
    hom_dim,
    is_rigid,
    match_against_traversal,
    module_F_polynomial,
)
from .seeds import Seed, apply_sequence, canonical_form, principal_seed, seed_mutate, traverse_exchange_graph
from .tropical import TropicalElement, tropical_eval

__all__ = [
    "apply_sequence",
    "canonical_form",
    "check_conjecture",
    "count_submodules_mod_p",
    "denominator_vector",
    "dumps",
    "euler_form",
    "ExchangeMatrix",
    "ext1_dim",
    "extract_F_polynomial",
    "extract_g_vector",
    "f_vector",
    "g_from_presentation",
    "g_vector_mutation",
    "grassmannian_euler_char",
    "h_vectors",
    "hom_dim",
    "IceQuiver",
    "InvariantReport",
    "is_acyclic",
    "is_rigid",
    "KINDS",
    "LaurentPoly",
    "load_inputs",
    "load_rep",
    "load_seed",
    "lp_exact_divide",
    "lp_substitute",
    "match_against_traversal",
    "matrix_mutate",
    "matrix_to_quiver",
    "module_F_polynomial",
    "NonExactDivision",
    "parse_rep",
    "parse_seed",
    "principal_extend",
    "principal_seed",
    "quiver_to_matrix",
    "QuiverError",
    "QuiverRep",
    "RationalFn",
    "reconstruct",
    "Rerooter",
    "SchemaError",
    "Seed",
    "seed_mutate",
    "traverse_exchange_graph",
    "tropical_eval",
    "TropicalElement",
]
