from .formula import (
    Clause,
    LayoutInvalid,
    Rp3SatInstance,
    TooLarge,
    parse_formula,
    sat_brute_force,
    serialize_formula,
    validate_layout,
)
from .gadgets import (
    GeneratorError,
    ManifestEntry,
    ReductionOutput,
    build_mds_reduction,
    build_mis_reduction,
    build_stab_reduction,
    compile_reduction,
    mds_variable_gadget,
    mis_variable_gadget,
    stab_variable_gadget,
    target_value,
    variable_gadget,
)
from .lemma import ClauseUnsatisfiedByAssignment, LemmaReport, canonical_solution, verify_lemma

__all__ = [
    "Clause",
    "ClauseUnsatisfiedByAssignment",
    "GeneratorError",
    "LayoutInvalid",
    "LemmaReport",
    "ManifestEntry",
    "ReductionOutput",
    "Rp3SatInstance",
    "TooLarge",
    "build_mds_reduction",
    "build_mis_reduction",
    "build_stab_reduction",
    "canonical_solution",
    "compile_reduction",
    "mds_variable_gadget",
    "mis_variable_gadget",
    "parse_formula",
    "sat_brute_force",
    "serialize_formula",
    "stab_variable_gadget",
    "target_value",
    "validate_layout",
    "variable_gadget",
    "verify_lemma",
]
