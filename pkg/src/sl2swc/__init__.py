"""Exact Stiefel-Whitney classes of orthogonal representations of SL(2,q).

Everything is computed with exact arithmetic: finite fields as polynomial
residues, character values as cyclotomic integers, cohomology classes as
bit-packed F2 coordinate vectors.  The `oracle` module re-derives every class
by brute force from restrictions to small subgroups, independently of the
closed formulas in `swc`.
"""

from .algebra import (
    CompositeP,
    Cyclo,
    FieldElement,
    FieldSpec,
    NotRationalInteger,
    cyclo_make,
    cyclo_to_integer,
    field_make,
    field_trace,
)
from .characters import (
    BadConstructionParams,
    CharacterTable,
    ClassFunction,
    VirtualRep,
    char_table,
    cuspidal,
    cuspidal_sl,
    decompose_orthogonal,
    fs_indicator,
    induce,
    principal_series,
    principal_series_sl,
    regular_rep,
    restrict,
    symmetrize,
    trivial_rep,
)
from .cohomology import (
    GradedClass,
    RestrictionMap,
    Ring,
    dickson,
    ring_make,
    ring_mul,
    restriction_apply,
    steenrod_sq,
)
from .groups import (
    ConjugacyData,
    Group,
    Subgroup,
    build_gl2,
    build_sl2,
    conjugacy,
    find_quaternion,
    gen_quaternion,
    quaternion_embeddings,
    standard_subgroup,
)
from .oracle import (
    Mismatch,
    swc_from_center,
    swc_from_quaternion,
    swc_from_unipotent,
    verify_swc_formula,
    wu_formula_holds,
)
from .swc import (
    SwcReport,
    TotalSWC,
    image_exponent,
    obstruction,
    quaternionic_multiplicity,
    swc_report,
    top_class_nonzero,
    total_swc,
    total_swc_expanded,
    unipotent_multiplicities,
)

__version__ = "0.1.0"
