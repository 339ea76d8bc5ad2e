"""Lebesgue decomposition of representable functionals on finite-dimensional *-algebras."""

from .decompose import (
    DecompositionResult,
    Verdict,
    build_T,
    check_invariance,
    check_maximality,
    classical_oracle,
    commutant_compressions,
    decompose,
    is_absolutely_continuous,
    is_singular,
    mutual_ac,
    singularity_probe,
)
from .exceptions import ConsistencyError, DimensionMismatch, RepresentabilityError
from .functional import (
    Functional,
    add,
    check_representable,
    evaluate,
    gram,
    leq,
    random_representable,
    scale,
    vector_functional,
)
from .gns import GnsSpace, build_gns, reconstruct, represent, vector_of
from .relation import LinearRelation, injective_part, inverse, ker_part, mul_part, regular_part
from .star_algebra import (
    StarAlgebra,
    direct_sum,
    function_algebra,
    group_algebra,
    involution,
    matrix_algebra,
    multiply,
    validate,
)

__version__ = "0.1.0"
