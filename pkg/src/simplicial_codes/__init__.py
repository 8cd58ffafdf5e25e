"""Linear codes over GF(2^n) built from simplicial complexes, with exact weight enumeration."""

from .analysis import (
    CodeReport,
    ashikhmin_barg,
    check_subfield_weight_relation,
    check_weight_relation,
    distance_optimal_by_griesmer,
    griesmer_sum,
    is_griesmer,
    is_minimal_exhaustive,
    make_report,
    minimality,
)
from .code import (
    DefiningSet,
    LinearCode,
    WeightDistribution,
    build_code,
    closed_form_weight_f8,
    codeword_weight,
    complement,
    defining_set_from_elements,
    defining_set_from_parts,
    matrix_text,
    puncture,
    theta_f8,
)
from .errors import CapacityError, UsageError
from .field import FieldElement, FieldSpec, gf
from .recipe import Recipe, build
from .simplicial import (
    SimplicialComplex,
    SupportVector,
    chi,
    complex_from_maximal,
    generating_function,
    phi,
    simplex_of,
)
from .subfield import (
    SubfieldCode,
    build_subfield_code,
    subfield_defining_set,
    subfield_generator,
    subfield_weight,
)
from .sweep import conjecture_sweep

__version__ = "0.1.0"
