"""Exact computation of CSM classes, ML degrees and gradient degrees of very
affine varieties from lattice polytopes and hyperplane arrangements, with an
elimination-based counter of critical points for cross-checking."""

from .arrangement import (
    Arrangement,
    Hyperplane,
    char_poly,
    classify,
    critical_class_bidegrees,
    csm_vector_arrangement,
    decone,
    finite_field_complement_count,
    good_primes,
    intersection_poset,
    ml_degree_arrangement,
    region_counts,
    triple,
)
from .critical import CountReport, MasterFunction, critical_count_r1, critical_count_r2, curve_critical_count
from .errors import (
    ArrangementError,
    ComputationError,
    DegeneratePolytopeError,
    EliminationError,
    EmptyPolytopeError,
    NonGenericError,
    NotVeryAffineError,
    ParseError,
    ZeroPolynomialError,
)
from .exactmath import (
    BiPoly,
    RatMatrix,
    Rational,
    UniPoly,
    distinct_root_count,
    logconcave_no_internal_zeros,
    matrix_rank,
    sylvester_resultant,
)
from .newton import (
    CsmVector,
    HomogeneousPolynomial,
    LaurentPolynomial,
    MilnorVector,
    VTable,
    csm_hypersurface_vector,
    gradient_degree,
    milnor_vector,
    ml_degree_hypersurface,
    newton_numbers,
    newton_polytope,
    statistical_ml_degree,
    v_table,
)
from .parsing import arrangement_document, format_laurent, parse_arrangement, parse_laurent
from .polytope import (
    HomogeneousPolytope,
    LatticePolytope,
    convex_hull,
    coordinate_section,
    ehrhart_normalized_volume,
    euclidean_volume,
    homog_project,
    m_sequence,
    minkowski_sum,
    mixed_volume_inclusion_exclusion,
    mixed_volume_pair_sequence,
    normalized_volume,
)

__version__ = "0.1.0"
