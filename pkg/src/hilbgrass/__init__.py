"""Exact computations for Hilbert schemes of hypersurfaces in linear subspaces of Grassmannians."""

from .combinatorics import BoxContext, ClassSum, Partition, SchubertClass, lr_multiply, pieri, validate_partition
from .components import (
    ComponentReport,
    HilbertPolynomial,
    bundle_total_dimension,
    component_count,
    flag_dimension,
    hilbert_poly,
    hypersurface_class,
    mplane_classes,
    planar_curve_poly,
)
from .grassmannian import (
    Family,
    FlagBasis,
    GrassmannianContext,
    PlaneFamilySpec,
    PluckerPoint,
    classify_plane,
    on_grassmannian,
    parametrize_plane,
    plane_from_plucker,
    plucker_embed,
    plucker_relations,
    schubert_membership,
    span_of_hypersurface,
)
from .linalg import RationalMatrix, nullspace, rank, rref
from .polynomials import (
    GradedIdeal,
    HypersurfaceIdealSpec,
    Poly,
    hilbert_function,
    hom_dimension,
    macaulay_matrix,
    monomials_of_degree,
    quotient_basis,
    syzygies_in_degree,
)

__version__ = "0.1.0"
