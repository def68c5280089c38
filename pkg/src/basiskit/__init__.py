"""Group representations, basis manifolds and geometrical objects.

The layers build on each other: exact or float scalars, matrices over
them, groups (multiplication tables and matrix families), representations
with side and variance checks, bases with active and passive
transformations, and geometrical objects carrying a transformation law
with an invariant representative.
"""

from .errors import (
    AnchorMismatch,
    BackendMismatch,
    BasiskitError,
    CarrierMismatch,
    CayleyTableError,
    DegenerateBasis,
    DegenerateReference,
    DependentInput,
    DimensionMismatch,
    EnumerationCapExceeded,
    GroupMismatch,
    GroupSpaceMismatch,
    InfeasibleExhaustive,
    MembershipError,
    MixedGroups,
    NoSolution,
    NotCovariant,
    NotInOrbit,
    NotSingleTransitive,
    NullVector,
    ParseError,
    SideMismatch,
    Singular,
    TypeMismatch,
)
from .scalars import APPROX, DEFAULT_TOLERANCE, EXACT, Backend, approx
from .matrices import Matrix
from .groups import (
    AffineTransform,
    FiniteGroup,
    GroupElement,
    MatrixGroup,
    affine_apply,
    boost_2d,
    compose,
    cyclic_group,
    dihedral_group,
    inverse,
    membership_check,
    permutation_matrix,
    quaternion_group,
    rotation_2d,
    symmetric_group,
    validate_cayley_table,
)
from .representations import (
    AffinePointTransformation,
    ClassificationReport,
    CoordCarrier,
    FiniteCarrier,
    FunctionTransformation,
    LinearTransformation,
    MappingTransformation,
    Orbit,
    OrbitPartitionReport,
    PairTransformation,
    ProductCarrier,
    Representation,
    SameSideWitness,
    SelfCarrier,
    VarianceVerdict,
    Verdict,
    apply,
    check_axioms,
    check_variance,
    classify,
    commutation_check,
    compose_transformations,
    contragredient,
    direct_product,
    inverse_law_check,
    kernel_of_inefficiency,
    left_shift,
    orbit,
    orbit_well_defined_check,
    right_shift,
    same_side_noncommuting_witness,
    shifts_commute_check,
    solve_transport,
    transformations_equal,
    twin_representation,
)
from .bases import (
    Basis,
    BasisCarrier,
    BasisManifold,
    CoordinateVector,
    GBasisReport,
    PassiveBasisTransformation,
    StandardCoordinates,
    VectorSpace,
    active_transform,
    basis_metric_signs,
    change_of_basis,
    coordinate_representation_check,
    coordinate_transformation,
    gram_schmidt,
    is_g_basis,
    passive_transform,
    standard_coordinates,
    vector_coordinates,
)
from .objects import (
    GeometricalObject,
    ObjectOrbit,
    TypeAFunctor,
    add_objects,
    direct_sum_functor,
    dual_functor,
    functor_eval,
    fundamental_functor,
    identity_functor,
    invariance_check,
    object_orbit,
    object_orbit_well_defined_check,
    rebase,
    representative,
    scale_object,
    table_functor,
    tensor_power_functor,
    transform_object,
    vector_space_axioms_check,
    weight_dim,
)
from .descriptors import (
    basis_from_descriptor,
    basis_to_descriptor,
    element_from_descriptor,
    element_to_descriptor,
    functor_from_descriptor,
    functor_to_descriptor,
    group_from_descriptor,
    group_to_descriptor,
    object_from_descriptor,
    object_to_descriptor,
    representation_from_descriptor,
)
from .reports import RunReport
from .selftest import run_selftest

__version__ = "0.1.0"
