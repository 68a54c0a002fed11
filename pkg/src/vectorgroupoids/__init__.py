"""Finite Brandt groupoids and vector groupoids over prime fields, with
exhaustive axiom verification, a construction catalog, morphism theory, and
a small definition language with a CLI."""

__version__ = "0.1.0"

from .catalog import (  # noqa: F401
    CATALOG_KINDS,
    DEFAULT_MAX_CARRIER,
    ConstructionSpec,
    PartialBijection,
    direct_product,
    group_as_groupoid,
    null_vg,
    pair_vg,
    sg_cardinality,
    sign_group,
    single_unit,
    symmetry_groupoid,
    trivial_tvg,
    v3,
    vpq,
    whitney_sum,
)
from .errors import (  # noqa: F401
    BaseMismatch,
    CarrierMismatch,
    DimensionMismatch,
    DivisionByZero,
    DomainMismatch,
    FieldMismatch,
    GroupoidError,
    ImageOutsidePullback,
    MulDomainMismatch,
    NotASubspace,
    NotAUnit,
    NotInverse,
    NotPrime,
    PartialMap,
    SizeGuard,
    UnitSetMismatch,
    UnknownElement,
    VerificationFailed,
)
from .fields import (  # noqa: F401
    FLinearMap,
    FVector,
    PrimeField,
    Subspace,
    field_inv,
    make_field,
    rref,
    subspace_membership,
)
from .groupoid import (  # noqa: F401
    FiniteGroupoid,
    GroupIsomorphism,
    IsotropyGroup,
    build_groupoid,
    composable,
    conjugation_iso,
    is_group_bundle,
    is_transitive,
    isotropy_bundle,
    isotropy_group,
    verify_brandt,
    verify_calculus,
)
from .morphisms import (  # noqa: F401
    GroupoidMorphism,
    anchor_morphism,
    build_morphism,
    compose_morphisms,
    identity_morphism,
    sgn_sharp,
    validate_noncomposability_witness,
    verify_homomorphism,
    verify_morphism,
    verify_vector_morphism,
    whitney_projections,
    whitney_universal,
)
from .report import (  # noqa: F401
    DEFAULT_WITNESS_CAP,
    AxiomReport,
    LawCheck,
    Witness,
    render_element,
)
from .spaces import (  # noqa: F401
    AbstractSpace,
    CoordSpace,
    ProductSpace,
    RestrictedSpace,
    SpaceFromOps,
    SubspaceSpace,
    check_linear,
    enumerate_elements,
)
from .vgroupoid import (  # noqa: F401
    FibreTranslation,
    VectorGroupoid,
    attach_vector_structure,
    fibre_translations,
    isotropy_vector_groupoid,
    verify_structural_consequences,
    verify_vector_axioms,
)
