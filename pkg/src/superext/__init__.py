"""Exact-arithmetic cohomology engine for abelian extensions of Lie superalgebras."""

from .algebra import (
    GradedLinearMap,
    LieSuperalgebra,
    ModuleAction,
    SuperBasis,
    Violation,
    is_homomorphism,
    quotient_by_ideal,
    semidirect_product,
    validate_module,
    validate_superalgebra,
)
from .cohomology import (
    Cochain1,
    Cochain2,
    CohomologyClass,
    CohomologyPresentation,
    class_of,
    coboundary1,
    cocycle2_space,
    coboundary2_space,
    cup,
    derivation_space,
    h1,
    h2,
    inner_space,
    is_cocycle1,
    is_cocycle2,
)
from .errors import (
    MembershipError,
    NotAnIdealError,
    ParseError,
    ShapeError,
    SuperextError,
)
from .extension import (
    AbelianExtension,
    EndFlags,
    beta_with_section,
    build_extension,
    classify_endomorphism,
    derivation_compose,
    extend_endomorphism,
    extend_obstruction,
    extend_obstruction_aut,
    fixes_action,
    from_derivation,
    induced_on_quotient,
    inflate1,
    inflate2,
    is_ideal_derivation,
    is_module_endomorphism,
    lift_endomorphism,
    lift_obstruction,
    quasi_mul,
    quasiregular_inverse,
    restrict1,
    ring_add,
    ring_mul,
    section_offset,
    shifted_restriction,
    to_derivation,
)
from .linalg import (
    Mat,
    QuotientPresentation,
    SubspacePresentation,
    kernel_basis,
    quotient_presentation,
    rat,
    solve,
    subspace_equal,
)
from .sequences import (
    Report,
    sample_cocycle,
    verify_automorphism_extension,
    verify_five_term,
    verify_ring_sequence,
    verify_monoid_sequence,
    verify_semidirect_automorphisms,
)

__version__ = "0.1.0"
