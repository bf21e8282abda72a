"""ringlab: finite rings, derivation enumeration, set-valued antiderivatives."""

from .rings import (
    ElementSet,
    ElementParseError,
    FiniteRing,
    Matrix,
    Product,
    RingAxiomError,
    RingError,
    RingSpec,
    Tables,
    TriPattern,
    TruncPoly,
    Zn,
    build_ring,
    load_ring,
    spec_from_json,
    spec_name,
    spec_to_json,
    subring_closure,
)
from .maps import (
    AdditiveMap,
    GeneratorBasis,
    MapLawError,
    NotAdditiveError,
    check_additive,
    check_derivation,
    check_jordan_derivation,
    enumerate_derivations,
    enumerate_jordan_derivations,
    formal_derivative,
    generator_basis,
    inner_derivation,
    zero_map,
)
from .integrals import (
    Integral,
    QuotientView,
    integral_as_set,
    integral_contains,
    integral_equals,
    integrate,
    is_proper,
    jordan_integrate,
    quotient_view,
    set_add,
    set_mul,
)
from .theorems import (
    CHECKER_ORDER,
    CheckerConfig,
    TheoremReport,
    find_jordan_not_derivation,
    herstein_check,
    run_suite,
    suite_status,
    verify_additivity_and_parts,
    verify_basic,
    verify_combination_rules,
    verify_coset_structure,
    verify_jordan_suite,
    verify_kernel_constants,
    verify_kernel_scaling,
    verify_power_rules,
    verify_separation,
)

__version__ = "0.1.0"
