"""hklab: exact Hilbert-Kunz / Hilbert-Samuel multiplicity laboratory for
ideals in quotients of polynomial rings over positive-characteristic fields,
with empirical checks of semicontinuity, monotonicity, uniform-convergence,
and reduction-mod-p behavior on parametrized families."""

from .coeff import (
    ExtensionField,
    Field,
    FieldElement,
    PrimeField,
    RationalFunctionField,
    field_from_config,
    frobenius,
    make_extension,
)
from .errors import HKLabError, StructuralError, ValidationError
from .family import (
    FamilySpec,
    FiberSpec,
    ModpResult,
    SweepResult,
    UniformBoundReport,
    Verdict,
    hk_family_rows,
    hk_monotonicity_check,
    hk_sweep,
    hs_family_rows,
    hs_family_sweep,
    modp_sweep,
    specialize_fiber,
    term_semicontinuity_check,
    uniform_bound_probe,
    verdict_hk_monotonicity,
    verdict_hs_lex,
    verdict_term_semicontinuity,
)
from .groebner import (
    INFINITE,
    GroebnerBasis,
    buchberger,
    colength,
    ideal_colon_m,
    is_primary_to_origin,
    multiplication_matrix,
    normal_form,
    trace_discriminant,
)
from .multiplicity import (
    CSigResult,
    HKEstimate,
    HKSample,
    HSEstimate,
    HSSample,
    QuotientRingSpec,
    RSigResult,
    csig_search,
    hk_estimate,
    hk_function,
    hs_function,
    hs_multiplicity,
    krull_dimension,
    rsig_search,
    socle_basis,
)
from .polyring import (
    IdealPresentation,
    IntegerDomain,
    Monomial,
    Polynomial,
    PolynomialRing,
    TermOrder,
    frobenius_power,
    ordinary_power,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
