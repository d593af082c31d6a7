"""2-class groups of the imaginary fields Q(zeta_8, sqrt(d)) for odd
square-free d.

The package decides whether the 2-class group has rank 2 or 3, whether it is
isomorphic to (2,4) or (2,2,2), and computes (or certifies a lower bound for)
the 2-class number h2(L_d).  Supporting machinery: exact binary quadratic
form class groups, narrow/wide class numbers of real quadratic fields,
fundamental units, and exact squareness tests in real biquadratic fields.
"""

from .arith import (
    FactoredOdd,
    KaplanParams,
    UVRep,
    factor_squarefree,
    factorize,
    is_prime,
    is_squarefree,
    jacobi,
    kaplan_parameters,
    quartic_symbol,
    quartic_symbol_mod2,
    represent_u2_minus_2v2,
    squarefree_kernel,
)
from .classifier import GroupType, RankCase, Verdict, classify, rank2_case, rank3_case
from .errors import (
    FactorBoundExceeded,
    Inconclusive,
    IntegrityError,
    NotApplicable,
    NotQuadraticResidue,
    NotSquarefree,
    RangeExceeded,
    RouteUnavailable,
    SearchExhausted,
    TriquadError,
    UnknownCase,
)
from .formulas import (
    EXACT,
    LOWER_BOUND,
    UNKNOWN,
    H2Result,
    divisibility_certificate,
    h2_Ld,
    h2_Ld_via_cm,
    h2_Ld_via_wada,
    h2_real_biquad,
)
from .quadforms import (
    AbelianStructure,
    QForm,
    class_number_real,
    compose,
    form_pow,
    fundamental_discriminant,
    h2_quadratic,
    imaginary_class_group,
    narrow_class_number,
    reduce_form,
    sylow2_type,
)
from .units import (
    BiquadField,
    EpsDecomposition,
    FundUnit,
    UnitIndex,
    eps_decomposition,
    fundamental_unit,
    hasse_Q_Ld,
    is_square_in_biquad,
    q_index_Ld,
    sqrt_in_biquad,
    unit_index_biquad,
    unit_product,
)

__version__ = "1.0.0"

__all__ = [name for name in dir() if not name.startswith("_")]
