"""Poncelet n-gon counts over prime fields.

Conic pairs are tested with Cayley's criterion; the counts are compared
with censuses of torsion points on the Legendre family of elliptic curves.
"""

from .cayley import CayleyCoeffs, cayley_coeffs, hankel_f, satisfies_ngon_cayley
from .census import (
    CensusReport,
    FamilyKind,
    bridge_check,
    divisor_counts,
    expected_total,
    family_curve,
    family_sum,
    gamma3_exact,
    pencil_ngon_count,
)
from .conics import (
    Conic,
    IntersectionType,
    char_cubic,
    intersection_type,
    is_smooth,
    is_transversal,
    rational_point,
)
from .elliptic import (
    Curve,
    CurvePoint,
    TorsionPoly,
    add,
    curve_from_pair,
    is_ntorsion_x,
    r_count,
    r_split,
    scalar_mul,
    torsion_poly,
)
from .errors import (
    BadReduction,
    DivisionByZero,
    FieldMismatch,
    InvalidInput,
    PonceletError,
    SingularConic,
    UnsupportedCharacteristic,
)
from .field import FieldElement, PrimeField, QuadraticExtension, inv, legendre_symbol, sqrt
from .pencils import (
    Pencil,
    PencilParam,
    canonical_pencil,
    pencil_census,
    singular_members,
    smooth_pair_count,
)
from .poly import (
    Poly,
    TruncatedSeries,
    count_roots,
    degree_partition,
    gcd,
    powmod_frobenius,
    roots,
    series_sqrt,
)

__version__ = "0.1.0"
