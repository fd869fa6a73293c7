"""Exact arithmetic for point-counting stratification on product Kummer surfaces.

Divisor classes live in the rank-18 span of the two fibre classes and the
sixteen exceptional curves; everything that can be exact is exact
(``fractions.Fraction`` and Python integers).
"""

from .errors import (
    InsufficientSamples,
    KummerError,
    NonPositiveDenominator,
    NonPositiveFiberDegree,
    NotAmpleLike,
    NotInCone,
    UnboundedRegion,
)
from .lattice import (
    CURVE_LABELS,
    CurveLabel,
    DivisorClass,
    SubsetPair,
    a_class,
    all_subset_pairs,
    curve_class,
    degree,
    pair,
    rank_of_span,
)
from .cone import (
    AmpleDivisorInput,
    ConeDecomposition,
    GammaPolygon,
    Strategy,
    decompose,
    denominator_delta,
    gamma_polygon,
    gammas,
    optimize_denominator,
    reconstruct,
)
from .strata import (
    StrataReport,
    TheoremCase,
    alpha,
    check_condition2,
    classify_case,
    error_exponent,
    first_layer_report,
    min_degree,
)
from .region import (
    CountSample,
    GrowthFit,
    RegionParams,
    area_closed_form,
    count_region,
    count_sweep,
    fit_exponent,
    in_region,
)
from .projective import ProjPoint, count_degree_d, count_p1

__all__ = [
    "InsufficientSamples",
    "KummerError",
    "NonPositiveDenominator",
    "NonPositiveFiberDegree",
    "NotAmpleLike",
    "NotInCone",
    "UnboundedRegion",
    "CURVE_LABELS",
    "CurveLabel",
    "DivisorClass",
    "SubsetPair",
    "a_class",
    "all_subset_pairs",
    "curve_class",
    "degree",
    "pair",
    "rank_of_span",
    "AmpleDivisorInput",
    "ConeDecomposition",
    "GammaPolygon",
    "Strategy",
    "decompose",
    "denominator_delta",
    "gamma_polygon",
    "gammas",
    "optimize_denominator",
    "reconstruct",
    "StrataReport",
    "TheoremCase",
    "alpha",
    "check_condition2",
    "classify_case",
    "error_exponent",
    "first_layer_report",
    "min_degree",
    "CountSample",
    "GrowthFit",
    "RegionParams",
    "area_closed_form",
    "count_region",
    "count_sweep",
    "fit_exponent",
    "in_region",
    "ProjPoint",
    "count_degree_d",
    "count_p1",
]

__version__ = "0.1.0"
