"""Degrees-of-freedom regions for three-node full-duplex wireless links.

A base station serves an uplink user and a downlink user at the same time
in the same band; the only self-interference countermeasure is spatial
isolation.  This package computes the achievable (d1, d2) region from the
array sizes and the scattering-interval geometry, compares it against
half-duplex time division, and verifies every closed form against a
randomized finite-dimensional operator oracle.
"""

from .intervals import (
    DirectionSet,
    DomainError,
    MalformedIntervalError,
    cos_degrees,
    refine,
)
from .oracle import (
    BasisAllocation,
    DiscretizedChannel,
    DimCheck,
    OperatorDimReport,
    QuantizationError,
    RankToleranceWarning,
    SpaceAllocation,
    ZeroForcingResult,
    allocate_basis,
    corrupt_support,
    integer_rescale,
    integer_scale,
    numerical_rank,
    sample_channel,
    verify_operator_dims,
    zero_forcing_corner,
    zf_case_applies,
)
from .regions import (
    ArrayHalfLengths,
    CornerPoints,
    DegenerateGeometryError,
    DofRegion,
    RegionRelation,
    ScatteringGeometry,
    corner_points,
    fd_caps,
    fd_region,
    genie_expand,
    hd_region,
    is_rectangular,
    make_fully_spread,
    make_symmetric,
    region_from_caps,
    region_relate,
)
from .scenario import (
    OracleSettings,
    Scenario,
    SchemaError,
    load_scenario,
    parse_scenario,
    save_scenario,
    scenario_to_jsonable,
)

__version__ = "0.1.0"

__all__ = [
    "ArrayHalfLengths",
    "BasisAllocation",
    "CornerPoints",
    "DegenerateGeometryError",
    "DimCheck",
    "DirectionSet",
    "DiscretizedChannel",
    "DofRegion",
    "DomainError",
    "MalformedIntervalError",
    "OperatorDimReport",
    "OracleSettings",
    "QuantizationError",
    "RankToleranceWarning",
    "RegionRelation",
    "Scenario",
    "ScatteringGeometry",
    "SchemaError",
    "SpaceAllocation",
    "ZeroForcingResult",
    "allocate_basis",
    "corner_points",
    "corrupt_support",
    "cos_degrees",
    "fd_caps",
    "fd_region",
    "genie_expand",
    "hd_region",
    "integer_rescale",
    "integer_scale",
    "is_rectangular",
    "load_scenario",
    "make_fully_spread",
    "make_symmetric",
    "numerical_rank",
    "parse_scenario",
    "refine",
    "region_from_caps",
    "region_relate",
    "sample_channel",
    "save_scenario",
    "scenario_to_jsonable",
    "verify_operator_dims",
    "zero_forcing_corner",
    "zf_case_applies",
]
