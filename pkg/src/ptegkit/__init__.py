"""Exact max-plus analysis of P-time event graphs: weak consistency,
first token death, and consistent finite schedule synthesis."""

from .tropical import (
    NEG_INF,
    POS_INF,
    FlavorError,
    GammaVerdict,
    NotInGamma,
    PathWitness,
    ShapeError,
    TropicalError,
    TropicalMatrix,
    Value,
    as_value,
    dual_otimes,
    gamma_check,
    is_finite,
    kleene_star,
    oplus,
    otimes,
    sharp,
    solve_subinvariant,
    splus,
    star_apply,
)
from .pteg import (
    CharacteristicMatrices,
    EmptyNet,
    IntervalInverted,
    MarkingNotBinary,
    PTEG,
    PTEGError,
    Place,
    SchemaError,
    TrajectoryWindow,
    ValidationResult,
    compile_matrices,
    parse_pteg,
    parse_trajectory,
    validate_trajectory,
)
from .periodic import (
    BlockSystem,
    ConnectionMatrix,
    PeriodicAnalysis,
    PeriodicSystem,
    PumpPair,
    build_block,
    build_periodic,
    connection_matrix,
    path_weight,
    pump_sets,
)
from .wc import (
    Certificate,
    DiophantineProblem,
    WCVerdict,
    solve_homogeneous,
    solve_offset,
    verify_wc,
)
from .death import DeathReport, IsWeaklyConsistent, first_death
from .trajectory import HorizonInfeasible, synthesize

__version__ = "0.1.0"

__all__ = [
    "NEG_INF", "POS_INF", "Value", "as_value", "is_finite",
    "TropicalError", "ShapeError", "FlavorError", "NotInGamma",
    "TropicalMatrix", "oplus", "splus", "otimes", "dual_otimes", "sharp",
    "gamma_check", "kleene_star", "star_apply", "solve_subinvariant",
    "GammaVerdict", "PathWitness",
    "PTEG", "Place", "PTEGError", "SchemaError", "MarkingNotBinary",
    "EmptyNet", "IntervalInverted", "CharacteristicMatrices",
    "TrajectoryWindow", "ValidationResult", "parse_pteg", "compile_matrices",
    "parse_trajectory", "validate_trajectory",
    "PeriodicSystem", "PumpPair", "ConnectionMatrix", "BlockSystem",
    "PeriodicAnalysis", "build_periodic", "build_block", "pump_sets",
    "connection_matrix", "path_weight",
    "DiophantineProblem", "Certificate", "WCVerdict", "solve_homogeneous",
    "solve_offset", "verify_wc",
    "DeathReport", "IsWeaklyConsistent", "first_death",
    "HorizonInfeasible", "synthesize",
]
