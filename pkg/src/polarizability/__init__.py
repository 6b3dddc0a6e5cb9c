"""Principal polarizability of isogeny classes of abelian surfaces over finite fields."""
from ._backend import BACKEND
from .census import CensusReport, census_report, enumerate_valid
from .criteria import (
    DecisionRecord,
    artin_trace,
    cross_check,
    decide,
    main_criterion,
    table1_reason,
    trace_zero_criterion,
)
from .errors import DomainError
from .intkernel import PrimePower, factorize, prime_power_decompose
from .weilpoly import NewtonType, SurfaceClass

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CensusReport",
    "DecisionRecord",
    "DomainError",
    "NewtonType",
    "PrimePower",
    "SurfaceClass",
    "artin_trace",
    "census_report",
    "cross_check",
    "decide",
    "enumerate_valid",
    "factorize",
    "main_criterion",
    "prime_power_decompose",
    "table1_reason",
    "trace_zero_criterion",
]
