from .bnb import solve_bnb
from .brute import solve_brute
from .ilp import IlpModel, UnsupportedModelError, emit_ilp, encode, solve_ilp_brute, write_lp
from .common import Invariant, SolveRequest, SolveResult, SolverError, Strategy, check_certificate

__all__ = [
    "IlpModel",
    "UnsupportedModelError",
    "emit_ilp",
    "encode",
    "solve_ilp_brute",
    "write_lp",
    "Invariant",
    "SolveRequest",
    "SolveResult",
    "SolverError",
    "Strategy",
    "check_certificate",
    "solve_brute",
    "solve_bnb",
]
