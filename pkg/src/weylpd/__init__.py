"""Exact computations with the first Weyl algebra A1 = Q[t, D] and the
subspaces of Q[t] it acts on."""
from ._backend import BACKEND
from .correspondence import (Caps, DEFAULT_CAPS, IdealPresentation, Inconclusive, NotPD, PD, drv_truncation,
                             find_poly_in_ideal, gamma, in_DRV, pd_decide, star1)
from .errors import ParseError, PreconditionError, VerificationError, WeylError
from .poly import Poly, RatFunc
from .subspace import O_space, Oh_space, Subspace, conductor, ideal, intersect, make, stabilizer, sum_
from .syntax import parse, parse_ideal, parse_poly, parse_subspace, parse_weyl, render
from .weyl import WeylOp, apply, build_f, commutator, sigma

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Caps", "DEFAULT_CAPS", "IdealPresentation", "Inconclusive", "NotPD", "PD", "ParseError",
    "Poly", "PreconditionError", "RatFunc", "Subspace", "VerificationError", "WeylError", "WeylOp",
    "O_space", "Oh_space", "apply", "build_f", "commutator", "conductor", "drv_truncation",
    "find_poly_in_ideal", "gamma", "ideal", "in_DRV", "intersect", "make", "parse", "parse_ideal",
    "parse_poly", "parse_subspace", "parse_weyl", "pd_decide", "render", "sigma", "stabilizer", "star1",
    "sum_",
]
