"""Exact cohomology of Lie conformal algebras over the rationals.

The package builds conformal algebras and their modules from structure
polynomials, checks the defining axioms as exact polynomial identities,
realizes the basic and reduced cochain complexes (plus the Hochschild,
cyclic and Leibniz variants), and computes cohomology dimensions with
representative cocycles by exact linear algebra on bidegree slices.
"""

from .algebra import (
    ConformalAlgebra,
    ConformalModule,
    adjoint_module,
    bracket_eval,
    action_eval,
    build_current,
    build_m_delta_alpha,
    build_m_u,
    build_trivial,
    build_vir,
    check_jacobi,
    check_module,
    check_skew_symmetry,
)
from .cochain import (
    BASIC,
    CYCLIC,
    HOCHSCHILD,
    LEIBNIZ,
    REDUCED,
    Cochain,
    d_basic,
    d_reduced,
    del_action,
    differential,
    reduce_cochain,
)
from .engine import (
    BettiTable,
    ComplexSpec,
    betti,
    truncation_sweep,
    verify_cocycle,
)
from .liealg import LiePresentation, Rep, abelian, sl2, sl3
from .poly import DEL, RatPoly, lam, param, parse_poly

__version__ = "0.1.0"

__all__ = [
    "BASIC",
    "BettiTable",
    "CYCLIC",
    "Cochain",
    "ComplexSpec",
    "ConformalAlgebra",
    "ConformalModule",
    "DEL",
    "HOCHSCHILD",
    "LEIBNIZ",
    "LiePresentation",
    "REDUCED",
    "RatPoly",
    "Rep",
    "abelian",
    "action_eval",
    "adjoint_module",
    "betti",
    "bracket_eval",
    "build_current",
    "build_m_delta_alpha",
    "build_m_u",
    "build_trivial",
    "build_vir",
    "check_jacobi",
    "check_module",
    "check_skew_symmetry",
    "d_basic",
    "d_reduced",
    "del_action",
    "differential",
    "lam",
    "param",
    "parse_poly",
    "reduce_cochain",
    "sl2",
    "sl3",
    "truncation_sweep",
    "verify_cocycle",
]
