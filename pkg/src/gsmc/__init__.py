"""Exact symbolic tensor calculus for torsion-type (alpha, beta) metric
connections on almost-contact metric manifolds given by moving frames."""

from gsmc.symexpr import (
    Expr,
    ExprDivisionError,
    ExprError,
    ExprSyntaxError,
    NotACoordinateError,
    SymbolTable,
    UnknownSymbolError,
)

__all__ = [
    "Expr",
    "ExprDivisionError",
    "ExprError",
    "ExprSyntaxError",
    "NotACoordinateError",
    "SymbolTable",
    "UnknownSymbolError",
]

__version__ = "0.1.0"
