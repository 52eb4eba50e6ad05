"""Exact engine for effective subelliptic-multiplier certificates on special domains in C^3."""

__version__ = "0.1.0"

from .bipoly import BiPoly, poly_arith
from .germs import CurveGerm, ExtOrder, Germ, JetSpec, nu, nu_curve, nu_gamma, nu_k, nu_k_gamma
from .parse import parse_poly, render_poly
from .series import TSeries, compose_series

__all__ = [
    "BiPoly",
    "CurveGerm",
    "ExtOrder",
    "Germ",
    "JetSpec",
    "TSeries",
    "compose_series",
    "nu",
    "nu_curve",
    "nu_gamma",
    "nu_k",
    "nu_k_gamma",
    "parse_poly",
    "poly_arith",
    "render_poly",
]
