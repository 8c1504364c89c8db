"""Elliptic curves: moduli, Weierstrass and Legendre forms, lattice numerics, group law."""

from .analytic import eisenstein_g2_g3, lattice_coordinates, torus_add, wp, wp_eval, wp_prime
from .forms import (
    JacobiIntersection,
    LegendreCurve,
    WeierstrassCurve,
    j_invariant,
    legendre_to_weierstrass,
    sklyanin_to_jacobi,
)
from .group_law import (
    INFINITY,
    AffinePoint,
    Cubic,
    parse_point,
    point_add,
    point_mul,
    point_neg,
    point_order,
)
from .modulus import Modulus, Verdict, as_modulus, cm_discriminant, isomorphic, reduce_modulus

__all__ = [
    "Modulus",
    "as_modulus",
    "Verdict",
    "reduce_modulus",
    "isomorphic",
    "cm_discriminant",
    "WeierstrassCurve",
    "LegendreCurve",
    "JacobiIntersection",
    "legendre_to_weierstrass",
    "j_invariant",
    "sklyanin_to_jacobi",
    "eisenstein_g2_g3",
    "wp",
    "wp_prime",
    "wp_eval",
    "torus_add",
    "lattice_coordinates",
    "INFINITY",
    "AffinePoint",
    "Cubic",
    "point_add",
    "point_neg",
    "point_mul",
    "point_order",
    "parse_point",
]
