"""Tropical theta functions, Delaunay-Voronoi geometry and Neron-Tate heights.

Exact rational core (``quadform``, ``latmin``, ``troptheta``, ``delvor``)
and certified floating point for the Riemann theta function
(``archtheta``) and height assembly (``heights``).
"""
from .quadform import Covector, QuadChar, new_quadchar
from .troptheta import theta_eq, theta_inv, theta_inv_direct, theta_pl

__all__ = ["Covector", "QuadChar", "new_quadchar", "theta_eq", "theta_inv",
           "theta_inv_direct", "theta_pl"]
