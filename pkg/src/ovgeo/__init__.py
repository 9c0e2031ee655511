"""Suzuki groups acting on ovoids, and the incidence structures they carry.

The package builds Sz(q) for q = 2^(2e+1) as a permutation group on its
ovoid, selects reflection triangles from a triality, and machine-checks the
properties of the resulting chamber systems, coset geometries and regular
hypermaps.  A FastAPI service exposes the checks; the ``ovgeo`` CLI is a
thin client for it.
"""

from .gf2m import FieldParams, make_field
from .ovoid_group import Ovoid, SuzukiGroup, GroupElement
from .triality import TrialityMap, make_triality

__all__ = [
    "FieldParams",
    "make_field",
    "Ovoid",
    "SuzukiGroup",
    "GroupElement",
    "TrialityMap",
    "make_triality",
]

__version__ = "0.1.0"
