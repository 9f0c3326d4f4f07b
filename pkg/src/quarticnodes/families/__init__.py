"""Explicit quartic families, their singular points and finite-field scans."""

from .nodes import NodeReport, NotOnHypersurfaceError, classify_singularity, designed_nodes
from .quartics import (
    FAMILY_CONSTITUENTS,
    FAMILY_EQUATIONS,
    FamilyError,
    QuarticSpec,
    build_family,
    burkhardt,
    burkhardt_form,
    designed_delpezzo,
    designed_plane,
    designed_quadric,
)
from .scan import ScanResult, projective_point_count, scan, scan_singular
from .solve import NotRationalError, common_rational_zeros, linear_factors, rational_roots

__all__ = [
    "NodeReport",
    "NotOnHypersurfaceError",
    "classify_singularity",
    "designed_nodes",
    "FAMILY_CONSTITUENTS",
    "FAMILY_EQUATIONS",
    "FamilyError",
    "QuarticSpec",
    "build_family",
    "burkhardt",
    "burkhardt_form",
    "designed_delpezzo",
    "designed_plane",
    "designed_quadric",
    "ScanResult",
    "projective_point_count",
    "scan",
    "scan_singular",
    "NotRationalError",
    "common_rational_zeros",
    "linear_factors",
    "rational_roots",
]
