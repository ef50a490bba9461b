"""Assembly, verification and canonical encoding of veering triangulations."""

from triangulate.assemble import UnmatchedFace, assemble, triangulation_from_catalog
from triangulate.encoding import canonical_encoding
from triangulate.models import (
    Gluing,
    IdealTetra,
    VeeringTriangulation,
    edge_degrees,
    triangulation_from_dict,
    triangulation_to_dict,
)
from triangulate.verify import VeeringReport, verify_veering

__all__ = [
    # Models
    "Gluing",
    "IdealTetra",
    "VeeringTriangulation",
    "edge_degrees",
    "triangulation_from_dict",
    "triangulation_to_dict",
    # Assembly
    "UnmatchedFace",
    "assemble",
    "triangulation_from_catalog",
    # Verification
    "VeeringReport",
    "verify_veering",
    # Encoding
    "canonical_encoding",
]
