from .hull import ZERO, HullElement, InverseHull
from .certificate import (
    HullCertificate,
    HullSampleReport,
    crystal_certificate_hull,
    hull_axioms_check,
    scale_consistency_check,
)

__all__ = [
    "ZERO",
    "HullElement",
    "InverseHull",
    "HullCertificate",
    "HullSampleReport",
    "crystal_certificate_hull",
    "hull_axioms_check",
    "scale_consistency_check",
]
