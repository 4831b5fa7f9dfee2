from .semigroup import (
    FiniteInverseSemigroup,
    ValidationReport,
    complete_scale,
    load_table,
    trivial_scale,
    validate,
)
from .crystal import CrystalResult, TransversalityReport, crystal, ecx, icx, transversality_check
from .semicharacter import BoundaryResult, SemiCharacter, boundary_set, is_filter, principal, semicharacters
from .groupoid import (
    GroupoidArrow,
    GroupoidReport,
    PatersonGroupoid,
    RestrictionCertificate,
    paterson,
    restriction_iso_certificate,
)
from .catalog import CatalogEntry, b2, load_catalog, shipped_catalog

__all__ = [
    "FiniteInverseSemigroup",
    "ValidationReport",
    "validate",
    "complete_scale",
    "trivial_scale",
    "load_table",
    "CrystalResult",
    "TransversalityReport",
    "crystal",
    "ecx",
    "icx",
    "transversality_check",
    "SemiCharacter",
    "BoundaryResult",
    "semicharacters",
    "principal",
    "is_filter",
    "boundary_set",
    "GroupoidArrow",
    "GroupoidReport",
    "PatersonGroupoid",
    "RestrictionCertificate",
    "paterson",
    "restriction_iso_certificate",
    "CatalogEntry",
    "b2",
    "shipped_catalog",
    "load_catalog",
]
