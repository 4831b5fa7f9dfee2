import logging

from ..exceptions import InputError
from .abelian import AbelianMonoid
from .axb import AxbMonoid
from .element import ABELIAN, AXB, FREE
from .family import ScaledMonoid
from .free import FreeMonoid

logger = logging.getLogger(__name__)

FAMILY_CLASSES = {FREE: FreeMonoid, ABELIAN: AbelianMonoid, AXB: AxbMonoid}


def family_from_descriptor(descriptor: dict) -> ScaledMonoid:
    """Builds a family from ``{"family": "free"|"abelian"|"axb", "weights": ["p/q", ...]}``."""
    if not isinstance(descriptor, dict) or "family" not in descriptor:
        raise InputError(f"family descriptor needs a 'family' key: {descriptor!r}", "family_from_descriptor")
    name = descriptor["family"]
    if name not in FAMILY_CLASSES:
        raise InputError(f"unknown family {name!r}", "family_from_descriptor")
    try:
        return FAMILY_CLASSES[name](descriptor.get("weights", []))
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"bad weights {descriptor.get('weights')!r}: {e}", "family_from_descriptor") from e


def element_from_json(monoid: ScaledMonoid, data):
    if not isinstance(data, (list, tuple)):
        raise InputError(f"element must be a list, got {data!r}", "element_from_json")
    return monoid.element(tuple(data))
