from .element import ClassRep, Disjoint, Ideal, MonoidElement, format_rational, parse_rational
from .family import ClassTerm, ScaledMonoid, ScaleConditionReport
from .free import FreeMonoid
from .abelian import AbelianMonoid
from .axb import AxbMonoid
from .descriptor import element_from_json, family_from_descriptor

__all__ = [
    "MonoidElement",
    "ClassRep",
    "ClassTerm",
    "Disjoint",
    "Ideal",
    "ScaledMonoid",
    "ScaleConditionReport",
    "FreeMonoid",
    "AbelianMonoid",
    "AxbMonoid",
    "family_from_descriptor",
    "element_from_json",
    "parse_rational",
    "format_rational",
]
