import logging
from dataclasses import dataclass
from fractions import Fraction

logger = logging.getLogger(__name__)

FREE = "free"
ABELIAN = "abelian"
AXB = "axb"
FAMILIES = (FREE, ABELIAN, AXB)


@dataclass(frozen=True, order=True)
class MonoidElement:
    """
    An element of one of the built-in right LCM monoid families.

    The payload is canonical for the family: a word of generator indices for
    the free monoid, a vector of nonnegative integers for N^k and a pair
    ``(b, a)`` with ``b >= 0, a >= 1`` for the ax+b monoid. Ordering compares
    the family tag first and then the payload lexicographically.
    """

    family: str
    payload: tuple

    def __repr__(self) -> str:
        if self.family == FREE:
            return "w(" + ",".join(str(i) for i in self.payload) + ")"
        return f"{self.family}{self.payload}"

    def to_json(self):
        return list(self.payload)


@dataclass(frozen=True)
class ClassRep:
    representative: MonoidElement
    value: Fraction

    def sort_key(self):
        return (self.value, self.representative.payload)


@dataclass(frozen=True)
class Ideal:
    generator: MonoidElement


class _Disjoint:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Disjoint"

    def __bool__(self) -> bool:
        return False


Disjoint = _Disjoint()


def parse_rational(value) -> Fraction:
    """Parses ``"p/q"`` strings, ints and Fractions; floats are rejected."""
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise ValueError(f"not a rational: {value!r}")


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"
