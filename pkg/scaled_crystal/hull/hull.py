import logging
from dataclasses import dataclass
from fractions import Fraction

from ..exceptions import FamilyMismatchError, NotIdempotentError, ZeroScaleError
from ..monoid import MonoidElement, ScaledMonoid

logger = logging.getLogger(__name__)


class _HullZero:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ZERO"

    def to_json(self):
        return "zero"


ZERO = _HullZero()


@dataclass(frozen=True, order=True)
class HullElement:
    """
    The partial bijection ``bS -> aS, by -> ay``, written ``a b^-1``. With trivial
    units this pair is the unique normal form; ``(a, a)`` is the projection onto
    ``aS``.
    """

    a: MonoidElement
    b: MonoidElement

    def __repr__(self) -> str:
        return f"({self.a!r})({self.b!r})^-1"

    def inverse(self) -> "HullElement":
        return HullElement(self.b, self.a)

    @property
    def is_idempotent(self) -> bool:
        return self.a == self.b

    def to_json(self):
        return {"a": self.a.to_json(), "b": self.b.to_json()}


class InverseHull:
    """The left inverse hull of a right LCM scaled monoid, in ``a b^-1`` normal form."""

    def __init__(self, monoid: ScaledMonoid) -> None:
        self.monoid = monoid

    def __repr__(self) -> str:
        return f"InverseHull({self.monoid!r})"

    def pair(self, a: MonoidElement, b: MonoidElement) -> HullElement:
        self.monoid._check_family(a, b, func="InverseHull.pair")
        return HullElement(a, b)

    def translation(self, s: MonoidElement) -> HullElement:
        return self.pair(s, self.monoid.identity())

    def projection(self, s: MonoidElement) -> HullElement:
        return self.pair(s, s)

    def from_inverse_form(self, s: MonoidElement, t: MonoidElement):
        """Converts ``s^-1 t`` into normal form, ``ZERO`` when ``sS ∩ tS`` is empty."""
        return self.compose(self.translation(s).inverse(), self.translation(t))

    def _check(self, x) -> None:
        if x is ZERO:
            return
        if not isinstance(x, HullElement) or x.a.family != self.monoid.family:
            raise FamilyMismatchError(x, self, "InverseHull")

    def compose(self, x, y):
        self._check(x)
        self._check(y)
        if x is ZERO or y is ZERO:
            return ZERO
        result = self.monoid.compose_pairs(x.a, x.b, y.a, y.b)
        if result is None:
            return ZERO
        return HullElement(*result)

    def compose_all(self, *elements):
        result = None
        for x in elements:
            result = x if result is None else self.compose(result, x)
        return result

    def inverse(self, x):
        self._check(x)
        if x is ZERO:
            return ZERO
        return HullElement(x.b, x.a)

    def idempotent_of(self, x):
        """``x^-1 x``, the projection onto the domain ``bS``."""
        self._check(x)
        if x is ZERO:
            return ZERO
        return HullElement(x.b, x.b)

    def range_idempotent(self, x):
        self._check(x)
        if x is ZERO:
            return ZERO
        return HullElement(x.a, x.a)

    def hull_scale(self, x) -> Fraction:
        self._check(x)
        if x is ZERO:
            raise ZeroScaleError()
        return self.monoid.scale_value(x.a) / self.monoid.scale_value(x.b)

    def ecx_member_hull(self, p) -> bool:
        self._check(p)
        if p is ZERO or not p.is_idempotent:
            raise NotIdempotentError(p)
        return self.monoid.kernel_member(p.a)

