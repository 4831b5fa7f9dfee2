from dataclasses import dataclass

from ..exceptions import FamilyMismatchError
from ..hull import ZERO
from ..monoid import MonoidElement, ScaledMonoid


@dataclass(frozen=True, order=True)
class SpanningElement:
    """``v_s v_t*``."""

    s: MonoidElement
    t: MonoidElement

    def __repr__(self) -> str:
        return f"v_{self.s!r} v_{self.t!r}*"

    def adjoint(self) -> "SpanningElement":
        return SpanningElement(self.t, self.s)

    def to_json(self):
        return {"s": self.s.to_json(), "t": self.t.to_json()}


def unit(monoid: ScaledMonoid) -> SpanningElement:
    e = monoid.identity()
    return SpanningElement(e, e)


def isometry(monoid: ScaledMonoid, s: MonoidElement) -> SpanningElement:
    return SpanningElement(s, monoid.identity())


def adjoint(x):
    return ZERO if x is ZERO else x.adjoint()


def spanning_product(monoid: ScaledMonoid, x, y):
    """
    ``v_s v_t* v_u v_w* = v_{sa} v_{wb}*`` where ``tS ∩ uS = rS`` and ``r = ta = ub``;
    ``ZERO`` when the ideals are disjoint.
    """
    if x is ZERO or y is ZERO:
        return ZERO
    for z in (x, y):
        if not isinstance(z, SpanningElement):
            raise FamilyMismatchError(z, monoid, "spanning_product")
    result = monoid.compose_pairs(x.s, x.t, y.s, y.t)
    if result is None:
        return ZERO
    return SpanningElement(*result)
