import logging
from dataclasses import dataclass, field

from .. import SCALED_CRYSTAL_CONFIG
from ..exceptions import BoundExceededError
from .crystal import ecx as compute_ecx
from .semigroup import FiniteInverseSemigroup

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class SemiCharacter:
    """
    A nonzero homomorphism ``E -> {0, 1}``, stored as its support filter in E^x.
    ``mask`` is the bitset of the support over ``nonzero_idempotents`` and fixes
    the enumeration order.
    """

    mask: int
    support: frozenset = field(compare=False)

    @classmethod
    def from_support(cls, semigroup: FiniteInverseSemigroup, support) -> "SemiCharacter":
        support = frozenset(support)
        mask = 0
        for i, p in enumerate(semigroup.nonzero_idempotents):
            if p in support:
                mask |= 1 << i
        return cls(mask, support)

    def __call__(self, p: int) -> int:
        return 1 if p in self.support else 0

    def minimum(self, semigroup: FiniteInverseSemigroup) -> int:
        return semigroup.mul_all(*sorted(self.support))

    def label(self, semigroup: FiniteInverseSemigroup) -> str:
        return f"chi_{semigroup.names[self.minimum(semigroup)]}"

    def to_json(self, semigroup: FiniteInverseSemigroup) -> dict:
        return {
            "label": self.label(semigroup),
            "support": sorted(semigroup.names[p] for p in self.support),
        }


def is_filter(semigroup: FiniteInverseSemigroup, support) -> bool:
    """Nonempty, avoids zero, upward closed and closed under products."""
    allowed = set(semigroup.nonzero_idempotents)
    support = set(support)
    if not support or not support <= allowed:
        return False
    for p in support:
        for q in allowed:
            if semigroup.leq(p, q) and q not in support:
                return False
        for q in support:
            if semigroup.mul(p, q) not in support:
                return False
    return True


def principal(semigroup: FiniteInverseSemigroup, p: int) -> SemiCharacter:
    """``chi_p``, supported on the up-set of ``p``."""
    assert p in semigroup.nonzero_idempotents, f"{semigroup.names[p]} is not a nonzero idempotent"
    return SemiCharacter.from_support(
        semigroup, (q for q in semigroup.nonzero_idempotents if semigroup.leq(p, q))
    )


def _close(semigroup: FiniteInverseSemigroup, support: frozenset, p: int):
    # smallest up- and product-closed set containing support and p, None if it hits zero
    allowed = set(semigroup.nonzero_idempotents)
    result = set(support)
    pending = [p]
    while pending:
        x = pending.pop()
        if x in result:
            continue
        if x not in allowed:
            return None
        result.add(x)
        pending.extend(q for q in allowed if semigroup.leq(x, q))
        pending.extend(semigroup.mul(x, y) for y in list(result))
    return frozenset(result)


def semicharacters(semigroup: FiniteInverseSemigroup) -> list:
    """
    All semicharacters by exhaustive filter search: each nonzero idempotent in
    turn is included (with closure propagation) or excluded (together with
    everything below it). Ordered by support bitset.
    """
    idempotents = semigroup.nonzero_idempotents
    bound = SCALED_CRYSTAL_CONFIG.get("semicharacter_bound", 24)
    if len(idempotents) > bound:
        raise BoundExceededError(len(idempotents), bound, "semicharacters")

    found = []

    def search(i, support, excluded):
        if i == len(idempotents):
            if support:
                found.append(support)
            return
        p = idempotents[i]
        if p in support:
            search(i + 1, support, excluded)
            return
        if p not in excluded:
            closed = _close(semigroup, support, p)
            if closed is not None and not closed & excluded:
                search(i + 1, closed, excluded)
        below = frozenset(q for q in idempotents if semigroup.leq(q, p))
        if not below & support:
            search(i + 1, support, excluded | below)

    search(0, frozenset(), frozenset())
    result = sorted(SemiCharacter.from_support(semigroup, support) for support in found)
    logger.debug(f"{len(result)} semicharacters on {len(idempotents)} nonzero idempotents")
    return result


@dataclass
class BoundaryResult:
    """The boundary set from the complement formula and from the principal one."""

    ecx: frozenset
    complement: list
    principal: list
    contains_principals: bool

    @property
    def agree(self) -> bool:
        return self.complement == self.principal

    @property
    def empty(self) -> bool:
        return not self.complement

    @property
    def lemma_holds(self) -> bool:
        return self.agree and self.contains_principals and self.empty == (not self.ecx)

    def to_json(self, semigroup: FiniteInverseSemigroup) -> dict:
        return {
            "ecx": sorted(semigroup.names[p] for p in self.ecx),
            "boundary": [chi.label(semigroup) for chi in self.complement],
            "principal_formula": [chi.label(semigroup) for chi in self.principal],
            "agree": self.agree,
            "contains_principals": self.contains_principals,
            "empty": self.empty,
        }


def boundary_set(semigroup: FiniteInverseSemigroup, scale: dict, ecx=None) -> BoundaryResult:
    """
    ``Z`` as the semicharacters vanishing off E_c^x, and as the (discrete)
    closure of ``{chi_p : p in E_c^x}``. ``ecx`` overrides the set computed from
    ``scale``.
    """
    ecx_set = frozenset(compute_ecx(semigroup, scale) if ecx is None else ecx)
    omega = semicharacters(semigroup)
    complement = [chi for chi in omega if chi.support <= ecx_set]
    principals = sorted({principal(semigroup, p) for p in ecx_set})
    result = BoundaryResult(
        ecx_set,
        complement,
        principals,
        all(chi in complement for chi in principals),
    )
    if not result.lemma_holds:
        logger.error(f"boundary formulas disagree: {result.to_json(semigroup)}")
    return result
