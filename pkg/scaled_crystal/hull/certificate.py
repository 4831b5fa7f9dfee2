import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..monoid import format_rational, parse_rational
from .hull import ZERO, InverseHull

logger = logging.getLogger(__name__)


@dataclass
class HullCertificate:
    family: str
    passed: bool
    bound: str
    ecx: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)
    closure_checked: int = 0
    failure: Optional[dict] = None

    def to_json(self):
        return {
            "family": self.family,
            "passed": self.passed,
            "bound": self.bound,
            "ecx": self.ecx,
            "witnesses": self.witnesses,
            "closure_checked": self.closure_checked,
            "failure": self.failure,
        }


@dataclass
class HullSampleReport:
    name: str
    passed: bool
    samples: int
    hits: int
    failure: Optional[dict] = None

    def to_json(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "samples": self.samples,
            "hits": self.hits,
            "failure": self.failure,
        }


def crystal_certificate_hull(hull: InverseHull, bound) -> HullCertificate:
    """
    Certifies on all idempotents ``p_aS`` with ``N(a) <= bound`` that ``p_aS`` lies
    in E_c^x exactly when ``a`` is in ker N, and that kernel pairs are closed under
    composition. Every ``g = x a^-1`` with ``N(x) <= bound`` is tried, which covers
    all ``g`` with ``g^-1 g = p_aS`` and ``N_I(g) < 1``. The reported witness avoids
    ``e a^-1`` when another one exists.
    """
    monoid = hull.monoid
    bound = parse_rational(bound)
    elements = [x for x in monoid.enumerate_elements(bound) if monoid.scale_value(x) <= bound]
    certificate = HullCertificate(monoid.family, True, format_rational(bound))
    e = monoid.identity()
    logger.info(f"hull certificate for {monoid!r}: {len(elements)} idempotents")

    for a in elements:
        p = hull.projection(a)
        found = []
        for x in elements:
            g = hull.pair(x, a)
            assert hull.idempotent_of(g) == p
            if hull.hull_scale(g) < 1:
                found.append(g)
        witness = next((g for g in found if g.a != e), found[0] if found else None)
        member = hull.ecx_member_hull(p)
        if member != (witness is None) or member != monoid.kernel_member(a):
            certificate.passed = False
            certificate.failure = {
                "idempotent": p.to_json(),
                "member": member,
                "witness": None if witness is None else witness.to_json(),
            }
            return certificate
        if member:
            certificate.ecx.append(p.to_json())
        else:
            certificate.witnesses[repr(a)] = {
                "g": witness.to_json(),
                "scale": format_rational(hull.hull_scale(witness)),
                "count": len(found),
            }

    kernel = [x for x in elements if monoid.kernel_member(x)]
    pairs = [hull.pair(a, b) for a in kernel for b in kernel]
    for x in pairs:
        for y in pairs:
            certificate.closure_checked += 1
            z = hull.compose(x, y)
            if z is ZERO:
                continue
            if not (monoid.kernel_member(z.a) and monoid.kernel_member(z.b)):
                certificate.passed = False
                certificate.failure = {"x": x.to_json(), "y": y.to_json(), "product": z.to_json()}
                return certificate
    return certificate


def _generators(hull: InverseHull, bound) -> list:
    monoid = hull.monoid
    elements = [
        x for x in monoid.enumerate_elements(bound)
        if monoid.scale_value(x) <= bound and x != monoid.identity()
    ]
    translations = [hull.translation(x) for x in elements]
    return translations + [t.inverse() for t in translations]


def scale_consistency_check(hull: InverseHull, rng: random.Random, samples: int, bound=4, length=5) -> HullSampleReport:
    """
    Composes random words in the translations and their inverses, tracking the
    product of the factor scales. Whenever a composite is an idempotent the
    accumulated scale must be exactly 1, and it must equal ``N_I`` of the
    composite in all nonzero cases.
    """
    generators = _generators(hull, parse_rational(bound))
    hits = 0
    for i in range(samples):
        word = [rng.choice(generators) for _ in range(rng.randint(1, length))]
        if i % 2:
            word = word + [g.inverse() for g in reversed(word)]
        result = word[0]
        accumulated = hull.hull_scale(word[0])
        for g in word[1:]:
            result = hull.compose(result, g)
            if result is ZERO:
                break
            accumulated *= hull.hull_scale(g)
        if result is ZERO:
            continue
        if accumulated != hull.hull_scale(result) or (result.is_idempotent and accumulated != 1):
            failure = {
                "word": [g.to_json() for g in word],
                "result": result.to_json(),
                "accumulated": format_rational(accumulated),
            }
            return HullSampleReport("scale_consistency", False, i + 1, hits, failure)
        if result.is_idempotent:
            hits += 1
    logger.info(f"{hull!r}: {hits} of {samples} composites were idempotents with scale 1")
    return HullSampleReport("scale_consistency", True, samples, hits)


def hull_axioms_check(hull: InverseHull, rng: random.Random, samples: int, bound=4) -> HullSampleReport:
    """Associativity, ``x x^-1 x = x`` and commuting idempotents on random samples."""
    monoid = hull.monoid
    elements = [x for x in monoid.enumerate_elements(bound) if monoid.scale_value(x) <= bound]
    for i in range(samples):
        x, y, z = (hull.pair(rng.choice(elements), rng.choice(elements)) for _ in range(3))
        left = hull.compose(hull.compose(x, y), z)
        right = hull.compose(x, hull.compose(y, z))
        if left != right:
            return HullSampleReport(
                "hull_axioms", False, i + 1, 0,
                {"x": x.to_json(), "y": y.to_json(), "z": z.to_json(), "reason": "associativity"},
            )
        if hull.compose_all(x, x.inverse(), x) != x:
            return HullSampleReport("hull_axioms", False, i + 1, 0, {"x": x.to_json(), "reason": "x x^-1 x"})
        p, q = hull.idempotent_of(x), hull.idempotent_of(y)
        if hull.compose(p, q) != hull.compose(q, p):
            return HullSampleReport(
                "hull_axioms", False, i + 1, 0,
                {"p": p.to_json(), "q": q.to_json(), "reason": "idempotents commute"},
            )
    return HullSampleReport("hull_axioms", True, samples, samples)
