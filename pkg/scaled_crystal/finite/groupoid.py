import logging
from dataclasses import dataclass, field
from typing import Optional

from .crystal import crystal
from .semicharacter import SemiCharacter, boundary_set, is_filter, semicharacters
from .semigroup import FiniteInverseSemigroup

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class GroupoidArrow:
    """The germ ``[g, chi]``, stored with the least element index of its class."""

    element: int
    source: SemiCharacter

    def label(self, semigroup: FiniteInverseSemigroup) -> str:
        return f"[{semigroup.names[self.element]},{self.source.label(semigroup)}]"


class PatersonGroupoid:
    """
    Germs ``[g, chi]`` with ``chi(g^-1 g) = 1`` over a set of semicharacters.
    Arrows whose range leaves ``objects`` are dropped, so passing a subset of
    the semicharacter space yields the restricted groupoid.
    """

    def __init__(self, semigroup: FiniteInverseSemigroup, objects=None) -> None:
        self.semigroup = semigroup
        if objects is None:
            objects = semicharacters(semigroup)
        self.objects = tuple(sorted(objects))
        self._object_set = set(self.objects)
        arrows = set()
        for chi in self.objects:
            for g in semigroup.nonzero:
                if chi(semigroup.source(g)) and self.act(g, chi) in self._object_set:
                    arrows.add(self.germ(g, chi))
        self.arrows = tuple(sorted(arrows))
        self._arrow_set = set(self.arrows)

    def __len__(self) -> int:
        return len(self.arrows)

    def __contains__(self, arrow) -> bool:
        return arrow in self._arrow_set

    def act(self, g: int, chi: SemiCharacter) -> SemiCharacter:
        """``g.chi``, the semicharacter ``q -> chi(g^-1 q g)``."""
        s = self.semigroup
        g_inv = s.inverse(g)
        return SemiCharacter.from_support(
            s, (q for q in s.nonzero_idempotents if chi(s.mul_all(g_inv, q, g)))
        )

    def germ(self, g: int, chi: SemiCharacter) -> GroupoidArrow:
        s = self.semigroup
        assert chi(s.source(g)), f"{s.names[g]} is not defined at {chi.label(s)}"
        for h in s.nonzero:
            if not chi(s.source(h)):
                continue
            if any(s.mul(g, p) == s.mul(h, p) for p in chi.support):
                return GroupoidArrow(h, chi)
        raise AssertionError("germ class without representative")

    def range(self, x: GroupoidArrow) -> SemiCharacter:
        return self.act(x.element, x.source)

    def unit(self, chi: SemiCharacter) -> GroupoidArrow:
        return self.germ(min(chi.support), chi)

    def inverse(self, x: GroupoidArrow) -> GroupoidArrow:
        return self.germ(self.semigroup.inverse(x.element), self.range(x))

    def composable(self, x: GroupoidArrow, y: GroupoidArrow) -> bool:
        return x.source == self.range(y)

    def compose(self, x: GroupoidArrow, y: GroupoidArrow) -> Optional[GroupoidArrow]:
        """``[g, chi][h, psi] = [gh, psi]`` when ``chi = h.psi``, else ``None``."""
        if not self.composable(x, y):
            return None
        return self.germ(self.semigroup.mul(x.element, y.element), y.source)

    def verify(self) -> "GroupoidReport":
        s = self.semigroup
        report = GroupoidReport(True, len(self.objects), len(self.arrows))

        def fail(reason, *arrows):
            report.passed = False
            report.failure = {"reason": reason, "arrows": [x.label(s) for x in arrows]}
            return report

        for x in self.arrows:
            source, target = x.source, self.range(x)
            if source not in self._object_set or target not in self._object_set:
                return fail("endpoint outside the unit space", x)
            x_inv = self.inverse(x)
            if self.compose(x, x_inv) != self.unit(target):
                return fail("x x^-1 is not the unit at the range", x)
            if self.compose(x_inv, x) != self.unit(source):
                return fail("x^-1 x is not the unit at the source", x)
            if self.compose(self.unit(target), x) != x or self.compose(x, self.unit(source)) != x:
                return fail("unit law", x)
        for x in self.arrows:
            for y in self.arrows:
                if not self.composable(x, y):
                    continue
                xy = self.compose(x, y)
                if xy not in self._arrow_set:
                    return fail("product outside the groupoid", x, y)
                for z in self.arrows:
                    if self.composable(y, z) and self.compose(xy, z) != self.compose(x, self.compose(y, z)):
                        return fail("associativity", x, y, z)
        return report


@dataclass
class GroupoidReport:
    passed: bool
    objects: int
    arrows: int
    failure: Optional[dict] = None

    def to_json(self):
        return {
            "passed": self.passed,
            "objects": self.objects,
            "arrows": self.arrows,
            "failure": self.failure,
        }


def paterson(semigroup: FiniteInverseSemigroup, objects=None) -> PatersonGroupoid:
    return PatersonGroupoid(semigroup, objects)


@dataclass
class RestrictionCertificate:
    passed: bool
    restricted_arrows: int = 0
    crystal_arrows: int = 0
    mapping: list = field(default_factory=list)
    failure: Optional[dict] = None

    def to_json(self):
        return {
            "passed": self.passed,
            "restricted_arrows": self.restricted_arrows,
            "crystal_arrows": self.crystal_arrows,
            "mapping": self.mapping,
            "failure": self.failure,
        }


def restriction_iso_certificate(semigroup: FiniteInverseSemigroup, scale: dict) -> RestrictionCertificate:
    """
    Compares the Paterson groupoid of ``I`` restricted to the boundary set with
    the Paterson groupoid of the crystal through the canonical map: a
    semicharacter of I_c extends by zero to one of I and ``[g, psi]`` goes to
    ``[g, psi~]``. Checks that the map is well defined, bijective, preserves
    ranges and preserves composition.
    """
    result = crystal(semigroup, scale)
    cs = result.semigroup
    boundary = boundary_set(semigroup, scale).complement
    restricted = paterson(semigroup, boundary)
    crystal_groupoid = paterson(cs)
    certificate = RestrictionCertificate(True, len(restricted), len(crystal_groupoid))
    boundary_set_ = set(boundary)

    def fail(reason, **witness):
        certificate.passed = False
        certificate.failure = {"reason": reason, **witness}
        logger.info(f"restriction certificate fails: {certificate.failure}")
        return certificate

    extended = {}
    for psi in crystal_groupoid.objects:
        support = frozenset(result.origin[p] for p in psi.support)
        if not is_filter(semigroup, support):
            return fail("extension by zero is not a semicharacter", object=psi.label(cs))
        chi = SemiCharacter.from_support(semigroup, support)
        if chi not in boundary_set_:
            return fail("extension lies outside the boundary set", object=psi.label(cs))
        extended[psi] = chi

    # every representative pair, not only canonical ones, must land in the same class
    mapping = {}
    for psi in crystal_groupoid.objects:
        for h in cs.nonzero:
            if not psi(cs.source(h)):
                continue
            x = crystal_groupoid.germ(h, psi)
            image = restricted.germ(result.origin[h], extended[psi])
            if image not in restricted:
                return fail("image is not a restricted arrow", arrow=x.label(cs))
            if mapping.setdefault(x, image) != image:
                return fail("map is not well defined", arrow=x.label(cs), pair=cs.names[h])

    if len(mapping) != len(crystal_groupoid):
        return fail("not every crystal arrow is mapped")
    if len(set(mapping.values())) != len(mapping):
        return fail("map is not injective")
    if set(mapping.values()) != set(restricted.arrows):
        missing = sorted(set(restricted.arrows) - set(mapping.values()))
        return fail("map is not surjective", arrow=missing[0].label(semigroup))

    for x, image in mapping.items():
        if restricted.range(image) != extended[crystal_groupoid.range(x)]:
            return fail("range not preserved", arrow=x.label(cs))
        for y in crystal_groupoid.arrows:
            if not crystal_groupoid.composable(x, y):
                continue
            if mapping[crystal_groupoid.compose(x, y)] != restricted.compose(image, mapping[y]):
                return fail("composition not preserved", x=x.label(cs), y=y.label(cs))

    certificate.mapping = [
        {"crystal": x.label(cs), "restricted": mapping[x].label(semigroup)}
        for x in crystal_groupoid.arrows
    ]
    return certificate
