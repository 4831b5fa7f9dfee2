import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scaled_crystal.exceptions import FamilyMismatchError, NotIdempotentError, ZeroScaleError
from scaled_crystal.hull import (
    ZERO,
    HullElement,
    InverseHull,
    crystal_certificate_hull,
    hull_axioms_check,
    scale_consistency_check,
)
from scaled_crystal.monoid import AbelianMonoid, AxbMonoid, FreeMonoid

AXB = AxbMonoid()
AXB_HULL = InverseHull(AXB)
FREE = FreeMonoid([2, 3])
FREE_HULL = InverseHull(FREE)


def axb(b, a):
    return AXB.element((b, a))


def word(*letters):
    return FREE.element(letters)


axb_elements = st.builds(lambda b, a: axb(b, a), st.integers(0, 12), st.integers(1, 6))
axb_pairs = st.builds(lambda a, b: AXB_HULL.pair(a, b), axb_elements, axb_elements)


def test_compose_free():
    x, y = word(0), word(1)
    e = FREE.identity()
    assert FREE_HULL.compose(FREE_HULL.translation(x), FREE_HULL.translation(y)) == HullElement(word(0, 1), e)
    assert FREE_HULL.compose(FREE_HULL.pair(x, y), FREE_HULL.pair(y, x)) == FREE_HULL.projection(x)
    # aS and bS are disjoint
    assert FREE_HULL.compose(FREE_HULL.pair(e, x), FREE_HULL.pair(y, e)) is ZERO


def test_compose_axb():
    x = AXB_HULL.pair(axb(0, 1), axb(0, 2))
    y = AXB_HULL.pair(axb(1, 3), axb(0, 1))
    assert AXB_HULL.compose(x, y) == HullElement(axb(2, 3), axb(1, 2))


def test_inverse_and_idempotents():
    x = AXB_HULL.pair(axb(1, 2), axb(0, 3))
    assert AXB_HULL.inverse(x) == HullElement(axb(0, 3), axb(1, 2))
    assert AXB_HULL.idempotent_of(x) == AXB_HULL.projection(axb(0, 3))
    assert AXB_HULL.range_idempotent(x) == AXB_HULL.projection(axb(1, 2))
    assert AXB_HULL.inverse(ZERO) is ZERO
    assert AXB_HULL.compose(x, ZERO) is ZERO


def test_from_inverse_form():
    # s^-1 t with sS ∩ tS = rS
    assert AXB_HULL.from_inverse_form(axb(0, 2), axb(1, 2)) is ZERO
    assert AXB_HULL.from_inverse_form(axb(0, 2), axb(1, 3)) == HullElement(axb(2, 3), axb(1, 2))


def test_hull_scale():
    assert AXB_HULL.hull_scale(AXB_HULL.projection(axb(3, 4))) == 1
    assert AXB_HULL.hull_scale(AXB_HULL.pair(axb(0, 2), axb(0, 1))) == 2
    assert AXB_HULL.hull_scale(AXB_HULL.pair(axb(0, 1), axb(0, 2))) == Fraction(1, 2)
    with pytest.raises(ZeroScaleError):
        AXB_HULL.hull_scale(ZERO)


def test_ecx_member_hull():
    assert AXB_HULL.ecx_member_hull(AXB_HULL.projection(axb(3, 1)))
    assert not AXB_HULL.ecx_member_hull(AXB_HULL.projection(axb(0, 2)))
    trivial = InverseHull(AbelianMonoid([1, 1]))
    n = trivial.monoid
    assert all(trivial.ecx_member_hull(trivial.projection(x)) for x in n.enumerate_elements(3))
    with pytest.raises(NotIdempotentError):
        AXB_HULL.ecx_member_hull(AXB_HULL.pair(axb(0, 2), axb(0, 1)))


def test_family_mismatch():
    with pytest.raises(FamilyMismatchError):
        AXB_HULL.compose(FREE_HULL.projection(word(0)), AXB_HULL.projection(axb(0, 1)))


@settings(max_examples=100)
@given(axb_pairs, axb_pairs)
def test_hull_scale_is_multiplicative(x, y):
    z = AXB_HULL.compose(x, y)
    if z is not ZERO:
        assert AXB_HULL.hull_scale(z) == AXB_HULL.hull_scale(x) * AXB_HULL.hull_scale(y)


@settings(max_examples=60)
@given(axb_pairs, axb_pairs, axb_pairs)
def test_compose_is_associative(x, y, z):
    left = AXB_HULL.compose(AXB_HULL.compose(x, y), z)
    right = AXB_HULL.compose(x, AXB_HULL.compose(y, z))
    assert left == right


def test_crystal_certificate_axb():
    certificate = crystal_certificate_hull(AXB_HULL, 6)
    assert certificate.passed
    witness = certificate.witnesses[repr(axb(0, 2))]
    # x a^-1 with x = (1, 1), not the identity
    assert witness == {"g": {"a": [1, 1], "b": [0, 2]}, "scale": "1/2", "count": 7}
    assert {"a": [3, 1], "b": [3, 1]} in certificate.ecx
    assert certificate.closure_checked > 0


def test_crystal_certificate_free():
    certificate = crystal_certificate_hull(FREE_HULL, 8)
    assert certificate.passed
    assert certificate.ecx == [FREE_HULL.projection(FREE.identity()).to_json()]
    # N(0) = 2 < 3 = N(1)
    assert certificate.witnesses[repr(FREE.element((1,)))] == {"g": {"a": [0], "b": [1]}, "scale": "2/3", "count": 2}
    assert certificate.witnesses[repr(FREE.element((0,)))] == {"g": {"a": [], "b": [0]}, "scale": "1/2", "count": 1}


def test_crystal_certificate_abelian():
    hull = InverseHull(AbelianMonoid([1, 2]))
    certificate = crystal_certificate_hull(hull, 4)
    assert certificate.passed
    assert certificate.ecx
    assert all(p["a"][1] == 0 for p in certificate.ecx)


@pytest.mark.parametrize("hull", [AXB_HULL, FREE_HULL, InverseHull(AbelianMonoid([1, 2]))], ids=repr)
def test_sampled_checks(hull):
    rng = random.Random(7)
    consistency = scale_consistency_check(hull, rng, 200)
    axioms = hull_axioms_check(hull, rng, 200)
    assert consistency.passed, consistency.failure
    assert axioms.passed, axioms.failure
    assert consistency.samples == 200
