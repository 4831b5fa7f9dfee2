import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scaled_crystal.exceptions import (
    ConstructionError,
    FamilyMismatchError,
    InputError,
    NonAbelianKernelError,
    NotEquivalentError,
    UndecidedEquivalenceError,
)
from scaled_crystal.monoid import (
    AbelianMonoid,
    AxbMonoid,
    Disjoint,
    FreeMonoid,
    Ideal,
    element_from_json,
    family_from_descriptor,
    format_rational,
    parse_rational,
)

AXB = AxbMonoid()
FREE_23 = FreeMonoid([2, 3])
FREE_22 = FreeMonoid([2, 2])


def axb(b, a):
    return AXB.element((b, a))


def word(*letters):
    return FREE_23.element(letters)


axb_elements = st.builds(lambda b, a: axb(b, a), st.integers(0, 30), st.integers(1, 12))
free_words = st.lists(st.integers(0, 1), max_size=6).map(lambda w: word(*w))


def test_multiply():
    assert FREE_23.multiply(word(0), word(1)) == word(0, 1)
    assert AXB.multiply(axb(0, 2), axb(1, 3)) == axb(2, 6)
    n2 = AbelianMonoid([1, 3])
    assert n2.multiply(n2.element((1, 0)), n2.element((0, 1))) == n2.element((1, 1))


def test_left_divide():
    assert FREE_23.left_divide(word(0), word(0, 1)) == word(1)
    assert FREE_23.left_divide(word(0), word(1, 0)) is None
    assert AXB.left_divide(axb(0, 2), axb(4, 6)) == axb(2, 3)


def test_lcm():
    assert FREE_23.lcm(word(0), word(0, 1)) == Ideal(word(0, 1))
    assert FREE_23.lcm(word(0), word(1)) is Disjoint
    assert AXB.lcm(axb(0, 2), axb(1, 2)) is Disjoint
    assert AXB.lcm(axb(0, 2), axb(1, 3)) == Ideal(axb(4, 6))


def test_scale_and_kernel():
    assert FREE_23.scale_value(word(0, 1)) == 6
    assert AXB.scale_value(axb(7, 4)) == 4
    assert AXB.scale_value(AXB.identity()) == 1
    assert AXB.kernel_member(axb(5, 1))
    assert not AXB.kernel_member(axb(0, 2))
    n2 = AbelianMonoid([1, 3])
    assert n2.kernel_member(n2.element((4, 0)))
    assert not n2.kernel_member(n2.element((0, 1)))


def test_equivalence_examples():
    assert AXB.equivalent_mod_kernel(axb(1, 2), axb(3, 2))
    assert not AXB.equivalent_mod_kernel(axb(1, 2), axb(2, 2))
    mixed = FreeMonoid([1, 2])
    assert mixed.equivalent_mod_kernel(mixed.element((1,)), mixed.element((1, 0, 0)))
    assert not mixed.equivalent_mod_kernel(mixed.element((1,)), mixed.element((0, 1)))


@settings(max_examples=60)
@given(axb_elements)
def test_equivalence_is_reflexive(s):
    assert AXB.equivalent_mod_kernel(s, s)
    assert AXB.solve_pq(s, s) == (AXB.identity(), AXB.identity())


def test_search_agrees_with_decider_on_axb():
    for s, t in [((1, 2), (3, 2)), ((0, 3), (6, 3)), ((4, 2), (0, 2))]:
        assert AXB.search_equivalence(axb(*s), axb(*t))
    assert not AXB.search_equivalence(axb(0, 2), axb(0, 3))


def test_search_is_undecided_without_witness():
    with pytest.raises(UndecidedEquivalenceError):
        FREE_23.search_equivalence(word(0, 1), word(1, 0))


def test_solve_pq_examples():
    p, q = AXB.solve_pq(axb(4, 2), axb(0, 2))
    assert (p, q) == (axb(0, 1), axb(2, 1))
    n2 = AbelianMonoid([1, 2])
    p, q = n2.solve_pq(n2.element((0, 3)), n2.element((5, 3)))
    assert (p, q) == (n2.element((5, 0)), n2.element((0, 0)))
    with pytest.raises(NotEquivalentError):
        AXB.solve_pq(axb(1, 2), axb(2, 2))


def test_class_representatives():
    reps = [r.representative.payload for r in AXB.class_representatives(3)]
    assert reps == [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]
    words = [r.representative.payload for r in FREE_22.class_representatives(4)]
    assert sorted(words) == sorted([(), (0,), (1,), (0, 0), (0, 1), (1, 0), (1, 1)])
    assert [r.representative for r in AXB.class_representatives(1)] == [AXB.identity()]


def test_class_counts():
    assert AXB.class_counts(4) == [(Fraction(a), a) for a in range(1, 5)]
    assert FREE_22.class_counts(4) == [(Fraction(1), 1), (Fraction(2), 2), (Fraction(4), 4)]


def test_generic_classes_match_axb_override():
    generic = super(AxbMonoid, AXB).class_representatives(5)
    assert [r.representative for r in generic] == [r.representative for r in AXB.class_representatives(5)]


def test_scale_condition():
    report = AXB.scale_condition_check(4)
    assert report.passed and report.checked > 0
    assert AbelianMonoid([1, 2]).scale_condition_check(4).passed
    assert FREE_23.scale_condition_check(8).passed
    failure = FreeMonoid([1, 2]).scale_condition_check(2)
    assert not failure.passed
    assert failure.witness["reason"] == "disjoint"


def test_scale_condition_sample():
    # s = (0,2), t = (3,1): r = (4,2) = (0,2)(2,1)
    meet = AXB.lcm(axb(0, 2), axb(3, 1))
    assert meet == Ideal(axb(4, 2))
    assert AXB.left_divide(axb(0, 2), meet.generator) == axb(2, 1)


@settings(max_examples=100)
@given(free_words, free_words)
def test_free_scale_is_multiplicative(s, t):
    assert FREE_23.scale_value(FREE_23.multiply(s, t)) == FREE_23.scale_value(s) * FREE_23.scale_value(t)


@settings(max_examples=100)
@given(axb_elements, axb_elements)
def test_axb_lcm_is_least_common_multiple(s, t):
    meet = AXB.lcm(s, t)
    (b, a), (d, c) = s.payload, t.payload
    if meet is Disjoint:
        assert (d - b) % math.gcd(a, c) != 0
        return
    r = meet.generator
    assert AXB.left_divide(s, r) is not None
    assert AXB.left_divide(t, r) is not None
    assert AXB.scale_value(r) == math.lcm(a, c)


def test_kernel_exponent():
    assert AXB.kernel_exponent(axb(3, 1)) == (3,)
    with pytest.raises(NonAbelianKernelError):
        FreeMonoid([1, 1]).kernel_exponent(FreeMonoid([1, 1]).element((0, 1)))


def test_kernel_only_free_monoid_has_one_class():
    monoid = FreeMonoid([1, 1])
    assert monoid.is_kernel_only
    assert [r.representative for r in monoid.class_representatives(1)] == [monoid.identity()]
    assert [r.representative for r in monoid.class_representatives(5)] == [monoid.identity()]
    mixed = FreeMonoid([1, 1, 3])
    assert [r.representative for r in mixed.class_representatives(2)] == [mixed.identity()]
    with pytest.raises(NonAbelianKernelError):
        mixed.class_representatives(3)
    e = monoid.identity()
    assert [(t.value, t.multiplicity) for t in monoid.class_terms(e, e, 5)] == [(Fraction(1), 1)]
    assert monoid.class_terms(monoid.element((0,)), monoid.element((1,)), 5) == []


def test_enumeration_reaches_long_words_of_small_weight():
    monoid = FreeMonoid([Fraction(11, 10), Fraction(11, 10)])
    elements = monoid.enumerate_elements(2)
    # 1.1**7 <= 2 < 1.1**8, so every word of length at most 7
    assert len(elements) == 2**8 - 1
    assert max(len(x.payload) for x in elements) == 7
    assert all(monoid.scale_value(x) <= 2 for x in elements)
    reps = monoid.class_representatives(2)
    assert {x.payload for x in elements} == {r.representative.payload for r in reps}


def test_construction_errors():
    with pytest.raises(ConstructionError):
        AXB.element((1, 0))
    with pytest.raises(ConstructionError):
        FREE_23.element((2,))
    with pytest.raises(FamilyMismatchError):
        AXB.multiply(axb(0, 1), word(0))


def test_descriptor():
    monoid = family_from_descriptor({"family": "free", "weights": ["2", "5/2"]})
    assert monoid == FreeMonoid([2, Fraction(5, 2)])
    assert family_from_descriptor(monoid.descriptor()) == monoid
    assert element_from_json(AXB, [1, 2]) == axb(1, 2)
    with pytest.raises(InputError):
        family_from_descriptor({"family": "braid"})
    with pytest.raises(InputError):
        element_from_json(AXB, "(1, 2)")


def test_rationals():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert format_rational(Fraction(2)) == "2/1"


def test_abscissa():
    assert FREE_22.convergence_abscissa() == pytest.approx(1.0)
    assert AXB.convergence_abscissa() == 2.0
    assert AbelianMonoid([2]).convergence_abscissa() == 0.0
