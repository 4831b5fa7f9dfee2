import math
import random
from fractions import Fraction

import pytest

from scaled_crystal.exceptions import DivergentError, InputError, NonAbelianKernelError, NonKernelError
from scaled_crystal.hull import ZERO
from scaled_crystal.kms import (
    KmsEngine,
    SpanningElement,
    TraceSpec,
    beta_threshold,
    class_counting_partition,
    ground_value,
    isometry,
    kms_condition_check,
    kms_value,
    positivity_check,
    random_spanning,
    spanning_product,
    trace_eval,
    unit,
    zero_temperature_check,
    zeta,
)
from scaled_crystal.monoid import AbelianMonoid, AxbMonoid, FreeMonoid

AXB = AxbMonoid()
FREE = FreeMonoid([2, 2])
THETA_0 = TraceSpec.character(0)
THETA_HALF = TraceSpec.character(Fraction(1, 2))


def axb(b, a):
    return AXB.element((b, a))


def word(*letters):
    return FREE.element(letters)


def v(s, t):
    return SpanningElement(s, t)


def test_spanning_product_free():
    e = FREE.identity()
    assert spanning_product(FREE, v(word(0), e), v(word(0, 1), word(1))) == v(word(0, 0, 1), word(1))
    assert spanning_product(FREE, v(e, word(0)), v(word(1), e)) is ZERO
    assert spanning_product(FREE, ZERO, unit(FREE)) is ZERO


def test_spanning_product_axb():
    x = v(axb(0, 1), axb(0, 2))
    y = v(axb(1, 3), axb(0, 1))
    assert spanning_product(AXB, x, y) == v(axb(2, 3), axb(1, 2))


def test_trace_eval():
    assert trace_eval(AXB, THETA_0, axb(5, 1), axb(2, 1)) == pytest.approx(1)
    assert trace_eval(AXB, THETA_HALF, axb(1, 1), axb(0, 1)) == pytest.approx(-1)
    mixture = TraceSpec.mixture((Fraction(1, 2), THETA_0), (Fraction(1, 2), THETA_HALF))
    assert abs(trace_eval(AXB, mixture, axb(1, 1), axb(0, 1))) < 1e-12
    with pytest.raises(NonKernelError):
        trace_eval(AXB, THETA_0, axb(0, 2), axb(0, 1))


def test_trace_spec_validation():
    with pytest.raises(InputError):
        TraceSpec((Fraction(1, 2),), ((Fraction(0),),))
    with pytest.raises(InputError):
        TraceSpec.character(Fraction(1, 2), Fraction(1, 3)).check_rank(1)
    trace = TraceSpec.from_json({"weights": ["1/3", "2/3"], "angles": [["0"], ["1/4"]]})
    assert TraceSpec.from_json(trace.to_json()) == trace


def test_ground_value():
    assert ground_value(AXB, THETA_HALF, v(axb(2, 1), axb(1, 1))) == pytest.approx(-1)
    assert ground_value(AXB, THETA_0, v(axb(0, 2), axb(0, 2))) == 0
    assert ground_value(AXB, THETA_0, unit(AXB)) == pytest.approx(1)
    assert ground_value(AXB, THETA_0, ZERO) == 0


def test_zeta_free_closed_form():
    result = zeta(FREE, 3.0, 2**12)
    assert result.closed_form == pytest.approx(4 / 3, abs=1e-12)
    assert result.rigorous
    assert result.closed_form - result.partial <= result.tail + 1e-12
    assert result.partial == pytest.approx(4 / 3, abs=1e-3)


def test_zeta_axb():
    result = zeta(AXB, 3.0, "10000/1")
    assert result.partial == pytest.approx(math.pi**2 / 6, abs=1e-3)
    assert result.closed_form == pytest.approx(1.6449340668, abs=1e-9)
    assert result.tail == pytest.approx(1e-4)
    assert result.classes_used == 10000 * 10001 // 2


def test_zeta_kernel_only():
    result = zeta(FreeMonoid([1]), 2.0, 10)
    assert result.partial == 1.0
    assert result.closed_form == 1.0


def test_zeta_two_kernel_letters():
    monoid = FreeMonoid([1, 1])
    result = zeta(monoid, 2.0, 10)
    assert result.partial == 1.0
    assert result.closed_form == 1.0
    assert result.classes_used == 1
    assert not result.divergent
    with pytest.raises(NonAbelianKernelError):
        KmsEngine(monoid, 2.0, 10)


def test_zeta_divergent_flag():
    assert zeta(AXB, 2.0, 100).divergent
    assert zeta(FREE, 0.5, 16).divergent
    with pytest.raises(InputError):
        zeta(AXB, 0.0, 10)


def test_beta_threshold():
    assert beta_threshold(FREE).beta_star == pytest.approx(2.0, abs=1e-6)
    assert 2.72 <= beta_threshold(AXB).beta_star <= 2.74
    assert beta_threshold(AbelianMonoid([2])).beta_star == pytest.approx(1.0, abs=1e-6)
    assert beta_threshold(AXB).abscissa == 2.0
    with pytest.raises(DivergentError):
        beta_threshold(FreeMonoid([1, 2]))


def test_class_counting_partition():
    beta = 3.0
    expected = 1 + 2 * 2**-beta + 3 * 3**-beta
    assert class_counting_partition(AXB, beta, 3) == pytest.approx(expected, rel=1e-14)
    for monoid, cutoff in [(AXB, 500), (FREE, 2**10), (AbelianMonoid([1, 2, 3]), 200)]:
        partial = zeta(monoid, beta, cutoff).partial
        assert class_counting_partition(monoid, beta, cutoff) == pytest.approx(partial, rel=1e-12)


def test_kms_normalization():
    for monoid, trace in [(FREE, TraceSpec.trivial(0)), (AXB, THETA_HALF), (AbelianMonoid([1, 2]), THETA_0)]:
        assert kms_value(monoid, 3.0, trace, unit(monoid), 500).value == 1


def test_kms_value_free():
    result = kms_value(FREE, 3.0, TraceSpec.trivial(0), v(word(0), word(0)), 2**10)
    assert result.value == pytest.approx(0.125)
    assert result.closed_form


def test_kms_value_axb():
    result = kms_value(AXB, 3.0, THETA_0, isometry(AXB, axb(1, 1)), 10000)
    assert result.value.real == pytest.approx(1 / (math.pi**2 / 6), abs=1e-3)
    assert not result.closed_form
    assert result.classes_used == 10000 * 10001 // 2


def test_kms_affinity():
    engine = KmsEngine(AXB, 3.0, 300)
    tau_1, tau_2 = THETA_0, TraceSpec.character(Fraction(1, 3))
    mixture = TraceSpec.mixture((Fraction(1, 4), tau_1), (Fraction(3, 4), tau_2))
    for x in [v(axb(1, 1), axb(0, 1)), v(axb(4, 2), axb(0, 2)), v(axb(7, 3), axb(1, 3))]:
        expected = 0.25 * engine.value(tau_1, x) + 0.75 * engine.value(tau_2, x)
        assert abs(engine.value(mixture, x) - expected) < 1e-12


def test_kms_gauge_invariance():
    engine = KmsEngine(AXB, 3.0, 200)
    assert engine.value(THETA_0, v(axb(0, 2), AXB.identity())) == 0
    free_engine = KmsEngine(FREE, 3.0, 64)
    assert free_engine.value(TraceSpec.trivial(0), v(word(0, 1), word(0))) == 0


def test_kms_representative_independence():
    engine = KmsEngine(AXB, 3.0, 300)
    x = v(axb(1, 2), axb(3, 2))
    base = engine.value(THETA_HALF, x)
    shifted = engine.value(THETA_HALF, x, shift=axb(2, 1))
    assert abs(base - shifted) <= engine.allowance


def test_kms_divergent():
    with pytest.raises(DivergentError):
        KmsEngine(AXB, 2.0, 100)
    with pytest.raises(DivergentError):
        KmsEngine(FreeMonoid([1, 2]), 5.0, 10)


def test_kms_condition_free():
    engine = KmsEngine(FREE, 3.0, 2**10)
    report = kms_condition_check(engine, TraceSpec.trivial(0), random.Random(1), 100)
    assert report.passed, report.witness
    assert report.max_residual <= report.allowance


def test_kms_condition_axb():
    engine = KmsEngine(AXB, 3.0, 2000)
    report = kms_condition_check(engine, THETA_HALF, random.Random(2), 30)
    assert report.passed, report.witness
    assert engine.allowance == pytest.approx(2 * engine.tail / engine.zeta_partial + 1e-12)


def test_positivity():
    engine = KmsEngine(AbelianMonoid([1, 2]), 1.5, 2**8)
    report = positivity_check(engine, THETA_HALF, random.Random(3), 20)
    assert report.passed, report.witness
    assert report.extra["minimum"] >= -engine.allowance * 100


def test_zero_temperature_limit():
    rng = random.Random(4)
    engine = KmsEngine(AXB, 60.0, 100)
    elements = [random_spanning(AXB, rng) for _ in range(30)]
    elements.append(v(axb(2, 1), axb(1, 1)))
    report = zero_temperature_check(engine, THETA_HALF, elements)
    assert report.passed, report.witness


def test_kms_result_json():
    result = kms_value(AXB, 3.0, THETA_0, unit(AXB), 50)
    data = result.to_json()
    assert data["value"] == {"re": 1.0, "im": 0.0}
    assert data["cutoff"] == "50/1"
    assert data["rigorous"] is True
