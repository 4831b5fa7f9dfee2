import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..exceptions import DivergentError
from ..hull import ZERO
from ..monoid import MonoidElement, ScaledMonoid, format_rational, parse_rational
from .spanning import SpanningElement, spanning_product, unit
from .trace import TraceSpec, exponent_difference, trace_eval
from .zeta import boltzmann_weight, class_sum, json_float

logger = logging.getLogger(__name__)

# float rounding floor added to every allowance
ROUNDING = 1e-12


@dataclass
class KmsResult:
    value: complex
    beta: float
    cutoff: Fraction
    zeta_partial: float
    tail: float
    allowance: float
    classes_used: int
    rigorous: bool
    closed_form: bool

    def to_json(self):
        return {
            "value": {"re": self.value.real, "im": self.value.imag},
            "beta": self.beta,
            "cutoff": format_rational(self.cutoff),
            "zeta": self.zeta_partial,
            "tail": json_float(self.tail),
            "allowance": json_float(self.allowance),
            "classes_used": self.classes_used,
            "rigorous": self.rigorous,
            "closed_form": self.closed_form,
        }


class KmsEngine:
    """
    Low-temperature KMS_beta states of a scaled monoid at fixed truncation.

    ``phi(v_s v_t*) = Z_C^-1 sum_{N(r) <= C, sr ~N tr} N(sr)^-beta tau(v_q v_p*)``
    with ``sr p = tr q``, where ``Z_C`` is the partial zeta sum over the same
    classes. Families whose class data do not depend on ``r`` use the exact
    closed form ``[s ~N t] N(s)^-beta tau(v_q v_p*)`` instead.
    """

    def __init__(self, monoid: ScaledMonoid, beta: float, cutoff, use_closed_form: bool = True) -> None:
        abscissa = monoid.convergence_abscissa()
        if beta <= abscissa:
            raise DivergentError(beta, abscissa)
        self.monoid = monoid
        self.beta = beta
        self.cutoff = parse_rational(cutoff)
        self.rank = monoid.kernel_rank
        self.closed_form = use_closed_form and monoid.has_closed_form_states
        e = monoid.identity()
        terms = monoid.class_terms(e, e, self.cutoff)
        self.classes_used = sum(term.multiplicity for term in terms)
        self.zeta_partial = class_sum(terms, beta).real
        self.tail, self.rigorous = monoid.zeta_tail_bound(beta, self.cutoff)
        if self.closed_form:
            self.allowance = ROUNDING
        else:
            self.allowance = 2 * self.tail / self.zeta_partial + ROUNDING
        logger.info(
            f"KMS engine for {monoid!r} at beta={beta}: {self.classes_used} classes, "
            f"Z_C={self.zeta_partial}, allowance {self.allowance}"
        )

    def __repr__(self) -> str:
        return f"KmsEngine({self.monoid!r}, beta={self.beta}, cutoff={format_rational(self.cutoff)})"

    def character_values(self, trace: TraceSpec, x, shift: Optional[MonoidElement] = None) -> list:
        """``phi_chi(x)`` for each character of ``trace``."""
        trace.check_rank(self.rank)
        if x is ZERO:
            return [0j for _ in trace.weights]
        monoid = self.monoid
        s, t = x.s, x.t
        if monoid.scale_value(s) != monoid.scale_value(t):
            return [0j for _ in trace.weights]
        if self.closed_form:
            if not monoid.equivalent_mod_kernel(s, t):
                return [0j for _ in trace.weights]
            p, q = monoid.solve_pq(s, t)
            weight = boltzmann_weight(monoid.scale_value(s), self.beta)
            return [weight * v for v in trace.character_values(exponent_difference(monoid, q, p))]
        terms = monoid.class_terms(s, t, self.cutoff, shift)
        values = []
        for i in range(len(trace.weights)):
            total = class_sum(terms, self.beta, lambda exponent: trace.character_values(exponent)[i])
            values.append(total / self.zeta_partial)
        return values

    def value(self, trace: TraceSpec, x, shift: Optional[MonoidElement] = None) -> complex:
        return trace.combine(self.character_values(trace, x, shift))

    def result(self, trace: TraceSpec, x) -> KmsResult:
        return KmsResult(
            self.value(trace, x),
            self.beta,
            self.cutoff,
            self.zeta_partial,
            self.tail,
            self.allowance,
            self.classes_used,
            self.rigorous,
            self.closed_form,
        )


def kms_value(monoid: ScaledMonoid, beta: float, trace: TraceSpec, x, cutoff) -> KmsResult:
    return KmsEngine(monoid, beta, cutoff).result(trace, x)


def ground_value(monoid: ScaledMonoid, trace: TraceSpec, x) -> complex:
    """``tau(v_s v_t*)`` when both ``s, t`` lie in ker N, and 0 otherwise."""
    if x is ZERO:
        return 0j
    if not (monoid.kernel_member(x.s) and monoid.kernel_member(x.t)):
        return 0j
    return trace_eval(monoid, trace, x.s, x.t)


def random_spanning(monoid: ScaledMonoid, rng: random.Random, bound=3) -> SpanningElement:
    elements = [x for x in monoid.enumerate_elements(bound) if monoid.scale_value(x) <= parse_rational(bound)]
    return SpanningElement(rng.choice(elements), rng.choice(elements))


@dataclass
class KmsCheckReport:
    name: str
    passed: bool
    samples: int
    max_residual: float
    allowance: float
    witness: Optional[dict] = None
    extra: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "samples": self.samples,
            "max_residual": self.max_residual,
            "allowance": self.allowance,
            "witness": self.witness,
            **self.extra,
        }


def kms_condition_check(engine: KmsEngine, trace: TraceSpec, rng: random.Random, samples: int, bound=3) -> KmsCheckReport:
    """
    ``|phi(yx) - (N(s)/N(t))^-beta phi(xy)|`` for random spanning pairs with
    ``y = v_s v_t*``. Each residual is compared with the truncation error of
    both evaluations.
    """
    monoid = engine.monoid
    report = KmsCheckReport("kms_condition", True, samples, 0.0, engine.allowance)
    pairs = [(unit(monoid), unit(monoid))]
    pairs += [(random_spanning(monoid, rng, bound), random_spanning(monoid, rng, bound)) for _ in range(samples - 1)]
    for x, y in pairs:
        factor = boltzmann_weight(monoid.scale_value(y.s) / monoid.scale_value(y.t), engine.beta)
        left = engine.value(trace, spanning_product(monoid, y, x))
        right = engine.value(trace, spanning_product(monoid, x, y))
        residual = abs(left - factor * right)
        allowance = engine.allowance * (1 + factor)
        report.max_residual = max(report.max_residual, residual)
        report.allowance = max(report.allowance, allowance)
        if residual > allowance and report.passed:
            report.passed = False
            report.witness = {"x": x.to_json(), "y": y.to_json(), "residual": residual}
    logger.info(f"{engine!r}: max KMS residual {report.max_residual} over {samples} pairs")
    return report


def positivity_check(engine: KmsEngine, trace: TraceSpec, rng: random.Random, samples: int, terms: int = 3, bound=3) -> KmsCheckReport:
    """``phi(x* x) >= -allowance`` for random combinations ``x = sum c_i v_si v_ti*``."""
    monoid = engine.monoid
    report = KmsCheckReport("positivity", True, samples, 0.0, engine.allowance)
    minimum = math.inf
    for _ in range(samples):
        elements = [random_spanning(monoid, rng, bound) for _ in range(terms)]
        coefficients = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(terms)]
        total = 0j
        for ci, xi in zip(coefficients, elements):
            for cj, xj in zip(coefficients, elements):
                product = spanning_product(monoid, xi.adjoint(), xj)
                total += ci.conjugate() * cj * engine.value(trace, product)
        scale = sum(abs(c) for c in coefficients) ** 2
        minimum = min(minimum, total.real)
        report.max_residual = max(report.max_residual, abs(total.imag))
        if total.real < -engine.allowance * scale and report.passed:
            report.passed = False
            report.witness = {"elements": [x.to_json() for x in elements], "value": total.real}
    report.extra["minimum"] = minimum
    return report


def zero_temperature_check(engine: KmsEngine, trace: TraceSpec, elements: list, tolerance: float = 1e-6) -> KmsCheckReport:
    """``|phi_beta(x) - ground(x)|`` on the given elements, for large ``beta``."""
    monoid = engine.monoid
    report = KmsCheckReport("zero_temperature", True, len(elements), 0.0, tolerance)
    for x in elements:
        gap = abs(engine.value(trace, x) - ground_value(monoid, trace, x))
        report.max_residual = max(report.max_residual, gap)
        if gap > tolerance and report.passed:
            report.passed = False
            report.witness = {"x": x.to_json(), "gap": gap}
    return report
