import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath

from ..exceptions import DivergentError, InputError
from ..monoid import ScaledMonoid, format_rational, parse_rational

logger = logging.getLogger(__name__)


def json_float(value: Optional[float]):
    if value is None:
        return None
    if math.isinf(value):
        return "inf"
    return value


def boltzmann_weight(value: Fraction, beta: float) -> float:
    """``value^-beta`` for an exact rational ``value``."""
    return float(mpmath.power(mpmath.mpf(value.numerator) / value.denominator, -beta))


def class_sum(terms, beta: float, character=None) -> complex:
    """``sum m N^-beta chi(exponent)`` over class terms, in their given order."""
    real, imag = [], []
    for term in terms:
        weight = term.multiplicity * boltzmann_weight(term.value, beta)
        if character is None:
            real.append(weight)
            continue
        value = character(term.exponent)
        real.append(weight * value.real)
        imag.append(weight * value.imag)
    return complex(math.fsum(real), math.fsum(imag))


@dataclass
class ZetaResult:
    beta: float
    cutoff: Fraction
    partial: float
    closed_form: Optional[float]
    tail: float
    rigorous: bool
    classes_used: int
    divergent: bool

    def to_json(self):
        return {
            "beta": self.beta,
            "cutoff": format_rational(self.cutoff),
            "partial": self.partial,
            "closed_form": json_float(self.closed_form),
            "tail": json_float(self.tail),
            "rigorous": self.rigorous,
            "classes_used": self.classes_used,
            "divergent": self.divergent,
        }


def zeta(monoid: ScaledMonoid, beta: float, cutoff) -> ZetaResult:
    """
    The partial sum of ``zeta_N(beta)`` over the classes with ``N <= cutoff``,
    the closed form of the family and a bound for the omitted classes.
    """
    if beta <= 0:
        raise InputError(f"beta must be positive, got {beta}", "zeta")
    cutoff = parse_rational(cutoff)
    abscissa = monoid.convergence_abscissa()
    closed = monoid.zeta_closed_form(beta)
    divergent = beta <= abscissa or (closed is not None and math.isinf(closed))
    e = monoid.identity()
    terms = monoid.class_terms(e, e, cutoff)
    partial = class_sum(terms, beta).real
    if divergent:
        tail, rigorous = math.inf, True
    else:
        tail, rigorous = monoid.zeta_tail_bound(beta, cutoff)
        if not rigorous:
            logger.warning(f"{monoid!r}: tail estimate at beta={beta} is not rigorous")
    return ZetaResult(
        beta,
        cutoff,
        partial,
        closed,
        tail,
        rigorous,
        sum(term.multiplicity for term in terms),
        divergent,
    )


def class_counting_partition(monoid: ScaledMonoid, beta: float, cutoff) -> float:
    """``sum_v c(v) v^-beta`` with ``c(v)`` the number of classes of value ``v``."""
    return math.fsum(count * boltzmann_weight(value, beta) for value, count in monoid.class_counts(cutoff))


@dataclass
class ThresholdResult:
    abscissa: float
    beta_star: Optional[float]

    def to_json(self):
        return {"abscissa": json_float(self.abscissa), "beta_star": self.beta_star}


def beta_threshold(monoid: ScaledMonoid, epsilon: float = 1e-9) -> ThresholdResult:
    """
    Solves ``zeta_N(beta) = 2`` on the closed form by bisection. Families with
    ``zeta_N < 2`` everywhere above the abscissa have no threshold.
    """
    abscissa = monoid.convergence_abscissa()
    if math.isinf(abscissa):
        raise DivergentError(None, abscissa)

    def excess(beta):
        return monoid.zeta_closed_form(float(beta)) - 2

    lo = abscissa + epsilon
    if excess(lo) <= 0:
        logger.info(f"{monoid!r}: zeta stays below 2, no threshold above {abscissa}")
        return ThresholdResult(abscissa, None)
    hi = max(1.0, 2 * abscissa)
    while excess(hi) >= 0:
        hi *= 2
    root = mpmath.findroot(excess, (lo, hi), solver="bisect", verify=False)
    logger.debug(f"{monoid!r}: threshold bracket ({lo}, {hi}) gives {root}")
    return ThresholdResult(abscissa, float(root))
