import logging
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from ..exceptions import InputError
from ..monoid import MonoidElement, ScaledMonoid, format_rational, parse_rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TraceSpec:
    """
    A finite mixture ``sum_i w_i chi_theta_i`` of characters of the group
    generated by an abelian ker N. Angles are in turns, so
    ``chi_theta(d) = exp(2 pi i <theta, d>)``.
    """

    weights: tuple
    angles: tuple

    def __post_init__(self):
        if not self.weights or len(self.weights) != len(self.angles):
            raise InputError("a trace needs one angle vector per weight", "TraceSpec")
        if any(w <= 0 for w in self.weights) or sum(self.weights) != 1:
            raise InputError(f"weights must be positive and sum to 1, got {self.weights}", "TraceSpec")
        if len({len(theta) for theta in self.angles}) != 1:
            raise InputError("angle vectors differ in dimension", "TraceSpec")

    @classmethod
    def character(cls, *theta) -> "TraceSpec":
        return cls((Fraction(1),), (tuple(parse_rational(a) for a in theta),))

    @classmethod
    def trivial(cls, rank: int = 0) -> "TraceSpec":
        return cls((Fraction(1),), ((Fraction(0),) * rank,))

    @classmethod
    def mixture(cls, *components) -> "TraceSpec":
        """``mixture((w1, trace1), (w2, trace2), ...)``."""
        weights, angles = [], []
        for w, trace in components:
            for v, theta in zip(trace.weights, trace.angles):
                weights.append(parse_rational(w) * v)
                angles.append(theta)
        return cls(tuple(weights), tuple(angles))

    @classmethod
    def from_json(cls, data) -> "TraceSpec":
        try:
            weights = tuple(parse_rational(w) for w in data["weights"])
            angles = tuple(tuple(parse_rational(a) for a in theta) for theta in data["angles"])
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
            raise InputError(f"malformed trace: {e!r}", "TraceSpec.from_json") from e
        return cls(weights, angles)

    def to_json(self):
        return {
            "weights": [format_rational(w) for w in self.weights],
            "angles": [[format_rational(a) for a in theta] for theta in self.angles],
        }

    @property
    def dimension(self) -> int:
        return len(self.angles[0])

    def check_rank(self, rank: int) -> None:
        if self.dimension != rank and any(a for theta in self.angles for a in theta):
            raise InputError(
                f"trace angles have dimension {self.dimension}, ker N has rank {rank}", "TraceSpec"
            )

    def character_values(self, exponent: tuple) -> list:
        """``chi_theta_i(exponent)`` for every component, exact at half-integer turns."""
        values = []
        for theta in self.angles:
            turns = sum((a * d for a, d in zip(theta, exponent)), Fraction(0)) % 1
            x = 2 * mpmath.mpf(turns.numerator) / turns.denominator
            values.append(complex(float(mpmath.cospi(x)), float(mpmath.sinpi(x))))
        return values

    def combine(self, values: list) -> complex:
        return sum(float(w) * v for w, v in zip(self.weights, values))

    def evaluate(self, exponent: tuple) -> complex:
        return self.combine(self.character_values(exponent))


def exponent_difference(monoid: ScaledMonoid, q: MonoidElement, p: MonoidElement) -> tuple:
    return tuple(a - b for a, b in zip(monoid.kernel_exponent(q), monoid.kernel_exponent(p)))


def trace_eval(monoid: ScaledMonoid, trace: TraceSpec, q: MonoidElement, p: MonoidElement) -> complex:
    """``tau(v_q v_p*)`` for ``q, p`` in ker N; raises ``NonKernelError`` otherwise."""
    trace.check_rank(monoid.kernel_rank)
    return trace.evaluate(exponent_difference(monoid, q, p))
