import logging
import itertools
from fractions import Fraction
from typing import Optional

from ..exceptions import ConstructionError, NotEquivalentError
from .element import ABELIAN, ClassRep, MonoidElement, parse_rational
from .family import ScaledMonoid

logger = logging.getLogger(__name__)


class AbelianMonoid(ScaledMonoid):
    """N^k with N(v) = prod w_i^v_i; ideals always meet in the componentwise max."""

    family = ABELIAN

    def __init__(self, weights) -> None:
        super().__init__(weights)
        self.kernel_coordinates = tuple(i for i, w in enumerate(self.weights) if w == 1)
        self.scaled_coordinates = tuple(i for i, w in enumerate(self.weights) if w != 1)

    def _validate_payload(self, payload: tuple) -> tuple:
        if len(payload) != len(self.weights) or any(
            not isinstance(v, int) or v < 0 for v in payload
        ):
            raise ConstructionError(
                f"expected {len(self.weights)} nonnegative integers, got {payload!r}",
                "AbelianMonoid.element",
            )
        return payload

    def _identity_payload(self) -> tuple:
        return (0,) * len(self.weights)

    def _multiply(self, left: tuple, right: tuple) -> tuple:
        return tuple(x + y for x, y in zip(left, right))

    def _left_divide(self, left: tuple, target: tuple) -> Optional[tuple]:
        quotient = tuple(y - x for x, y in zip(left, target))
        if any(v < 0 for v in quotient):
            return None
        return quotient

    def _lcm(self, left: tuple, right: tuple) -> Optional[tuple]:
        return tuple(max(x, y) for x, y in zip(left, right))

    def _scale(self, payload: tuple) -> Fraction:
        value = Fraction(1)
        for v, w in zip(payload, self.weights):
            value *= w**v
        return value

    def _kernel_exponent(self, payload: tuple) -> tuple:
        return tuple(payload[i] for i in self.kernel_coordinates)

    @property
    def has_closed_form_states(self) -> bool:
        return True

    def equivalent_mod_kernel(self, s: MonoidElement, t: MonoidElement) -> bool:
        self._check_family(s, t, func="equivalent_mod_kernel")
        return all(s.payload[i] == t.payload[i] for i in self.scaled_coordinates)

    def solve_pq(self, x: MonoidElement, y: MonoidElement) -> tuple:
        if not self.equivalent_mod_kernel(x, y):
            raise NotEquivalentError(x, y)
        p = [0] * len(self.weights)
        q = [0] * len(self.weights)
        for i in self.kernel_coordinates:
            p[i] = max(y.payload[i] - x.payload[i], 0)
            q[i] = max(x.payload[i] - y.payload[i], 0)
        return MonoidElement(ABELIAN, tuple(p)), MonoidElement(ABELIAN, tuple(q))

    def _scaled_vectors(self, bound: Fraction) -> list:
        """Vectors supported on the weight > 1 coordinates with N <= bound."""
        vectors = [(self._identity_payload(), Fraction(1))]
        for i in self.scaled_coordinates:
            extended = []
            for vector, value in vectors:
                n = 0
                while value * self.weights[i] ** n <= bound:
                    extended.append((vector[:i] + (n,) + vector[i + 1:], value * self.weights[i] ** n))
                    n += 1
            vectors = extended
            self._guard(len(vectors))
        return vectors

    def enumerate_elements(self, bound) -> list:
        bound = parse_rational(bound)
        size = int(bound)
        elements = []
        for vector, _ in self._scaled_vectors(bound):
            for kernel_part in itertools.product(range(size + 1), repeat=len(self.kernel_coordinates)):
                payload = list(vector)
                for i, v in zip(self.kernel_coordinates, kernel_part):
                    payload[i] = v
                elements.append(MonoidElement(ABELIAN, tuple(payload)))
            self._guard(len(elements))
        return sorted(elements)

    def kernel_elements(self, length: int) -> list:
        vectors = []
        for kernel_part in itertools.product(range(length + 1), repeat=len(self.kernel_coordinates)):
            if sum(kernel_part) > length:
                continue
            payload = [0] * len(self.weights)
            for i, v in zip(self.kernel_coordinates, kernel_part):
                payload[i] = v
            vectors.append(tuple(payload))
        vectors.sort(key=lambda v: (sum(v), v))
        return [MonoidElement(ABELIAN, v) for v in vectors]

    def class_representatives(self, cutoff) -> list:
        cutoff = parse_rational(cutoff)
        assert cutoff >= 1, f"cutoff {cutoff} must be at least 1"
        reps = [ClassRep(MonoidElement(ABELIAN, v), value) for v, value in self._scaled_vectors(cutoff)]
        reps.sort(key=ClassRep.sort_key)
        logger.info(f"{self!r}: {len(reps)} classes with N <= {cutoff}")
        return reps

    def convergence_abscissa(self) -> float:
        return 0.0

    def zeta_closed_form(self, beta: float) -> Optional[float]:
        value = 1.0
        for i in self.scaled_coordinates:
            value /= 1.0 - float(self.weights[i]) ** (-beta)
        return value

    def zeta_tail_bound(self, beta: float, cutoff) -> tuple:
        if not self.scaled_coordinates:
            return 0.0, True
        return self._rankin_tail(beta, parse_rational(cutoff)), True
