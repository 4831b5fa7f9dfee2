import logging
import math
from fractions import Fraction
from typing import Optional

import mpmath

from ..exceptions import ConstructionError, NotEquivalentError
from .element import AXB, ClassRep, MonoidElement, parse_rational
from .family import ClassTerm, ScaledMonoid

logger = logging.getLogger(__name__)


class AxbMonoid(ScaledMonoid):
    """
    The ax+b monoid N ⋊ N^x of pairs ``(b, a)`` with ``(b, a)(d, c) = (b + ad, ac)``
    and the scale ``N(b, a) = a``. The kernel is ``{(b, 1)}`` and the ~N classes of
    value ``a`` are the residues of ``b`` modulo ``a``.
    """

    family = AXB

    def __init__(self, weights=()) -> None:
        if weights:
            logger.warning(f"ax+b scale is fixed to N(b,a)=a, ignoring weights {weights}")
        super().__init__(())

    def _validate_payload(self, payload: tuple) -> tuple:
        if len(payload) != 2:
            raise ConstructionError(f"expected a pair (b, a), got {payload!r}", "AxbMonoid.element")
        b, a = payload
        if not isinstance(b, int) or not isinstance(a, int) or b < 0 or a < 1:
            raise ConstructionError(f"need b >= 0 and a >= 1, got {payload!r}", "AxbMonoid.element")
        return payload

    def _identity_payload(self) -> tuple:
        return (0, 1)

    def _multiply(self, left: tuple, right: tuple) -> tuple:
        b, a = left
        d, c = right
        return (b + a * d, a * c)

    def _left_divide(self, left: tuple, target: tuple) -> Optional[tuple]:
        b, a = left
        x, y = target
        if y % a or x < b or (x - b) % a:
            return None
        return ((x - b) // a, y // a)

    def _lcm(self, left: tuple, right: tuple) -> Optional[tuple]:
        b, a = left
        d, c = right
        g = math.gcd(a, c)
        if (d - b) % g:
            return None
        modulus = a * c // g
        # x = b + a k with a k = d - b (mod c)
        k = ((d - b) // g) * pow(a // g, -1, c // g) % (c // g)
        x0 = b + a * k
        least = max(b, d)
        x = least + (x0 - least) % modulus
        return (x, modulus)

    def _scale(self, payload: tuple) -> Fraction:
        return Fraction(payload[1])

    def _kernel_exponent(self, payload: tuple) -> tuple:
        return (payload[0],)

    def equivalent_mod_kernel(self, s: MonoidElement, t: MonoidElement) -> bool:
        self._check_family(s, t, func="equivalent_mod_kernel")
        (b, a), (d, c) = s.payload, t.payload
        return a == c and (b - d) % a == 0

    def solve_pq(self, x: MonoidElement, y: MonoidElement) -> tuple:
        if not self.equivalent_mod_kernel(x, y):
            raise NotEquivalentError(x, y)
        (u, a), (v, _) = x.payload, y.payload
        if u <= v:
            return MonoidElement(AXB, ((v - u) // a, 1)), self.identity()
        return self.identity(), MonoidElement(AXB, ((u - v) // a, 1))

    def enumerate_elements(self, bound) -> list:
        size = int(parse_rational(bound))
        self._guard(size * (size + 1))
        return [MonoidElement(AXB, (b, a)) for a in range(1, size + 1) for b in range(size + 1)]

    def kernel_elements(self, length: int) -> list:
        return [MonoidElement(AXB, (k, 1)) for k in range(length + 1)]

    def class_representatives(self, cutoff) -> list:
        cutoff = parse_rational(cutoff)
        assert cutoff >= 1, f"cutoff {cutoff} must be at least 1"
        top = int(cutoff)
        self._guard(top * (top + 1) // 2)
        return [ClassRep(MonoidElement(AXB, (b, a)), Fraction(a)) for a in range(1, top + 1) for b in range(a)]

    def class_counts(self, cutoff) -> list:
        return [(Fraction(a), a) for a in range(1, int(parse_rational(cutoff)) + 1)]

    def class_terms(self, s: MonoidElement, t: MonoidElement, cutoff, shift=None) -> list:
        if shift is not None:
            return super().class_terms(s, t, cutoff, shift)
        self._check_family(s, t, func="class_terms")
        (sigma, alpha), (tau, gamma) = s.payload, t.payload
        if alpha != gamma:
            return []
        difference = sigma - tau
        terms = []
        # sr ~ tr iff alpha*a divides sigma - tau, independently of the residue b
        for a in range(1, int(parse_rational(cutoff)) + 1):
            if difference % (alpha * a) == 0:
                terms.append(ClassTerm(Fraction(alpha * a), a, (difference // (alpha * a),)))
        return terms

    def convergence_abscissa(self) -> float:
        return 2.0

    def zeta_closed_form(self, beta: float) -> Optional[float]:
        if beta <= 2:
            return math.inf
        return float(mpmath.zeta(beta - 1))

    def zeta_tail_bound(self, beta: float, cutoff) -> tuple:
        if beta <= 2:
            return math.inf, True
        top = int(parse_rational(cutoff))
        return top ** (2 - beta) / (beta - 2), True
