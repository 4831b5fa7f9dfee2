import logging
import math
from fractions import Fraction
from typing import Optional

import mpmath

from .. import SCALED_CRYSTAL_CONFIG
from ..exceptions import ConstructionError, NonAbelianKernelError, NotEquivalentError
from .element import FREE, ClassRep, MonoidElement, parse_rational
from .family import ClassTerm, ScaledMonoid

logger = logging.getLogger(__name__)


class FreeMonoid(ScaledMonoid):
    """
    The free monoid on ``len(weights)`` generators, elements stored as words of
    generator indices. ``sS ∩ tS`` is nonempty only when one word is a prefix of
    the other, and ``s ~N t`` holds iff one word extends the other by a kernel
    word.
    """

    family = FREE

    def __init__(self, weights) -> None:
        super().__init__(weights)
        self.kernel_letters = tuple(i for i, w in enumerate(self.weights) if w == 1)

    @property
    def is_kernel_only(self) -> bool:
        return len(self.kernel_letters) == len(self.weights)

    def _validate_payload(self, payload: tuple) -> tuple:
        for letter in payload:
            if not isinstance(letter, int) or not 0 <= letter < len(self.weights):
                raise ConstructionError(f"bad letter {letter!r} in word {payload!r}", "FreeMonoid.element")
        return payload

    def _identity_payload(self) -> tuple:
        return ()

    def _multiply(self, left: tuple, right: tuple) -> tuple:
        return left + right

    def _left_divide(self, left: tuple, target: tuple) -> Optional[tuple]:
        if target[: len(left)] == left:
            return target[len(left):]
        return None

    def _lcm(self, left: tuple, right: tuple) -> Optional[tuple]:
        if right[: len(left)] == left:
            return right
        if left[: len(right)] == right:
            return left
        return None

    def _scale(self, payload: tuple) -> Fraction:
        value = Fraction(1)
        for letter in payload:
            value *= self.weights[letter]
        return value

    def _is_kernel_word(self, payload: tuple) -> bool:
        return all(letter in self.kernel_letters for letter in payload)

    def _kernel_exponent(self, payload: tuple) -> tuple:
        if len(self.kernel_letters) > 1:
            raise NonAbelianKernelError(self)
        if not self.kernel_letters:
            return ()
        return (len(payload),)

    @property
    def has_closed_form_states(self) -> bool:
        return not self.kernel_letters or len(self.weights) == 1

    def equivalent_mod_kernel(self, s: MonoidElement, t: MonoidElement) -> bool:
        self._check_family(s, t, func="equivalent_mod_kernel")
        short, long = sorted((s.payload, t.payload), key=len)
        return long[: len(short)] == short and self._is_kernel_word(long[len(short):])

    def solve_pq(self, x: MonoidElement, y: MonoidElement) -> tuple:
        self._check_family(x, y, func="solve_pq")
        if not self.equivalent_mod_kernel(x, y):
            raise NotEquivalentError(x, y)
        e = self.identity()
        if len(x.payload) <= len(y.payload):
            return MonoidElement(FREE, y.payload[len(x.payload):]), e
        return e, MonoidElement(FREE, x.payload[len(y.payload):])

    def _words(self, bound: Fraction, max_length: int) -> list:
        words = [()]
        frontier = [((), Fraction(1))]
        for _ in range(max_length):
            extended = []
            for word, value in frontier:
                for letter, w in enumerate(self.weights):
                    if value * w <= bound:
                        extended.append((word + (letter,), value * w))
            words.extend(word for word, _ in extended)
            self._guard(len(words))
            frontier = extended
            if not frontier:
                break
        return sorted(words)

    def _length_bound(self, bound: Fraction) -> int:
        """Longest word with ``N <= bound``, kernel letters allowed up to ``search_length``."""
        scaled = [w for w in self.weights if w > 1]
        length = 0
        if scaled and bound >= 1:
            length = int(math.log(bound) / math.log(min(scaled))) + 1
        if self.kernel_letters:
            length += SCALED_CRYSTAL_CONFIG.get("search_length", 6)
        return length

    def enumerate_elements(self, bound) -> list:
        bound = parse_rational(bound)
        return [MonoidElement(FREE, w) for w in self._words(bound, self._length_bound(bound))]

    def kernel_elements(self, length: int) -> list:
        words = [()]
        frontier = [()]
        for _ in range(length):
            frontier = [word + (letter,) for word in frontier for letter in self.kernel_letters]
            words.extend(frontier)
        return [MonoidElement(FREE, w) for w in words]

    def class_representatives(self, cutoff) -> list:
        cutoff = parse_rational(cutoff)
        assert cutoff >= 1, f"cutoff {cutoff} must be at least 1"
        if self.is_kernel_only or cutoff < min(w for w in self.weights if w > 1):
            # every element with N <= cutoff has N = 1, the identity stands for all of them
            return [ClassRep(self.identity(), Fraction(1))]
        if len(self.kernel_letters) > 1:
            # the prefix relation is not transitive here, so there are no classes
            raise NonAbelianKernelError(self)
        if not self.kernel_letters:
            # every letter has weight > 1, so N(w) <= cutoff bounds the length
            max_length = self._length_bound(cutoff)
        else:
            max_length = SCALED_CRYSTAL_CONFIG.get("search_length", 6)
            logger.warning(
                f"{self!r}: infinitely many classes per value, enumeration truncated at word length {max_length}"
            )
        words = self._words(cutoff, max_length)
        reps = [
            ClassRep(MonoidElement(FREE, w), self._scale(w))
            for w in words
            if not w or w[-1] not in self.kernel_letters
        ]
        reps.sort(key=ClassRep.sort_key)
        self._guard(len(reps))
        logger.info(f"{self!r}: {len(reps)} classes with N <= {cutoff}")
        return reps

    def class_terms(self, s: MonoidElement, t: MonoidElement, cutoff, shift=None) -> list:
        if not self.is_kernel_only or len(self.kernel_letters) < 2:
            return super().class_terms(s, t, cutoff, shift)
        # the identity is the only representative; a free kernel has no exponent
        self._check_family(s, t, func="class_terms")
        if not self.equivalent_mod_kernel(s, t):
            return []
        return [ClassTerm(Fraction(1), 1, ())]

    def _rho(self, beta):
        return mpmath.fsum((mpmath.mpf(w.numerator) / w.denominator) ** (-beta) for w in self.weights)

    def convergence_abscissa(self) -> float:
        if self.kernel_letters:
            return 0.0 if self.is_kernel_only else math.inf
        if len(self.weights) < 2:
            return 0.0
        hi = 1.0
        while self._rho(hi) >= 1:
            hi *= 2
        root = mpmath.findroot(lambda b: self._rho(b) - 1, (0, hi), solver="bisect", verify=False)
        return float(root)

    def zeta_closed_form(self, beta: float) -> Optional[float]:
        if self.kernel_letters:
            return 1.0 if self.is_kernel_only else math.inf
        rho = float(self._rho(beta))
        if rho >= 1:
            return math.inf
        return 1.0 / (1.0 - rho)

    def zeta_tail_bound(self, beta: float, cutoff) -> tuple:
        if self.is_kernel_only:
            return 0.0, True
        return self._rankin_tail(beta, parse_rational(cutoff)), True
