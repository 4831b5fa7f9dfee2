import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from .. import SCALED_CRYSTAL_CONFIG
from ..exceptions import (
    ClassOverflowError,
    ConstructionError,
    FamilyMismatchError,
    NonKernelError,
    NotEquivalentError,
    UndecidedEquivalenceError,
)
from .element import ClassRep, Disjoint, Ideal, MonoidElement, format_rational, parse_rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClassTerm:
    """
    One summand of the KMS class sum for ``v_s v_t*``: ``multiplicity`` classes
    r with ``N(sr) = value`` and kernel exponent difference ``q_r - p_r``.
    """

    value: Fraction
    multiplicity: int
    exponent: tuple


@dataclass
class ScaleConditionReport:
    family: str
    passed: bool
    checked: int
    witness: Optional[dict] = None
    samples: list = field(default_factory=list)

    def to_json(self):
        return {
            "family": self.family,
            "passed": self.passed,
            "checked": self.checked,
            "witness": self.witness,
            "samples": self.samples,
        }


class ScaledMonoid(ABC):
    """
    A right LCM monoid with trivial unit group together with a multiplicative
    scale ``N: S -> [1, +inf)``.

    Subclasses implement the payload arithmetic of their family. Everything
    built on top of it (~N classes, the bounded kernel search, scale-condition
    certificates, hull composition) lives here.
    """

    family = None

    def __init__(self, weights: Iterable = ()) -> None:
        self.weights = tuple(parse_rational(w) for w in weights)
        for i, w in enumerate(self.weights):
            if w < 1:
                raise ConstructionError(
                    f"generator {i} has weight {w} < 1", self.__class__.__name__
                )

    def __repr__(self) -> str:
        weights = ",".join(format_rational(w) for w in self.weights)
        return f"{self.__class__.__name__}({weights})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ScaledMonoid)
            and self.family == other.family
            and self.weights == other.weights
        )

    def __hash__(self) -> int:
        return hash((self.family, self.weights))

    # ------------------------------------------------------------------
    # family arithmetic

    @abstractmethod
    def _validate_payload(self, payload: tuple) -> tuple:
        pass

    @abstractmethod
    def _identity_payload(self) -> tuple:
        pass

    @abstractmethod
    def _multiply(self, left: tuple, right: tuple) -> tuple:
        pass

    @abstractmethod
    def _left_divide(self, left: tuple, target: tuple) -> Optional[tuple]:
        pass

    @abstractmethod
    def _lcm(self, left: tuple, right: tuple) -> Optional[tuple]:
        pass

    @abstractmethod
    def _scale(self, payload: tuple) -> Fraction:
        pass

    @abstractmethod
    def _kernel_exponent(self, payload: tuple) -> tuple:
        pass

    @abstractmethod
    def enumerate_elements(self, bound) -> list:
        """All elements with scale and payload size bounded by ``bound``."""

    @abstractmethod
    def kernel_elements(self, length: int) -> list:
        """Kernel elements of size at most ``length``, smallest first."""

    @abstractmethod
    def convergence_abscissa(self) -> float:
        pass

    @abstractmethod
    def zeta_closed_form(self, beta: float) -> Optional[float]:
        pass

    @abstractmethod
    def zeta_tail_bound(self, beta: float, cutoff: Fraction) -> tuple:
        """Returns ``(bound, rigorous)`` for the classes with ``N > cutoff``."""

    @property
    def kernel_rank(self) -> int:
        return len(self._kernel_exponent(self._identity_payload()))

    @property
    def has_closed_form_states(self) -> bool:
        return False

    def _rankin_tail(self, beta: float, cutoff: Fraction) -> float:
        # sum_{N(s) > C} N(s)^-beta <= C^-delta * zeta(beta - delta)
        abscissa = self.convergence_abscissa()
        c = float(cutoff)
        best = math.inf
        for k in range(1, 64):
            delta = (beta - abscissa) * k / 64
            z = self.zeta_closed_form(beta - delta)
            if z is None or math.isinf(z):
                continue
            best = min(best, c ** (-delta) * z)
        return best

    def descriptor(self) -> dict:
        return {
            "family": self.family,
            "weights": [format_rational(w) for w in self.weights],
        }

    # ------------------------------------------------------------------
    # element level operations

    def element(self, payload) -> MonoidElement:
        return MonoidElement(self.family, self._validate_payload(tuple(payload)))

    def identity(self) -> MonoidElement:
        return MonoidElement(self.family, self._identity_payload())

    def _check_family(self, *elements, func="") -> None:
        for x in elements:
            if not isinstance(x, MonoidElement) or x.family != self.family:
                raise FamilyMismatchError(x, self, func)

    def multiply(self, s: MonoidElement, t: MonoidElement) -> MonoidElement:
        self._check_family(s, t, func="multiply")
        return MonoidElement(self.family, self._multiply(s.payload, t.payload))

    def product(self, *elements: MonoidElement) -> MonoidElement:
        result = self.identity()
        for x in elements:
            result = self.multiply(result, x)
        return result

    def left_divide(self, s: MonoidElement, x: MonoidElement) -> Optional[MonoidElement]:
        self._check_family(s, x, func="left_divide")
        quotient = self._left_divide(s.payload, x.payload)
        if quotient is None:
            return None
        return MonoidElement(self.family, quotient)

    def lcm(self, s: MonoidElement, t: MonoidElement):
        self._check_family(s, t, func="lcm")
        generator = self._lcm(s.payload, t.payload)
        if generator is None:
            return Disjoint
        return Ideal(MonoidElement(self.family, generator))

    def scale_value(self, s: MonoidElement) -> Fraction:
        self._check_family(s, func="scale_value")
        return self._scale(s.payload)

    def kernel_member(self, s: MonoidElement) -> bool:
        return self.scale_value(s) == 1

    def kernel_exponent(self, s: MonoidElement) -> tuple:
        if not self.kernel_member(s):
            raise NonKernelError(s)
        return self._kernel_exponent(s.payload)

    def compose_pairs(self, a, b, c, d):
        """
        Composes the pairs ``a b^-1`` and ``c d^-1``: with ``bS ∩ cS = rS`` and
        ``r = bf = ce`` the product is ``(af) (de)^-1``. Returns ``None`` when the
        ideals are disjoint.
        """
        meet = self.lcm(b, c)
        if meet is Disjoint:
            return None
        r = meet.generator
        f = self.left_divide(b, r)
        e = self.left_divide(c, r)
        assert f is not None and e is not None, f"lcm {r} is not a common multiple of {b}, {c}"
        return self.multiply(a, f), self.multiply(d, e)

    # ------------------------------------------------------------------
    # ~N equivalence

    def equivalent_mod_kernel(self, s: MonoidElement, t: MonoidElement) -> bool:
        return self.search_equivalence(s, t)

    def search_equivalence(self, s: MonoidElement, t: MonoidElement) -> bool:
        """
        Generic decision of ``s ~N t`` by searching kernel multipliers ``a, b``
        with ``sa = tb``. Different scales decide ``False``; otherwise a found
        witness decides ``True`` and an exhausted search raises
        ``UndecidedEquivalenceError``.
        """
        self._check_family(s, t, func="search_equivalence")
        if self.scale_value(s) != self.scale_value(t):
            return False
        self.kernel_witness(s, t)
        return True

    def kernel_witness(self, s: MonoidElement, t: MonoidElement) -> tuple:
        base = SCALED_CRYSTAL_CONFIG.get("search_length", 6)
        attempts = SCALED_CRYSTAL_CONFIG.get("search_attempts", 3)
        for attempt in Retrying(
            stop=stop_after_attempt(attempts),
            retry=retry_if_exception_type(UndecidedEquivalenceError),
            reraise=True,
        ):
            with attempt:
                bound = base * 2 ** (attempt.retry_state.attempt_number - 1)
                logger.debug(f"kernel search for {s} ~ {t} with length bound {bound}")
                return self._witness_within(s, t, bound)

    def _witness_within(self, s: MonoidElement, t: MonoidElement, bound: int) -> tuple:
        kernel = self.kernel_elements(bound)
        # pairs ordered by combined position so the first hit is minimal
        for total in range(2 * len(kernel) - 1):
            for i in range(max(0, total - len(kernel) + 1), min(total, len(kernel) - 1) + 1):
                a, b = kernel[i], kernel[total - i]
                if self.multiply(s, a) == self.multiply(t, b):
                    return a, b
        raise UndecidedEquivalenceError(s, t, bound)

    def solve_pq(self, x: MonoidElement, y: MonoidElement) -> tuple:
        if not self.equivalent_mod_kernel(x, y):
            raise NotEquivalentError(x, y)
        return self.kernel_witness(x, y)

    # ------------------------------------------------------------------
    # classes

    def _class_limit(self) -> int:
        return SCALED_CRYSTAL_CONFIG.get("class_limit", 200000)

    def _guard(self, count: int) -> None:
        limit = self._class_limit()
        if count > limit:
            raise ClassOverflowError(count, limit)

    def class_representatives(self, cutoff) -> list:
        """
        One minimal representative per ~N class with ``N <= cutoff``, ordered by
        value and then lexicographically.
        """
        cutoff = parse_rational(cutoff)
        assert cutoff >= 1, f"cutoff {cutoff} must be at least 1"
        candidates = sorted(
            (x for x in self.enumerate_elements(cutoff) if self.scale_value(x) <= cutoff),
            key=lambda x: (self.scale_value(x), x.payload),
        )
        reps = []
        for x in candidates:
            value = self.scale_value(x)
            if any(r.value == value and self.equivalent_mod_kernel(r.representative, x) for r in reps):
                continue
            reps.append(ClassRep(x, value))
            self._guard(len(reps))
        logger.info(f"{self!r}: {len(reps)} classes with N <= {cutoff}")
        return reps

    def class_counts(self, cutoff) -> list:
        """Pairs ``(value, number of classes)`` in increasing value order."""
        counts = {}
        for rep in self.class_representatives(cutoff):
            counts[rep.value] = counts.get(rep.value, 0) + 1
        return sorted(counts.items())

    def class_terms(self, s: MonoidElement, t: MonoidElement, cutoff, shift=None) -> list:
        """
        Summands of the KMS class sum for ``v_s v_t*``: for every class ``r`` with
        ``N(r) <= cutoff`` and ``sr ~N tr``, the value ``N(sr)`` and the kernel
        exponent of ``q_r - p_r`` where ``sr p_r = tr q_r``. ``shift`` multiplies
        every representative on the right by a kernel element.
        """
        if shift is not None and not self.kernel_member(shift):
            raise NonKernelError(shift)
        terms = []
        for rep in self.class_representatives(cutoff):
            r = rep.representative if shift is None else self.multiply(rep.representative, shift)
            sr, tr = self.multiply(s, r), self.multiply(t, r)
            if not self.equivalent_mod_kernel(sr, tr):
                continue
            p, q = self.solve_pq(sr, tr)
            exponent = tuple(
                qi - pi for qi, pi in zip(self.kernel_exponent(q), self.kernel_exponent(p))
            )
            terms.append(ClassTerm(self.scale_value(sr), 1, exponent))
        return terms

    # ------------------------------------------------------------------
    # certificates

    def scale_condition_check(self, sample_bound, kernel_length: Optional[int] = None) -> ScaleConditionReport:
        """
        Checks that ``sS ∩ tS = rS`` with ``r ∈ s ker N`` for all enumerated
        ``s`` with ``N(s) <= sample_bound`` and kernel elements ``t``.
        """
        sample_bound = parse_rational(sample_bound)
        if kernel_length is None:
            kernel_length = int(sample_bound)
        kernel = self.kernel_elements(kernel_length)
        checked = 0
        samples = []
        for s in self.enumerate_elements(sample_bound):
            if self.scale_value(s) > sample_bound:
                continue
            for t in kernel:
                checked += 1
                meet = self.lcm(s, t)
                if meet is Disjoint:
                    witness = {"s": s.to_json(), "t": t.to_json(), "reason": "disjoint"}
                    logger.info(f"scale condition fails for {self!r}: {witness}")
                    return ScaleConditionReport(self.family, False, checked, witness, samples)
                r = meet.generator
                u = self.left_divide(s, r)
                if u is None or not self.kernel_member(u) or self.left_divide(t, r) is None:
                    witness = {
                        "s": s.to_json(),
                        "t": t.to_json(),
                        "r": r.to_json(),
                        "reason": "r not in s ker N",
                    }
                    logger.info(f"scale condition fails for {self!r}: {witness}")
                    return ScaleConditionReport(self.family, False, checked, witness, samples)
                if len(samples) < 5:
                    samples.append({"s": s.to_json(), "t": t.to_json(), "r": r.to_json(), "u": u.to_json()})
        return ScaleConditionReport(self.family, True, checked, None, samples)
