import logging
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional

from ..exceptions import InputError, UnknownNameError
from ..monoid import format_rational, parse_rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FiniteInverseSemigroup:
    """
    A finite semigroup given by its Cayley table, ``table[x][y]`` being the index
    of ``xy``. Axioms are not enforced here; ``validate`` reports violations.
    """

    names: tuple
    table: tuple
    zero: Optional[int] = None

    @classmethod
    def from_function(cls, elements, product, zero=None, name=str):
        elements = list(elements)
        index = {x: i for i, x in enumerate(elements)}
        table = tuple(tuple(index[product(x, y)] for y in elements) for x in elements)
        return cls(
            tuple(name(x) for x in elements),
            table,
            None if zero is None else index[zero],
        )

    def __len__(self) -> int:
        return len(self.names)

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def mul_all(self, *xs: int) -> int:
        result = xs[0]
        for x in xs[1:]:
            result = self.table[result][x]
        return result

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownNameError(name, "element") from None

    def is_zero(self, x: int) -> bool:
        return x == self.zero

    @cached_property
    def nonzero(self) -> tuple:
        return tuple(x for x in range(len(self)) if x != self.zero)

    @cached_property
    def idempotents(self) -> tuple:
        return tuple(x for x in range(len(self)) if self.table[x][x] == x)

    @cached_property
    def nonzero_idempotents(self) -> tuple:
        return tuple(p for p in self.idempotents if p != self.zero)

    @cached_property
    def inverses(self) -> tuple:
        """``inverses[x]`` is the unique ``y`` with ``xyx = x, yxy = y`` or ``None``."""
        result = []
        for x in range(len(self)):
            candidates = [
                y for y in range(len(self))
                if self.mul_all(x, y, x) == x and self.mul_all(y, x, y) == y
            ]
            result.append(candidates[0] if len(candidates) == 1 else None)
        return tuple(result)

    def inverse(self, x: int) -> int:
        y = self.inverses[x]
        assert y is not None, f"{self.names[x]} has no unique inverse"
        return y

    def source(self, x: int) -> int:
        """``x^-1 x``."""
        return self.mul(self.inverse(x), x)

    def range(self, x: int) -> int:
        """``x x^-1``."""
        return self.mul(x, self.inverse(x))

    def leq(self, p: int, q: int) -> bool:
        """Natural order on idempotents, ``p <= q`` iff ``p = pq``."""
        return self.mul(p, q) == p

    def to_json(self, scale: Optional[dict] = None) -> dict:
        data = {
            "elements": list(self.names),
            "zero": None if self.zero is None else self.names[self.zero],
            "table": [list(row) for row in self.table],
        }
        if scale is not None:
            data["scale"] = {self.names[x]: format_rational(v) for x, v in sorted(scale.items())}
        return data


@dataclass
class ValidationReport:
    ok: bool
    reason: Optional[str] = None
    witness: dict = field(default_factory=dict)

    def to_json(self):
        return {"ok": self.ok, "reason": self.reason, "witness": self.witness}


def complete_scale(semigroup: FiniteInverseSemigroup, scale: dict) -> dict:
    """Fills in ``N(p) = 1`` for idempotents missing from ``scale``."""
    full = {x: Fraction(v) for x, v in scale.items()}
    for p in semigroup.nonzero_idempotents:
        full.setdefault(p, Fraction(1))
    return full


def trivial_scale(semigroup: FiniteInverseSemigroup) -> dict:
    return {x: Fraction(1) for x in semigroup.nonzero}


def validate(semigroup: FiniteInverseSemigroup, scale: Optional[dict] = None) -> ValidationReport:
    """
    Checks the inverse semigroup axioms and, when given, the scale axioms
    exhaustively. The first violation found is returned with a witness.
    """
    n = len(semigroup)
    names = semigroup.names
    if n == 0:
        return ValidationReport(False, "empty semigroup")
    if len(semigroup.table) != n or any(len(row) != n for row in semigroup.table):
        return ValidationReport(False, "table is not square", {"size": n})
    for x, y in itertools.product(range(n), repeat=2):
        if not 0 <= semigroup.table[x][y] < n:
            return ValidationReport(False, "entry out of range", {"x": names[x], "y": names[y]})

    if semigroup.zero is not None:
        z = semigroup.zero
        for x in range(n):
            if semigroup.mul(z, x) != z or semigroup.mul(x, z) != z:
                return ValidationReport(False, "zero is not absorbing", {"x": names[x]})

    for x, y, z in itertools.product(range(n), repeat=3):
        if semigroup.mul(semigroup.mul(x, y), z) != semigroup.mul(x, semigroup.mul(y, z)):
            return ValidationReport(False, "associativity", {"x": names[x], "y": names[y], "z": names[z]})

    for x in range(n):
        if semigroup.inverses[x] is None:
            return ValidationReport(False, "no unique inverse", {"x": names[x]})

    for p, q in itertools.product(semigroup.idempotents, repeat=2):
        if semigroup.mul(p, q) != semigroup.mul(q, p):
            return ValidationReport(False, "idempotents do not commute", {"p": names[p], "q": names[q]})
        if semigroup.mul(p, q) not in semigroup.idempotents:
            return ValidationReport(False, "idempotents not closed", {"p": names[p], "q": names[q]})

    if scale is None:
        return ValidationReport(True)

    scale = complete_scale(semigroup, scale)
    for x in semigroup.nonzero:
        if x not in scale:
            return ValidationReport(False, "scale undefined", {"g": names[x]})
        if scale[x] <= 0:
            return ValidationReport(False, "scale not positive", {"g": names[x], "N": format_rational(scale[x])})
    for p in semigroup.nonzero_idempotents:
        if scale[p] != 1:
            return ValidationReport(False, "scale of an idempotent is not 1", {"p": names[p], "N": format_rational(scale[p])})
    for g, h in itertools.product(semigroup.nonzero, repeat=2):
        gh = semigroup.mul(g, h)
        if semigroup.is_zero(gh):
            continue
        if scale[gh] != scale[g] * scale[h]:
            return ValidationReport(
                False,
                "scale is not multiplicative",
                {
                    "g": names[g],
                    "h": names[h],
                    "gh": names[gh],
                    "N(gh)": format_rational(scale[gh]),
                    "N(g)N(h)": format_rational(scale[g] * scale[h]),
                },
            )
    return ValidationReport(True)


def load_table(data: dict) -> tuple:
    """Parses the JSON table format into ``(semigroup, scale)``."""
    try:
        names = tuple(str(x) for x in data["elements"])
        table = tuple(tuple(int(v) for v in row) for row in data["table"])
        zero_name = data.get("zero")
        zero = None if zero_name is None else names.index(zero_name)
        raw_scale = data.get("scale", {})
        scale = {names.index(name): parse_rational(v) for name, v in raw_scale.items()}
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise InputError(f"malformed table: {e!r}", "load_table") from e
    semigroup = FiniteInverseSemigroup(names, table, zero)
    if not raw_scale:
        scale = trivial_scale(semigroup)
    return semigroup, scale
