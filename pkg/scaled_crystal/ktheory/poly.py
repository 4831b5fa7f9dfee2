import json
import logging
from dataclasses import dataclass
from fractions import Fraction

import sympy
from sympy import QQ, Poly

from ..exceptions import InputError
from ..monoid import format_rational, parse_rational
from .smith import EuclideanRing, IntMatrix, smith_reduce

logger = logging.getLogger(__name__)

t = sympy.Symbol("t")
POLY_PREFIX = "poly:"


def trim(coefficients) -> tuple:
    """Canonical coefficient tuple ``(c0, c1, ...)`` without trailing zeros."""
    coefficients = [Fraction(c) for c in coefficients]
    while coefficients and coefficients[-1] == 0:
        coefficients.pop()
    return tuple(coefficients)


def _coerce(entry) -> tuple:
    # a bare scalar is a constant polynomial
    if isinstance(entry, (int, Fraction)):
        return trim([entry])
    return trim(entry)


def to_poly(coefficients) -> Poly:
    return Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coefficients)] or [0], t, domain=QQ)


def from_poly(poly: Poly) -> tuple:
    return trim(Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs()))


def evaluate(coefficients, x) -> Fraction:
    value = Fraction(0)
    for c in reversed(coefficients):
        value = value * x + c
    return value


def parse_entry(entry) -> tuple:
    if isinstance(entry, int) and not isinstance(entry, bool):
        return trim([entry])
    if isinstance(entry, str) and entry.startswith(POLY_PREFIX):
        try:
            return trim(parse_rational(c) for c in json.loads(entry[len(POLY_PREFIX):]))
        except (ValueError, TypeError, ZeroDivisionError) as e:
            raise InputError(f"malformed polynomial entry {entry!r}", "parse_entry") from e
    raise InputError(f"matrix entries are integers or 'poly:[...]' strings, got {entry!r}", "parse_entry")


def _coefficient_json(c: Fraction):
    return c.numerator if c.denominator == 1 else format_rational(c)


def format_entry(coefficients: tuple):
    if len(coefficients) <= 1 and all(c.denominator == 1 for c in coefficients):
        return int(coefficients[0]) if coefficients else 0
    return POLY_PREFIX + json.dumps([_coefficient_json(c) for c in coefficients])


@dataclass(frozen=True)
class PolyMatrix:
    """Matrix of polynomials in ``t``, entries as canonical coefficient tuples."""

    rows: tuple
    ncols: int

    @classmethod
    def from_rows(cls, rows, ncols=None) -> "PolyMatrix":
        rows = tuple(tuple(_coerce(entry) for entry in row) for row in rows)
        if ncols is None:
            if not rows:
                raise InputError("an empty matrix needs an explicit column count", "PolyMatrix")
            ncols = len(rows[0])
        if any(len(row) != ncols for row in rows):
            raise InputError(f"rows must all have {ncols} entries", "PolyMatrix")
        return cls(rows, ncols)

    @classmethod
    def diagonal(cls, entries, ncols=None) -> "PolyMatrix":
        entries = list(entries)
        n = len(entries) if ncols is None else ncols
        return cls.from_rows(
            [[entries[i] if i == j else () for j in range(n)] for i in range(len(entries))], n
        )

    @classmethod
    def from_json(cls, data) -> "PolyMatrix":
        try:
            rows = data["rows"]
            ncols = data.get("ncols")
        except (KeyError, TypeError, AttributeError) as e:
            raise InputError("matrix needs a 'rows' list", "PolyMatrix.from_json") from e
        return cls.from_rows([[parse_entry(x) for x in row] for row in rows], ncols)

    def to_json(self):
        return {"rows": [[format_entry(x) for x in row] for row in self.rows], "ncols": self.ncols}

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for row in self.rows for entry in row for c in entry)

    def at(self, x) -> list:
        """Entrywise evaluation at ``t = x``, exact rationals."""
        return [[evaluate(entry, x) for entry in row] for row in self.rows]

    def integer_at(self, x: int) -> IntMatrix:
        if not self.is_integral:
            raise InputError("integer quotients need integer coefficients", "PolyMatrix.integer_at")
        return IntMatrix.from_rows([[int(v) for v in row] for row in self.at(x)], self.ncols)

    def rational_rank_at(self, x) -> int:
        if not self.rows:
            return 0
        return sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row] for row in self.at(x)]).rank()

    def to_polys(self) -> list:
        return [[to_poly(entry) for entry in row] for row in self.rows]


def _poly_normalizer(p: Poly) -> Poly:
    return Poly(QQ.to_sympy(QQ.one / p.LC()), t, domain=QQ)


RATIONAL_POLYNOMIALS = EuclideanRing(
    zero=Poly(0, t, domain=QQ),
    one=Poly(1, t, domain=QQ),
    size=lambda p: p.degree(),
    quotient=lambda a, b: a.div(b)[0],
    normalizer=_poly_normalizer,
)


def qt_smith(matrix: PolyMatrix) -> list:
    """
    Invariant factors ``f1 | f2 | ... | fn`` of ``Q[t]^ncols`` modulo the row
    space, monic, one per generator; free summands appear as zero polynomials.
    """
    if not matrix.rows:
        return [()] * matrix.ncols
    _, d, _ = smith_reduce(RATIONAL_POLYNOMIALS, matrix.to_polys())
    factors = [from_poly(d[i][i]) for i in range(min(matrix.nrows, matrix.ncols))]
    factors += [()] * (matrix.ncols - len(factors))
    logger.debug(f"invariant factors {factors}")
    return factors


def poly_str(coefficients: tuple) -> str:
    return str(to_poly(coefficients).as_expr())
