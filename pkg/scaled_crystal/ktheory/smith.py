import logging
from dataclasses import dataclass
from typing import Callable

from sympy import ZZ
from sympy.polys.matrices import DomainMatrix

from ..exceptions import InputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix, rows are relations and columns generators."""

    rows: tuple
    ncols: int

    @classmethod
    def from_rows(cls, rows, ncols=None) -> "IntMatrix":
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        if ncols is None:
            if not rows:
                raise InputError("an empty matrix needs an explicit column count", "IntMatrix")
            ncols = len(rows[0])
        if any(len(row) != ncols for row in rows):
            raise InputError(f"rows must all have {ncols} entries", "IntMatrix")
        return cls(rows, ncols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple:
        return self.nrows, self.ncols

    def __getitem__(self, index):
        i, j = index
        return self.rows[i][j]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        assert self.ncols == other.nrows, f"shapes {self.shape} and {other.shape} do not match"
        columns = list(zip(*other.rows)) if other.rows else [()] * other.ncols
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in columns) for row in self.rows),
            other.ncols,
        )

    def det(self) -> int:
        assert self.nrows == self.ncols, "determinant of a non-square matrix"
        if self.nrows == 0:
            return 1
        return int(DomainMatrix.from_list([list(row) for row in self.rows], ZZ).det())

    def diagonal(self) -> tuple:
        return tuple(self.rows[i][i] for i in range(min(self.shape)))

    def to_json(self):
        return {"rows": [list(row) for row in self.rows], "ncols": self.ncols}


@dataclass(frozen=True)
class EuclideanRing:
    """Arithmetic of a Euclidean domain as used by the Smith reduction."""

    zero: object
    one: object
    size: Callable
    quotient: Callable
    normalizer: Callable


INTEGERS = EuclideanRing(
    zero=0,
    one=1,
    size=abs,
    quotient=lambda a, b: a // b,
    normalizer=lambda a: -1 if a < 0 else 1,
)


def _is_zero(ring: EuclideanRing, x) -> bool:
    return x == ring.zero


def smith_reduce(ring: EuclideanRing, matrix: list, ncols: int = None):
    """
    Reduces ``matrix`` (a list of row lists, modified in place) to Smith form
    over ``ring`` and returns ``(U, D, V)`` with ``U A V = D``. Pivots are the
    entries of least size in the remaining block.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else (ncols or 0)
    d = matrix
    u = [[ring.one if i == j else ring.zero for j in range(m)] for i in range(m)]
    v = [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        d[i], d[k] = d[k], d[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        for row in d:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]

    def add_row(target, source, factor):
        # row_target += factor * row_source
        d[target] = [a + factor * b for a, b in zip(d[target], d[source])]
        u[target] = [a + factor * b for a, b in zip(u[target], u[source])]

    def add_col(target, source, factor):
        for row in d:
            row[target] = row[target] + factor * row[source]
        for row in v:
            row[target] = row[target] + factor * row[source]

    def scale_row(i, unit):
        d[i] = [unit * a for a in d[i]]
        u[i] = [unit * a for a in u[i]]

    def least(cells):
        cells = [(ring.size(d[i][j]), i, j) for i, j in cells if not _is_zero(ring, d[i][j])]
        return min(cells, key=lambda c: (c[0], c[1], c[2])) if cells else None

    for s in range(min(m, n)):
        pivot = least((i, j) for i in range(s, m) for j in range(s, n))
        if pivot is None:
            break
        _, i, j = pivot
        swap_rows(s, i)
        swap_cols(s, j)
        while True:
            p = d[s][s]
            for i in range(s + 1, m):
                if not _is_zero(ring, d[i][s]):
                    add_row(i, s, -ring.quotient(d[i][s], p))
            for j in range(s + 1, n):
                if not _is_zero(ring, d[s][j]):
                    add_col(j, s, -ring.quotient(d[s][j], p))
            edge = least([(i, s) for i in range(s + 1, m)] + [(s, j) for j in range(s + 1, n)])
            if edge is not None:
                _, i, j = edge
                if j == s:
                    swap_rows(s, i)
                else:
                    swap_cols(s, j)
                continue
            # the pivot must divide the remaining block
            offender = next(
                (
                    i
                    for i in range(s + 1, m)
                    for j in range(s + 1, n)
                    if not _is_zero(ring, d[i][j] - ring.quotient(d[i][j], p) * p)
                ),
                None,
            )
            if offender is None:
                break
            logger.debug(f"pivot {p} does not divide row {offender}, merging rows")
            add_row(s, offender, ring.one)
        scale_row(s, ring.normalizer(d[s][s]))
    return u, d, v


@dataclass
class AbelianInvariants:
    free_rank: int
    torsion: tuple

    @property
    def order(self):
        """The group order, ``None`` when infinite."""
        if self.free_rank:
            return None
        order = 1
        for t in self.torsion:
            order *= t
        return order

    def is_cyclic_free(self) -> bool:
        return self.free_rank == 1 and not self.torsion

    def __str__(self) -> str:
        parts = [f"Z/{t}" for t in self.torsion]
        if self.free_rank:
            parts.insert(0, "Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        return {"free_rank": self.free_rank, "torsion": list(self.torsion), "group": str(self)}


def smith_normal_form(matrix: IntMatrix) -> tuple:
    """``(U, D, V)`` with ``U A V = D``, ``U, V`` unimodular and ``d1 | d2 | ...``."""
    u, d, v = smith_reduce(INTEGERS, [list(row) for row in matrix.rows], matrix.ncols)
    return (
        IntMatrix.from_rows(u, matrix.nrows),
        IntMatrix(tuple(tuple(row) for row in d), matrix.ncols),
        IntMatrix.from_rows(v, matrix.ncols),
    )


def rank(matrix: IntMatrix) -> int:
    _, d, _ = smith_normal_form(matrix)
    return sum(1 for x in d.diagonal() if x)


def cokernel(matrix: IntMatrix) -> AbelianInvariants:
    """Invariants of ``Z^ncols`` modulo the row space."""
    _, d, _ = smith_normal_form(matrix)
    diagonal = [x for x in d.diagonal() if x]
    return AbelianInvariants(matrix.ncols - len(diagonal), tuple(x for x in diagonal if x > 1))
