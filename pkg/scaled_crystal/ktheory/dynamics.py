import logging
from dataclasses import dataclass

from ..exceptions import InputError
from .smith import AbelianInvariants, IntMatrix, cokernel, rank

logger = logging.getLogger(__name__)


@dataclass
class DynamCokernels:
    m: int
    truncation: int
    coker_one_minus_t: AbelianInvariants
    coker_t: AbelianInvariants
    kernel_rank_one_minus_t: int
    kernel_rank_t: int

    def to_json(self):
        return {
            "m": self.m,
            "truncation": self.truncation,
            "coker_one_minus_t": self.coker_one_minus_t.to_json(),
            "coker_t": self.coker_t.to_json(),
            "kernel_rank_one_minus_t": self.kernel_rank_one_minus_t,
            "kernel_rank_t": self.kernel_rank_t,
        }


def _basis_index(truncation: int, m: int):
    # delta_0..delta_{T-1} first, then h_0..h_{m-1}
    def delta(i):
        return i

    def h(j):
        return truncation + j

    return delta, h


def truncation_maps(m: int, truncation: int) -> tuple:
    """
    The inclusion and the shift ``t`` from ``M_T`` to ``M_{T+1}`` as relation
    matrices (one row per basis vector of ``M_T``). ``h_j`` is the indicator of
    the cycle point ``w_j`` together with the orbit points ``n >= T`` shadowing it.
    """
    size_next = truncation + 1 + m
    delta, h = _basis_index(truncation, m)
    delta_next, h_next = _basis_index(truncation + 1, m)

    def vector(*entries):
        row = [0] * size_next
        for index, value in entries:
            row[index] += value
        return row

    inclusion, shift = [], []
    for i in range(truncation):
        inclusion.append(vector((delta_next(i), 1)))
        shift.append(vector((delta_next(i + 1), 1)))
    for j in range(m):
        entries = [(h_next(j), 1)]
        if truncation % m == j:
            entries.append((delta_next(truncation), 1))
        inclusion.append(vector(*entries))
        shift.append(vector((h_next((j + 1) % m), 1)))
    return IntMatrix.from_rows(inclusion, size_next), IntMatrix.from_rows(shift, size_next)


def dynam_cokernels(m: int, truncation: int) -> DynamCokernels:
    """
    Cokernels of ``1 - t`` and ``t`` on the truncated model of ``C(Y; Z)``:
    an orbit ``0, 1, 2, ...`` accumulating on an ``m``-cycle, with ``t`` the
    shift (zero fill at the boundary point) and rotation on the cycle.
    """
    if m < 1:
        raise InputError(f"cycle length must be positive, got {m}", "dynam_cokernels")
    if truncation < m:
        raise InputError(f"truncation {truncation} is shorter than the cycle {m}", "dynam_cokernels")
    inclusion, shift = truncation_maps(m, truncation)
    difference = IntMatrix.from_rows(
        [[a - b for a, b in zip(r, s)] for r, s in zip(inclusion.rows, shift.rows)], inclusion.ncols
    )
    result = DynamCokernels(
        m,
        truncation,
        cokernel(difference),
        cokernel(shift),
        difference.nrows - rank(difference),
        shift.nrows - rank(shift),
    )
    logger.debug(f"dynamics m={m} T={truncation}: {result.coker_one_minus_t}, {result.coker_t}")
    return result
