import logging
from dataclasses import dataclass

from ..exceptions import InputError
from .poly import PolyMatrix, evaluate, poly_str, qt_smith
from .smith import AbelianInvariants, cokernel

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ModulePresentation:
    """``Z[t]^generators`` (or ``Q[t]^generators``) modulo the rows of ``relations``."""

    generators: int
    relations: PolyMatrix

    def __post_init__(self):
        if self.relations.ncols != self.generators:
            raise InputError(
                f"{self.relations.ncols} relation columns for {self.generators} generators",
                "ModulePresentation",
            )

    @classmethod
    def from_rows(cls, rows, generators=None) -> "ModulePresentation":
        matrix = PolyMatrix.from_rows(rows, generators)
        return cls(matrix.ncols, matrix)

    @classmethod
    def free(cls, generators: int) -> "ModulePresentation":
        return cls(generators, PolyMatrix((), generators))

    @classmethod
    def from_json(cls, data) -> "ModulePresentation":
        matrix = PolyMatrix.from_json(data)
        return cls(matrix.ncols, matrix)

    def to_json(self):
        return self.relations.to_json()


@dataclass
class ZtQuotients:
    at_t_equals_0: AbelianInvariants
    at_t_equals_1: AbelianInvariants

    def to_json(self):
        return {
            "at_t_equals_0": self.at_t_equals_0.to_json(),
            "at_t_equals_1": self.at_t_equals_1.to_json(),
        }


def zt_quotients(presentation: ModulePresentation) -> ZtQuotients:
    """``M/tM`` and ``M/(1-t)M`` as integer cokernels of the relations at ``t = 0, 1``."""
    relations = presentation.relations
    return ZtQuotients(cokernel(relations.integer_at(0)), cokernel(relations.integer_at(1)))


@dataclass
class CircleReport:
    hypothesis_fg: bool
    hypothesis_t_regular: bool
    dim_M_mod_1_minus_t: int
    dim_M_mod_t: int
    invariant_factors: list
    failing_factors: list

    @property
    def isomorphic(self) -> bool:
        return self.dim_M_mod_1_minus_t == self.dim_M_mod_t

    def to_json(self):
        return {
            "hypothesis_fg": self.hypothesis_fg,
            "hypothesis_t_regular": self.hypothesis_t_regular,
            "dim_M_mod_1_minus_t": self.dim_M_mod_1_minus_t,
            "dim_M_mod_t": self.dim_M_mod_t,
            "isomorphic": self.isomorphic,
            "invariant_factors": [poly_str(f) for f in self.invariant_factors],
            "failing_factors": [poly_str(f) for f in self.failing_factors],
        }


def circle_theorem_check(presentation: ModulePresentation) -> CircleReport:
    """
    ``t`` acts injectively without nonzero fixed points on ``M ⊗ Q`` iff every
    nonzero invariant factor ``f`` has ``f(0) != 0`` and ``f(1) != 0``; then both
    quotients have dimension equal to the free rank.
    """
    relations = presentation.relations
    factors = qt_smith(relations)
    failing = [f for f in factors if f and (evaluate(f, 0) == 0 or evaluate(f, 1) == 0)]
    n = presentation.generators
    report = CircleReport(
        True,
        not failing,
        n - relations.rational_rank_at(1),
        n - relations.rational_rank_at(0),
        factors,
        failing,
    )
    if report.hypothesis_t_regular and not report.isomorphic:
        logger.error(f"t-regular presentation with unequal quotients: {report.to_json()}")
    return report
