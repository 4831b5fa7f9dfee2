import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..exceptions import ValidationError
from .semigroup import FiniteInverseSemigroup, ValidationReport, complete_scale, validate

logger = logging.getLogger(__name__)


def ecx(semigroup: FiniteInverseSemigroup, scale: dict) -> frozenset:
    """Nonzero idempotents ``p`` with ``N(g) >= 1`` for every ``g`` with ``g^-1 g = p``."""
    scale = complete_scale(semigroup, scale)
    result = set()
    for p in semigroup.nonzero_idempotents:
        if all(scale[g] >= 1 for g in semigroup.nonzero if semigroup.source(g) == p):
            result.add(p)
    return frozenset(result)


def icx(semigroup: FiniteInverseSemigroup, scale: dict, ecx_set=None) -> frozenset:
    """Nonzero ``g`` with ``N(g) = 1`` and ``g^-1 g`` in E_c^x."""
    scale = complete_scale(semigroup, scale)
    if ecx_set is None:
        ecx_set = ecx(semigroup, scale)
    return frozenset(
        g for g in semigroup.nonzero if scale[g] == 1 and semigroup.source(g) in ecx_set
    )


@dataclass
class CrystalResult:
    ecx: frozenset
    icx: frozenset
    semigroup: FiniteInverseSemigroup
    # origin[i] is the index in the input semigroup, None for the adjoined zero
    origin: tuple
    validation: ValidationReport

    @property
    def scale(self) -> dict:
        return {x: Fraction(1) for x in self.semigroup.nonzero}

    def to_json(self, source: FiniteInverseSemigroup) -> dict:
        return {
            "ecx": sorted(source.names[p] for p in self.ecx),
            "icx": sorted(source.names[g] for g in self.icx),
            "crystal": self.semigroup.to_json(self.scale),
            "crystal_valid": self.validation.ok,
        }


def _zero_name(semigroup: FiniteInverseSemigroup) -> str:
    if semigroup.zero is not None:
        return semigroup.names[semigroup.zero]
    name = "0"
    while name in semigroup.names:
        name += "'"
    return name


def crystal(semigroup: FiniteInverseSemigroup, scale: dict) -> CrystalResult:
    """
    The crystal ``I_c = I_c^x ∪ {0}`` with the truncated product ``g.h = gh`` if
    ``gh`` lies in I_c^x and ``0`` otherwise. The input is validated first and the
    crystal table is validated again.
    """
    report = validate(semigroup, scale)
    if not report.ok:
        raise ValidationError(report.reason, report.witness)
    ecx_set = ecx(semigroup, scale)
    icx_set = icx(semigroup, scale, ecx_set)

    origin = (None,) + tuple(sorted(icx_set))
    position = {g: i for i, g in enumerate(origin) if g is not None}
    table = tuple(
        tuple(
            position.get(semigroup.mul(g, h), 0) if g is not None and h is not None else 0
            for h in origin
        )
        for g in origin
    )
    names = (_zero_name(semigroup),) + tuple(semigroup.names[g] for g in origin[1:])
    result_semigroup = FiniteInverseSemigroup(names, table, 0)
    validation = validate(result_semigroup, {x: Fraction(1) for x in result_semigroup.nonzero})
    if not validation.ok:
        logger.error(f"crystal table fails validation: {validation.reason} {validation.witness}")
    logger.info(f"crystal: |E_c^x| = {len(ecx_set)}, |I_c| = {len(names)}")
    return CrystalResult(ecx_set, icx_set, result_semigroup, origin, validation)


@dataclass
class TransversalityReport:
    holds: bool
    witnesses: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def to_json(self):
        return {"holds": self.holds, "witnesses": self.witnesses, "failures": self.failures}


def transversality_check(semigroup: FiniteInverseSemigroup, scale: dict, ecx_set: Optional[frozenset] = None) -> TransversalityReport:
    """Every nonzero idempotent ``p`` is ``g^-1 g`` for some ``g`` with ``g g^-1`` in E_c^x."""
    if ecx_set is None:
        ecx_set = ecx(semigroup, scale)
    report = TransversalityReport(True)
    names = semigroup.names
    for p in semigroup.nonzero_idempotents:
        g = next(
            (g for g in semigroup.nonzero if semigroup.source(g) == p and semigroup.range(g) in ecx_set),
            None,
        )
        if g is None:
            report.holds = False
            report.failures.append(names[p])
        else:
            report.witnesses[names[p]] = names[g]
    return report
