import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction

from ..exceptions import InputError
from .semigroup import FiniteInverseSemigroup, load_table, trivial_scale

logger = logging.getLogger(__name__)


@dataclass
class CatalogEntry:
    name: str
    semigroup: FiniteInverseSemigroup
    scale: dict

    def to_json(self) -> dict:
        return {"name": self.name, **self.semigroup.to_json(self.scale)}


B2_NAMES = ("0", "e11", "e22", "e12", "e21")
_B2_UNITS = {"e11": (1, 1), "e22": (2, 2), "e12": (1, 2), "e21": (2, 1)}


def b2_semigroup() -> FiniteInverseSemigroup:
    """The 2x2 matrix units with zero, ``e_ij e_kl = [j = k] e_il``."""

    def product(x, y):
        if x == "0" or y == "0":
            return "0"
        (i, j), (k, l) = _B2_UNITS[x], _B2_UNITS[y]
        return f"e{i}{l}" if j == k else "0"

    return FiniteInverseSemigroup.from_function(B2_NAMES, product, zero="0")


def b2(lam=2) -> CatalogEntry:
    lam = Fraction(lam)
    semigroup = b2_semigroup()
    scale = trivial_scale(semigroup)
    scale[semigroup.index("e12")] = lam
    scale[semigroup.index("e21")] = 1 / lam
    return CatalogEntry(f"b2_lambda_{lam}".replace("/", "_"), semigroup, scale)


def chain(n: int) -> CatalogEntry:
    """Idempotents ``c0 >= c1 >= ... >= c(n-1)`` without zero."""
    semigroup = FiniteInverseSemigroup.from_function(
        range(n), max, name=lambda i: f"c{i}"
    )
    return CatalogEntry(f"chain_{n}", semigroup, trivial_scale(semigroup))


def antichain_with_zero() -> CatalogEntry:
    """Two idempotents ``p, q`` with ``pq = 0``."""
    semigroup = FiniteInverseSemigroup.from_function(
        ("0", "p", "q"), lambda x, y: x if x == y else "0", zero="0"
    )
    return CatalogEntry("antichain_with_zero", semigroup, trivial_scale(semigroup))


def diamond() -> CatalogEntry:
    """``1 >= p, q >= 0`` with ``pq = 0``: four idempotents."""

    def product(x, y):
        if x == "1":
            return y
        if y == "1":
            return x
        return x if x == y else "0"

    semigroup = FiniteInverseSemigroup.from_function(("0", "1", "p", "q"), product, zero="0")
    return CatalogEntry("diamond", semigroup, trivial_scale(semigroup))


def _partial_map_name(f: tuple) -> str:
    return "".join("-" if v is None else str(v + 1) for v in f)


def symmetric_inverse_monoid(n: int) -> CatalogEntry:
    """Partial bijections of ``{1..n}``; ``fg`` applies ``g`` first."""
    maps = []
    for images in itertools.product([None, *range(n)], repeat=n):
        defined = [v for v in images if v is not None]
        if len(defined) == len(set(defined)):
            maps.append(images)
    maps.sort(key=lambda f: (sum(v is not None for v in f), _partial_map_name(f)))

    def product(f, g):
        return tuple(None if g[x] is None else f[g[x]] for x in range(n))

    empty = (None,) * n
    semigroup = FiniteInverseSemigroup.from_function(maps, product, zero=empty, name=_partial_map_name)
    return CatalogEntry(f"symmetric_inverse_monoid_{n}", semigroup, trivial_scale(semigroup))


def single_idempotent() -> CatalogEntry:
    semigroup = FiniteInverseSemigroup(("1",), ((0,),), None)
    return CatalogEntry("single_idempotent", semigroup, trivial_scale(semigroup))


def zero_semigroup() -> CatalogEntry:
    semigroup = FiniteInverseSemigroup(("0",), ((0,),), 0)
    return CatalogEntry("zero", semigroup, {})


def shipped_catalog() -> list:
    catalog = [b2(Fraction(1, 2)), b2(2), b2(3), b2(1)]
    catalog[-1].name = "b2_trivial"
    catalog += [chain(n) for n in range(1, 5)]
    catalog += [
        antichain_with_zero(),
        diamond(),
        symmetric_inverse_monoid(2),
        single_idempotent(),
        zero_semigroup(),
    ]
    return catalog


def load_catalog(data) -> list:
    """A user catalog is ``{"semigroups": [{"name": ..., <table fields>}, ...]}``."""
    try:
        items = data["semigroups"]
    except (KeyError, TypeError) as e:
        raise InputError("catalog needs a 'semigroups' list", "load_catalog") from e
    catalog = []
    for i, item in enumerate(items):
        semigroup, scale = load_table(item)
        catalog.append(CatalogEntry(str(item.get("name", f"semigroup_{i}")), semigroup, scale))
    logger.info(f"loaded catalog with {len(catalog)} semigroups")
    return catalog
