import itertools
import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from sympy import gcd

from .. import SCALED_CRYSTAL_CONFIG
from ..exceptions import CheckProcessingError, InputError, UndecidedEquivalenceError
from ..finite import (
    CatalogEntry,
    b2,
    boundary_set,
    crystal,
    paterson,
    restriction_iso_certificate,
    shipped_catalog,
    transversality_check,
    validate,
)
from ..finite.catalog import antichain_with_zero
from ..hull import InverseHull, crystal_certificate_hull, hull_axioms_check, scale_consistency_check
from ..kms import (
    KmsEngine,
    TraceSpec,
    beta_threshold,
    class_counting_partition,
    kms_condition_check,
    positivity_check,
    random_spanning,
    unit,
    zero_temperature_check,
    zeta,
)
from ..ktheory import (
    IntMatrix,
    ModulePresentation,
    PolyMatrix,
    Substitution,
    Term,
    circle_theorem_check,
    cokernel,
    compose_substitutions,
    crystal_substitution_matrix,
    dynam_cokernels,
    edge_move_substitution,
    graph_e,
    graph_f,
    graph_substitution_matrix,
    qt_smith,
    smith_normal_form,
)
from ..ktheory.graph import EDGE_RANGE, VERTEX
from ..ktheory.poly import from_poly, to_poly
from ..monoid import AbelianMonoid, AxbMonoid, Disjoint, FreeMonoid, format_rational
from ..runner import CheckNode, OrderedPipeline, SuiteAnalyser
from .report import OK, VIOLATION, Report

logger = logging.getLogger(__name__)

SUITES = ("all", "monoid", "finite", "hull", "kms", "ktheory")


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: dict
    witness: Optional[dict] = None

    def to_json(self):
        return {"name": self.name, "passed": self.passed, "details": self.details, "witness": self.witness}


@dataclass(frozen=True)
class SuiteItem:
    name: str
    group: str
    func: Callable
    seed: int

    def run(self) -> CheckResult:
        # string seeds hash deterministically, independent of PYTHONHASHSEED
        return self.func(self.name, random.Random(f"{self.seed}:{self.name}"))


def run_check(item: SuiteItem) -> CheckResult:
    return item.run()


def _result(name, failures, details) -> CheckResult:
    if failures:
        return CheckResult(name, False, details, failures[0])
    return CheckResult(name, True, details)


# ----------------------------------------------------------------------
# lcm monoids


def monoid_families() -> list:
    return [
        ("free_2_3", FreeMonoid([2, 3])),
        ("abelian_1_2", AbelianMonoid([1, 2])),
        ("axb", AxbMonoid()),
    ]


def _monoid_check(monoid, bound=4, cutoff=6):
    def check(name, rng):
        failures = []
        elements = [x for x in monoid.enumerate_elements(bound) if monoid.scale_value(x) <= bound]
        for _ in range(1000):
            s, t = rng.choice(elements), rng.choice(elements)
            if monoid.scale_value(monoid.multiply(s, t)) != monoid.scale_value(s) * monoid.scale_value(t):
                failures.append({"reason": "scale not multiplicative", "s": s.to_json(), "t": t.to_json()})
                break

        common = [x for x in monoid.enumerate_elements(2 * bound)]
        for _ in range(100):
            s, t = rng.choice(elements), rng.choice(elements)
            meet = monoid.lcm(s, t)
            multiples = [x for x in common if monoid.left_divide(s, x) is not None and monoid.left_divide(t, x) is not None]
            if meet is Disjoint:
                if multiples:
                    failures.append({"reason": "disjoint ideals meet", "s": s.to_json(), "t": t.to_json(), "x": multiples[0].to_json()})
                continue
            r = meet.generator
            if monoid.left_divide(s, r) is None or monoid.left_divide(t, r) is None:
                failures.append({"reason": "lcm is not a common multiple", "s": s.to_json(), "t": t.to_json()})
            outside = [x for x in multiples if monoid.left_divide(r, x) is None]
            if outside:
                failures.append({"reason": "common multiple outside rS", "r": r.to_json(), "x": outside[0].to_json()})

        decided = 0
        for _ in range(100):
            s, t = rng.choice(elements), rng.choice(elements)
            try:
                generic = monoid.search_equivalence(s, t)
            except UndecidedEquivalenceError:
                continue
            decided += 1
            if generic != monoid.equivalent_mod_kernel(s, t):
                failures.append({"reason": "decider disagrees with search", "s": s.to_json(), "t": t.to_json()})

        kernel = monoid.kernel_elements(3)
        for _ in range(100):
            s, a, b = rng.choice(elements), rng.choice(kernel), rng.choice(kernel)
            x, y = monoid.multiply(s, a), monoid.multiply(s, b)
            p, q = monoid.solve_pq(x, y)
            if monoid.multiply(x, p) != monoid.multiply(y, q) or not (monoid.kernel_member(p) and monoid.kernel_member(q)):
                failures.append({"reason": "solve_pq", "x": x.to_json(), "y": y.to_json()})

        reps = [r.representative for r in monoid.class_representatives(cutoff)]
        for r1, r2 in itertools.combinations(reps, 2):
            if monoid.equivalent_mod_kernel(r1, r2):
                failures.append({"reason": "equivalent representatives", "r1": r1.to_json(), "r2": r2.to_json()})
                break
        for x in monoid.enumerate_elements(cutoff):
            if monoid.scale_value(x) <= cutoff and not any(monoid.equivalent_mod_kernel(x, r) for r in reps):
                failures.append({"reason": "element in no class", "x": x.to_json()})
                break

        condition = monoid.scale_condition_check(bound)
        if not condition.passed:
            failures.append({"reason": "scale condition", **condition.witness})
        details = {
            "family": monoid.descriptor(),
            "classes": len(reps),
            "decided_by_search": decided,
            "scale_condition_checked": condition.checked,
        }
        return _result(name, failures, details)

    return check


def _scale_condition_detects_failure(name, rng):
    # a free monoid with a kernel letter and a heavier letter violates the condition
    report = FreeMonoid([1, 2]).scale_condition_check(2)
    details = report.to_json()
    if report.passed:
        return CheckResult(name, False, details, {"reason": "disjoint ideals went unnoticed"})
    return CheckResult(name, True, details)


# ----------------------------------------------------------------------
# finite inverse semigroups


def _hereditary_witness(semigroup, ecx_set):
    for p in ecx_set:
        for q in semigroup.nonzero_idempotents:
            if semigroup.leq(p, q) and q not in ecx_set:
                return {"reason": "E_c^x is not upward closed", "p": semigroup.names[p], "q": semigroup.names[q]}
    return None


def _trivial_isomorphism_witness(semigroup, result):
    cs = result.semigroup
    for g, h in itertools.product(cs.nonzero, repeat=2):
        product = semigroup.mul(result.origin[g], result.origin[h])
        image = result.origin[cs.mul(g, h)]
        expected = None if semigroup.is_zero(product) else product
        if image != expected:
            return {"reason": "crystal of a trivial scale differs from I", "g": cs.names[g], "h": cs.names[h]}
    return None


def _finite_check(entry: CatalogEntry):
    def check(name, rng):
        semigroup, scale = entry.semigroup, entry.scale
        report = validate(semigroup, scale)
        if not report.ok:
            witness = {"semigroup": entry.name, "reason": report.reason, **report.witness}
            return CheckResult(name, False, {"validation": report.to_json()}, witness)
        result = crystal(semigroup, scale)
        boundary = boundary_set(semigroup, scale, result.ecx)
        groupoid = paterson(semigroup).verify()
        restriction = restriction_iso_certificate(semigroup, scale)
        transversality = transversality_check(semigroup, scale, result.ecx)

        failures = []
        if not result.validation.ok:
            failures.append({"reason": "crystal table invalid", **result.validation.witness})
        if not boundary.lemma_holds:
            failures.append({"reason": "boundary formulas disagree", **boundary.to_json(semigroup)})
        if not groupoid.passed:
            failures.append({"reason": "groupoid axioms", **groupoid.failure})
        if not restriction.passed:
            failures.append({"reason": "restriction isomorphism", **restriction.failure})
        hereditary = _hereditary_witness(semigroup, result.ecx)
        if hereditary:
            failures.append(hereditary)
        if all(v == 1 for v in scale.values()):
            isomorphism = _trivial_isomorphism_witness(semigroup, result)
            if isomorphism:
                failures.append(isomorphism)
        details = {
            "semigroup": entry.name,
            "ecx": sorted(semigroup.names[p] for p in result.ecx),
            "icx": sorted(semigroup.names[g] for g in result.icx),
            "crystal_elements": list(result.semigroup.names),
            "boundary": boundary.to_json(semigroup),
            "groupoid": groupoid.to_json(),
            "restriction": {k: v for k, v in restriction.to_json().items() if k != "mapping"},
            "transversality": transversality.to_json(),
        }
        return _result(name, failures, details)

    return check


def _boundary_empty_ecx(name, rng):
    entry = b2(2)
    boundary = boundary_set(entry.semigroup, entry.scale, ecx=frozenset())
    details = boundary.to_json(entry.semigroup)
    if not (boundary.lemma_holds and boundary.empty):
        return CheckResult(name, False, details, {"reason": "empty E_c^x must give an empty boundary set"})
    return CheckResult(name, True, details)


def _transversality_cases(name, rng):
    failures = []
    entry = b2(2)
    positive = transversality_check(entry.semigroup, entry.scale)
    if not positive.holds:
        failures.append({"reason": "B2 must be transversal", **positive.to_json()})
    antichain = antichain_with_zero()
    q = antichain.semigroup.index("q")
    negative = transversality_check(antichain.semigroup, antichain.scale, frozenset({q}))
    if negative.holds or negative.failures != ["p"]:
        failures.append({"reason": "p must fail to reach E_c^x = {q}", **negative.to_json()})
    details = {"b2": positive.to_json(), "antichain": negative.to_json()}
    return _result(name, failures, details)


# ----------------------------------------------------------------------
# inverse hulls


def _hull_check(monoid, bound):
    def check(name, rng):
        hull = InverseHull(monoid)
        samples = SCALED_CRYSTAL_CONFIG.get("hull_samples", 1000)
        certificate = crystal_certificate_hull(hull, bound)
        consistency = scale_consistency_check(hull, rng, samples)
        axioms = hull_axioms_check(hull, rng, samples)
        failures = [
            {"check": report_name, **(failure or {})}
            for report_name, passed, failure in (
                ("crystal_certificate", certificate.passed, certificate.failure),
                ("scale_consistency", consistency.passed, consistency.failure),
                ("axioms", axioms.passed, axioms.failure),
            )
            if not passed
        ]
        details = {
            "family": monoid.descriptor(),
            "certificate": certificate.to_json(),
            "scale_consistency": consistency.to_json(),
            "axioms": axioms.to_json(),
        }
        return _result(name, failures, details)

    return check


# ----------------------------------------------------------------------
# KMS states


def kms_families() -> list:
    return [
        ("free_2_2", FreeMonoid([2, 2]), TraceSpec.trivial(0), 2**12),
        (
            "abelian_1_2",
            AbelianMonoid([1, 2]),
            TraceSpec.mixture((Fraction(1, 2), TraceSpec.character(0)), (Fraction(1, 2), TraceSpec.character(Fraction(1, 3)))),
            2**12,
        ),
        ("axb", AxbMonoid(), TraceSpec.character(Fraction(1, 2)), 2000),
    ]


def _kms_check(monoid, trace, cutoff):
    def check(name, rng):
        threshold = beta_threshold(monoid)
        base = threshold.beta_star if threshold.beta_star is not None else threshold.abscissa + 0.5
        beta = base + 0.5
        engine = KmsEngine(monoid, beta, cutoff)
        samples = SCALED_CRYSTAL_CONFIG.get("kms_sample_pairs", 100)
        failures = []

        normalization = engine.value(trace, unit(monoid))
        if normalization != 1:
            failures.append({"reason": "phi(1) != 1", "value": normalization.real})

        condition = kms_condition_check(engine, trace, rng, samples)
        if not condition.passed:
            failures.append({"reason": "KMS condition", **condition.witness})
        positivity = positivity_check(engine, trace, rng, 20)
        if not positivity.passed:
            failures.append({"reason": "positivity", **positivity.witness})

        gauge_checked = 0
        for _ in range(samples):
            x = random_spanning(monoid, rng)
            if monoid.scale_value(x.s) != monoid.scale_value(x.t):
                gauge_checked += 1
                if engine.value(trace, x) != 0:
                    failures.append({"reason": "gauge invariance", "x": x.to_json()})
                    break

        partial = zeta(monoid, beta, cutoff).partial
        grouped = class_counting_partition(monoid, beta, cutoff)
        if abs(partial - grouped) > 1e-12 * partial:
            failures.append({"reason": "class counting disagrees with zeta", "zeta": partial, "grouped": grouped})

        cold = KmsEngine(monoid, 60.0, min(cutoff, 200))
        elements = [random_spanning(monoid, rng) for _ in range(50)]
        ground = zero_temperature_check(cold, trace, elements)
        if not ground.passed:
            failures.append({"reason": "zero temperature limit", **ground.witness})

        details = {
            "family": monoid.descriptor(),
            "threshold": threshold.to_json(),
            "beta": beta,
            "cutoff": format_rational(engine.cutoff),
            "zeta_partial": engine.zeta_partial,
            "tail": engine.tail,
            "kms_condition": condition.to_json(),
            "positivity": positivity.to_json(),
            "gauge_checked": gauge_checked,
            "zero_temperature": ground.to_json(),
        }
        return _result(name, failures, details)

    return check


# ----------------------------------------------------------------------
# K-theory


def _snf_check(name, rng):
    samples = SCALED_CRYSTAL_CONFIG.get("snf_samples", 1000)
    failures = []
    for _ in range(samples):
        m, n = rng.randint(1, 8), rng.randint(1, 8)
        a = IntMatrix.from_rows([[rng.randint(-100, 100) for _ in range(n)] for _ in range(m)])
        u, d, v = smith_normal_form(a)
        diagonal = d.diagonal()
        off_diagonal = any(d[i, j] for i in range(m) for j in range(n) if i != j)
        chain = all(
            (y == 0) if x == 0 else (y % x == 0)
            for x, y in zip(diagonal, diagonal[1:])
        )
        if u @ a @ v != d or off_diagonal or not chain or any(x < 0 for x in diagonal):
            failures.append({"reason": "Smith form", "matrix": a.to_json()})
            break
        if abs(u.det()) != 1 or abs(v.det()) != 1:
            failures.append({"reason": "transform is not unimodular", "matrix": a.to_json()})
            break

    square = 0
    while square < 200:
        a = IntMatrix.from_rows([[rng.randint(-4, 4) for _ in range(2)] for _ in range(2)])
        det = a.det()
        if det == 0:
            continue
        square += 1
        if cokernel(a).order != abs(det):
            failures.append({"reason": "|coker| != |det|", "matrix": a.to_json()})
            break

    pool = [(-2, 0, 1), (2, 1), (1, 0, 1), (0, 1), (-1, 1), (1, -3, 1)]
    for _ in range(50):
        entries = [rng.choice(pool) for _ in range(rng.randint(1, 3))]
        factors = qt_smith(PolyMatrix.diagonal([tuple(Fraction(c) for c in f) for f in entries]))
        product = to_poly(factors[0])
        for f in factors[1:]:
            product = product * to_poly(f)
        expected = to_poly(entries[0])
        divisor = to_poly(entries[0])
        for f in entries[1:]:
            expected = expected * to_poly(f)
            divisor = gcd(divisor, to_poly(f))
        if product != expected.monic() or factors[0] != from_poly(divisor.monic()):
            failures.append({"reason": "invariant factors", "diagonal": [list(map(str, f)) for f in entries]})
            break
    return _result(name, failures, {"snf_samples": samples, "square_samples": square})


def _random_presentation(rng, pool) -> tuple:
    """A presentation with diagonal drawn from ``pool``, mixed by row operations."""
    n = rng.randint(1, 4)
    diagonal = [rng.choice(pool) for _ in range(n)]
    polys = [to_poly(tuple(Fraction(c) for c in f)) for f in diagonal]
    rows = [[polys[i] if i == j else to_poly(()) for j in range(n)] for i in range(n)]
    # mix rows with integer polynomial multiples, which keeps the module fixed
    for _ in range(rng.randint(0, 3)):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            continue
        multiplier = to_poly(tuple(Fraction(rng.randint(-2, 2)) for _ in range(2)))
        rows[i] = [a + multiplier * b for a, b in zip(rows[i], rows[j])]
    return ModulePresentation.from_rows([[from_poly(p) for p in row] for row in rows], n), diagonal


def _circle_check(name, rng):
    failures = []
    irreducible = ModulePresentation.from_rows([[(-2, 0, 1)]])
    report = circle_theorem_check(irreducible)
    if not (report.hypothesis_t_regular and (report.dim_M_mod_1_minus_t, report.dim_M_mod_t) == (0, 0)):
        failures.append({"reason": "t^2 - 2", **report.to_json()})
    fixed = ModulePresentation.from_rows([[(-1, 1)]])
    report = circle_theorem_check(fixed)
    if report.hypothesis_t_regular or (report.dim_M_mod_1_minus_t, report.dim_M_mod_t) != (1, 0):
        failures.append({"reason": "t - 1", **report.to_json()})

    regular = [(-2, 0, 1), (2, 1), (1, 0, 1), ()]
    for _ in range(200):
        presentation, _ = _random_presentation(rng, regular)
        report = circle_theorem_check(presentation)
        if not (report.hypothesis_t_regular and report.isomorphic):
            failures.append({"reason": "regular presentation", **report.to_json()})
            break
    for bad in [(0, 1), (-1, 1)]:
        for _ in range(20):
            presentation, diagonal = _random_presentation(rng, regular + [bad] * 4)
            report = circle_theorem_check(presentation)
            if report.hypothesis_t_regular == (bad in diagonal):
                failures.append({"reason": "irregular factor not flagged", **report.to_json()})
                break
    return _result(name, failures, {"random_presentations": 200})


def _random_substitution(graph, rng) -> Substitution:
    images = {}
    for v in rng.sample(graph.vertices, rng.randint(1, 3)):
        terms = [Term(1, VERTEX, v)]
        for _ in range(rng.randint(0, 2)):
            if rng.random() < 0.5:
                terms.append(Term(rng.choice([1, -1]), VERTEX, rng.choice(graph.vertices)))
            else:
                terms.append(Term(rng.choice([1, -1]), EDGE_RANGE, rng.choice(graph.edges).name))
        images[v] = tuple(terms)
    return Substitution(images)


def expected_edge_move_matrix() -> IntMatrix:
    rows = [[int(i == j) for j in range(6)] for i in range(6)]
    rows[0][1] = 1
    rows[0][2] = -1
    return IntMatrix.from_rows(rows)


def _graph_check(name, rng):
    failures = []
    graph = graph_e()
    matrix = graph_substitution_matrix(graph, edge_move_substitution())
    if matrix != expected_edge_move_matrix():
        failures.append({"reason": "edge move matrix", "matrix": matrix.to_json()})
    for g in (graph, graph_f()):
        if crystal_substitution_matrix(g, edge_move_substitution()) != IntMatrix.identity(6):
            failures.append({"reason": "crystal matrix is not the identity"})
    for _ in range(50):
        first, second = _random_substitution(graph, rng), _random_substitution(graph, rng)
        composite = graph_substitution_matrix(graph, compose_substitutions(graph, first, second))
        product = graph_substitution_matrix(graph, second) @ graph_substitution_matrix(graph, first)
        if composite != product:
            failures.append({"reason": "functoriality", "first": first.to_json(), "second": second.to_json()})
            break
    return _result(name, failures, {"edge_move_matrix": matrix.to_json()})


def _dynamics_check(name, rng):
    failures = []
    sweep = {}
    for m in (1, 2, 3, 5):
        for truncation in range(m, 4 * m + 1):
            result = dynam_cokernels(m, truncation)
            sweep[f"{m}:{truncation}"] = [str(result.coker_one_minus_t), str(result.coker_t)]
            if not (result.coker_one_minus_t.is_cyclic_free() and result.coker_t.is_cyclic_free()):
                failures.append({"reason": "cokernels are not Z", **result.to_json()})
    return _result(name, failures, {"sweep": sweep})


# ----------------------------------------------------------------------


def suite_items(seed: int, suite: str = "all", catalog: Optional[list] = None) -> list:
    if suite not in SUITES:
        raise InputError(f"unknown suite {suite!r}, expected one of {SUITES}", "suite_items")
    if catalog is None:
        catalog = shipped_catalog()
    if not catalog:
        raise InputError("empty catalog", "suite_items")
    items = []

    def add(name, group, func):
        if suite in ("all", group):
            items.append(SuiteItem(name, group, func, seed))

    for name, monoid in monoid_families():
        add(f"monoid:{name}", "monoid", _monoid_check(monoid))
    add("monoid:scale_condition_failure", "monoid", _scale_condition_detects_failure)
    for entry in catalog:
        add(f"finite:{entry.name}", "finite", _finite_check(entry))
    add("finite:boundary_empty_ecx", "finite", _boundary_empty_ecx)
    add("finite:transversality", "finite", _transversality_cases)
    for (name, monoid), bound in zip(monoid_families(), (8, 4, 6)):
        add(f"hull:{name}", "hull", _hull_check(monoid, bound))
    for name, monoid, trace, cutoff in kms_families():
        add(f"kms:{name}", "kms", _kms_check(monoid, trace, cutoff))
    add("ktheory:snf", "ktheory", _snf_check)
    add("ktheory:circle", "ktheory", _circle_check)
    add("ktheory:graph", "ktheory", _graph_check)
    add("ktheory:dynamics", "ktheory", _dynamics_check)
    return items


def verify_suite(seed: int, catalog: Optional[list] = None, suite: str = "all", analyser: Optional[SuiteAnalyser] = None) -> Report:
    """
    Runs every certificate and property check on a worker pool and collects
    the results in a fixed order, so the report only depends on ``seed``,
    ``suite`` and the catalog.
    """
    items = suite_items(seed, suite, catalog)
    node = CheckNode(run_check)
    pipeline = OrderedPipeline([node])
    if analyser is not None:
        analyser.register([node])
    logger.info(f"verify suite {suite!r} with seed {seed}: {len(items)} checks")
    outputs = pipeline.run(items)

    results = []
    for item, output in zip(items, outputs):
        if isinstance(output, CheckProcessingError):
            output = CheckResult(
                item.name,
                False,
                {},
                {"error": type(output.origin_error).__name__, "message": str(output.origin_error)},
            )
        if not output.passed:
            logger.error(f"check {item.name} failed: {output.witness}")
        results.append(output)

    failed = [r for r in results if not r.passed]
    payload = {
        "seed": seed,
        "suite": suite,
        "checks": [r.to_json() for r in results],
        "summary": {"total": len(results), "passed": len(results) - len(failed), "failed": len(failed)},
    }
    provenance = {
        "finite": "crystal, boundary set and restricted groupoid of each catalog semigroup",
        "hull": "E_c^x = {p_sS : s in ker N} on the inverse hull",
        "kms": "phi(v_s v_t*) = zeta^-1 sum_{sr ~N tr} N(sr)^-beta tau(v_q v_p*)",
        "ktheory": "Smith forms, M/tM and M/(1-t)M, graph substitution and dynamics cokernels",
    }
    if failed:
        first = failed[0]
        return Report("verify", VIOLATION, payload, provenance, {"check": first.name, **(first.witness or {})})
    return Report("verify", OK, payload, provenance)
