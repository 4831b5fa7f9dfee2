import argparse
import json
import logging
import sys
import time

from tabulate import tabulate

from ..exceptions import (
    ConstructionError,
    DivergentError,
    FamilyMismatchError,
    InputError,
    NonAbelianKernelError,
    NonKernelError,
    ScaledCrystalError,
    UnknownNameError,
    ValidationError,
)
from ..finite import (
    boundary_set,
    crystal,
    load_catalog,
    load_table,
    restriction_iso_certificate,
    shipped_catalog,
    transversality_check,
    validate,
)
from ..kms import KmsEngine, SpanningElement, TraceSpec, beta_threshold, ground_value, zeta
from ..ktheory import (
    Graph,
    IntMatrix,
    ModulePresentation,
    PolyMatrix,
    Substitution,
    circle_theorem_check,
    cokernel,
    crystal_substitution_matrix,
    dynam_cokernels,
    edge_move_substitution,
    graph_substitution_matrix,
    named_graph,
    smith_normal_form,
    zt_quotients,
)
from ..ktheory.graph import GRAPHS
from ..monoid import element_from_json, family_from_descriptor, format_rational
from ..runner import SuiteAnalyser
from .report import ERROR, OK, VIOLATION, Report, error_report
from .schema import emit_schema
from .suite import SUITES, verify_suite

logger = logging.getLogger(__name__)

# exceptions that mean the input was unusable, reported with exit code 2
INPUT_ERRORS = (
    InputError,
    UnknownNameError,
    ConstructionError,
    DivergentError,
    NonAbelianKernelError,
    NonKernelError,
    FamilyMismatchError,
    OSError,
    json.JSONDecodeError,
)


def _read_json(path: str):
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def _parse_json_arg(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{what} is not valid JSON: {e}", "cli") from e


def _family(args):
    descriptor = {"family": args.family}
    if args.weights:
        descriptor["weights"] = [w.strip() for w in args.weights.split(",") if w.strip()]
    return family_from_descriptor(descriptor)


def _trace(args, monoid) -> TraceSpec:
    if args.trace:
        trace = TraceSpec.from_json(_read_json(args.trace))
    else:
        trace = TraceSpec.trivial(monoid.kernel_rank)
    trace.check_rank(monoid.kernel_rank)
    return trace


def _spanning(monoid, data) -> SpanningElement:
    if not isinstance(data, dict) or "s" not in data or "t" not in data:
        raise InputError(f"element needs 's' and 't' lists, got {data!r}", "cli")
    return SpanningElement(element_from_json(monoid, data["s"]), element_from_json(monoid, data["t"]))


def _complex_json(value: complex) -> dict:
    return {"re": value.real, "im": value.imag}


# ----------------------------------------------------------------------
# subcommands, each returns (report, human readable rows)


def cmd_crystal(args):
    if args.table:
        semigroup, scale = load_table(_read_json(args.table))
        name = args.table
    else:
        entries = {entry.name: entry for entry in shipped_catalog()}
        if args.name not in entries:
            raise UnknownNameError(args.name, "catalog semigroup")
        entry = entries[args.name]
        semigroup, scale, name = entry.semigroup, entry.scale, entry.name

    provenance = {
        "ecx": "E_c^x = {p : N(g) >= 1 for all g with g^-1 g = p}",
        "icx": "I_c^x = {g : N(g) = 1, g^-1 g in E_c^x}",
        "boundary": "Z = semicharacters vanishing off E_c^x = closure of {chi_p : p in E_c^x}",
    }
    report = validate(semigroup, scale)
    if not report.ok:
        witness = {"reason": report.reason, **report.witness}
        return Report("crystal", VIOLATION, {"semigroup": name, "validation": report.to_json()}, provenance, witness), [
            ("valid", False),
            ("reason", report.reason),
            ("witness", json.dumps(report.witness, sort_keys=True)),
        ]

    result = crystal(semigroup, scale)
    boundary = boundary_set(semigroup, scale, result.ecx)
    transversality = transversality_check(semigroup, scale, result.ecx)
    restriction = restriction_iso_certificate(semigroup, scale)
    payload = {
        "semigroup": name,
        **result.to_json(semigroup),
        "boundary": boundary.to_json(semigroup),
        "transversality": transversality.to_json(),
        "restriction": restriction.to_json(),
    }
    witness = None
    if not boundary.lemma_holds:
        witness = {"reason": "boundary formulas disagree", **boundary.to_json(semigroup)}
    elif not restriction.passed:
        witness = {"reason": "restriction isomorphism", **restriction.failure}
    elif not result.validation.ok:
        witness = {"reason": result.validation.reason, **result.validation.witness}
    status = OK if witness is None else VIOLATION
    rows = [
        ("E_c^x", "{" + ", ".join(sorted(semigroup.names[p] for p in result.ecx)) + "}"),
        ("I_c", "{" + ", ".join(result.semigroup.names) + "}"),
        ("boundary", "{" + ", ".join(chi.label(semigroup) for chi in boundary.complement) + "}"),
        ("transversal", transversality.holds),
        ("restriction iso", restriction.passed),
    ]
    return Report("crystal", status, payload, provenance, witness), rows


def cmd_zeta(args):
    monoid = _family(args)
    result = zeta(monoid, args.beta, args.cutoff)
    try:
        threshold = beta_threshold(monoid).to_json()
    except DivergentError:
        threshold = None
    payload = {"family": monoid.descriptor(), "zeta": result.to_json(), "threshold": threshold}
    provenance = {
        "partial": "sum over ~N classes [r] with N(r) <= C of N(r)^-beta",
        "tail": "sum_{N(s) > C} N(s)^-beta <= C^-delta zeta_N(beta - delta)",
    }
    rows = [
        ("family", repr(monoid)),
        ("beta", result.beta),
        ("cutoff", format_rational(result.cutoff)),
        ("partial sum", f"{result.partial:.10g}"),
        ("closed form", "-" if result.closed_form is None else f"{result.closed_form:.10g}"),
        ("tail bound", f"{result.tail:.3g}" + ("" if result.rigorous else " (estimate)")),
        ("classes", result.classes_used),
        ("divergent", result.divergent),
    ]
    return Report("zeta", OK, payload, provenance), rows


def _kms_query(args):
    if args.query:
        query = _read_json(args.query)
        if not isinstance(query, dict):
            raise InputError("a KMS query is a JSON object", "cli")
        monoid = family_from_descriptor(query["family"]) if "family" in query else _family(args)
        try:
            beta, cutoff, element = float(query["beta"]), query["cutoff"], query["element"]
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"malformed KMS query: {e!r}", "cli") from e
        trace = TraceSpec.from_json(query["trace"]) if "trace" in query else _trace(args, monoid)
        trace.check_rank(monoid.kernel_rank)
        return monoid, beta, cutoff, trace, element
    if args.beta is None or args.element is None:
        raise InputError("kms needs --beta and --element, or --query", "cli")
    monoid = _family(args)
    return monoid, args.beta, args.cutoff, _trace(args, monoid), _parse_json_arg(args.element, "--element")


def cmd_kms(args):
    monoid, beta, cutoff, trace, element = _kms_query(args)
    x = _spanning(monoid, element)
    result = KmsEngine(monoid, beta, cutoff).result(trace, x)
    payload = {"family": monoid.descriptor(), "element": x.to_json(), "trace": trace.to_json(), **result.to_json()}
    provenance = {
        "value": "phi(v_s v_t*) = Z_C^-1 sum_{N(r) <= C, sr ~N tr} N(sr)^-beta tau(v_q v_p*)",
        "zeta": "Z_C = sum over ~N classes with N(r) <= C of N(r)^-beta",
    }
    rows = [
        ("family", repr(monoid)),
        ("element", repr(x)),
        ("beta", beta),
        ("value", f"{result.value.real:.10g} + {result.value.imag:.10g}i"),
        ("zeta", f"{result.zeta_partial:.10g}"),
        ("tail", f"{result.tail:.3g}"),
        ("allowance", f"{result.allowance:.3g}"),
        ("classes", result.classes_used),
        ("closed form", result.closed_form),
    ]
    return Report("kms", OK, payload, provenance), rows


def cmd_ground(args):
    monoid = _family(args)
    if args.element is None:
        raise InputError("ground needs --element", "cli")
    trace = _trace(args, monoid)
    x = _spanning(monoid, _parse_json_arg(args.element, "--element"))
    value = ground_value(monoid, trace, x)
    payload = {"family": monoid.descriptor(), "element": x.to_json(), "value": _complex_json(value)}
    provenance = {"value": "psi_tau(v_s v_t*) = tau(v_s v_t*) on ker N, 0 elsewhere"}
    rows = [("family", repr(monoid)), ("element", repr(x)), ("value", f"{value.real:.10g} + {value.imag:.10g}i")]
    return Report("ground", OK, payload, provenance), rows


def _ktheory_matrix(path):
    matrix = PolyMatrix.from_json(_read_json(path))
    if all(len(entry) <= 1 for row in matrix.rows for entry in row):
        integer = matrix.integer_at(0)
        u, d, v = smith_normal_form(integer)
        group = cokernel(integer)
        payload = {"matrix": integer.to_json(), "smith": d.diagonal(), "U": u.to_json(), "V": v.to_json(), "cokernel": group.to_json()}
        return OK, payload, None, [("smith diagonal", d.diagonal()), ("cokernel", str(group))]
    presentation = ModulePresentation(matrix.ncols, matrix)
    report = circle_theorem_check(presentation)
    payload = {"presentation": presentation.to_json(), "circle": report.to_json()}
    rows = [
        ("invariant factors", ", ".join(report.to_json()["invariant_factors"])),
        ("dim M/(1-t)M", report.dim_M_mod_1_minus_t),
        ("dim M/tM", report.dim_M_mod_t),
        ("t-regular", report.hypothesis_t_regular),
    ]
    if matrix.is_integral:
        quotients = zt_quotients(presentation)
        payload["integer_quotients"] = quotients.to_json()
        rows += [("M/tM", str(quotients.at_t_equals_0)), ("M/(1-t)M", str(quotients.at_t_equals_1))]
    witness = None
    if report.hypothesis_t_regular and not report.isomorphic:
        witness = {"reason": "t-regular module with unequal quotients", **report.to_json()}
    return (OK if witness is None else VIOLATION), payload, witness, rows


def _ktheory_graph(args):
    graph = named_graph(args.graph) if args.graph in GRAPHS else Graph.from_json(_read_json(args.graph))
    substitution = (
        Substitution.from_json(_read_json(args.substitution)) if args.substitution else edge_move_substitution()
    )
    k0 = graph_substitution_matrix(graph, substitution)
    vertex = crystal_substitution_matrix(graph, substitution)
    payload = {
        "graph": graph.to_json(),
        "substitution": substitution.to_json(),
        "k0_matrix": k0.to_json(),
        "crystal_matrix": vertex.to_json(),
        "crystal_identity": vertex == IntMatrix.identity(len(graph.vertices)),
    }
    headers = list(graph.vertices)
    rows = [
        ("K_0 matrix", "\n" + tabulate(k0.rows, headers, showindex=headers)),
        ("crystal matrix", "\n" + tabulate(vertex.rows, headers, showindex=headers)),
    ]
    return payload, rows


def _ktheory_dynamics(text):
    try:
        m, truncation = (int(part) for part in text.split(","))
    except ValueError as e:
        raise InputError(f"--dynamics expects 'm,T', got {text!r}", "cli") from e
    result = dynam_cokernels(m, truncation)
    rows = [("coker(1 - t)", str(result.coker_one_minus_t)), ("coker(t)", str(result.coker_t))]
    return result.to_json(), rows


def cmd_ktheory(args):
    if not (args.matrix or args.graph or args.dynamics):
        raise InputError("ktheory needs --matrix, --graph or --dynamics", "cli")
    payload, rows, status, witness = {}, [], OK, None
    if args.matrix:
        status, payload["matrix"], witness, matrix_rows = _ktheory_matrix(args.matrix)
        rows += matrix_rows
    if args.graph:
        payload["graph"], graph_rows = _ktheory_graph(args)
        rows += graph_rows
    if args.dynamics:
        payload["dynamics"], dynamics_rows = _ktheory_dynamics(args.dynamics)
        rows += dynamics_rows
    provenance = {
        "cokernel": "Z^n / row space, read off the Smith normal form",
        "circle": "dim M/(1-t)M = dim M/tM when t is injective without fixed points on M (x) Q",
        "graph": "[p_v] -> sum of images of the substitution in K_0",
        "dynamics": "coker(iota - t) and coker(t) on the truncations M_T",
    }
    return Report("ktheory", status, payload, provenance, witness), rows


def cmd_verify(args, analyser):
    catalog = load_catalog(_read_json(args.catalog)) if args.catalog else None
    report = verify_suite(args.seed, catalog, args.suite, analyser)
    summary = report.payload["summary"]
    rows = [(check["name"], "ok" if check["passed"] else "FAILED") for check in report.payload["checks"]]
    rows.append(("total", f"{summary['passed']}/{summary['total']} passed"))
    return report, rows


# ----------------------------------------------------------------------


def _family_arguments(parser, beta_required=False):
    parser.add_argument("--family", choices=["free", "abelian", "axb"], default="axb")
    parser.add_argument("--weights", help="comma separated generator weights, e.g. '2,3' or '1,5/2'")
    parser.add_argument("--beta", type=float, required=beta_required)
    parser.add_argument("--cutoff", default="1000", help="class cutoff C as 'p/q'")
    parser.add_argument("--trace", help="trace JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scaled-crystal",
        description="Crystals, partition functions, KMS values and K-theory quotients of scaled semigroups.",
    )
    parser.add_argument("--json", metavar="PATH", help="also write the JSON report to PATH")
    parser.add_argument("--emit-schema", action="store_true", help="print the JSON input and report schemas")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true")
    verbosity.add_argument("-q", "--quiet", action="store_true")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("crystal", help="crystal, boundary set and certificates of a finite inverse semigroup")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--table", help="semigroup table JSON file")
    source.add_argument("--name", help="name of a shipped catalog semigroup")

    p = sub.add_parser("zeta", help="partition function of a monoid family")
    _family_arguments(p, beta_required=True)

    p = sub.add_parser("kms", help="value of a low temperature KMS state")
    _family_arguments(p)
    p.add_argument("--element", help='spanning element as JSON, e.g. \'{"s": [1], "t": [1]}\'')
    p.add_argument("--query", help="KMS query JSON file")

    p = sub.add_parser("ground", help="value of a ground state")
    _family_arguments(p)
    p.add_argument("--element", required=True)

    p = sub.add_parser("ktheory", help="Smith forms, circle quotients, graph substitutions and dynamics")
    p.add_argument("--matrix", help="integer or polynomial matrix JSON file")
    p.add_argument("--graph", help="'E', 'F' or a graph JSON file")
    p.add_argument("--substitution", help="substitution JSON file, the edge move by default")
    p.add_argument("--dynamics", metavar="m,T")

    p = sub.add_parser("verify", help="run the certificate and property suites")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--catalog", help="catalog JSON file replacing the shipped catalog")
    return parser


COMMANDS = {
    "crystal": cmd_crystal,
    "zeta": cmd_zeta,
    "kms": cmd_kms,
    "ground": cmd_ground,
    "ktheory": cmd_ktheory,
}


def _print_human(report: Report, rows) -> None:
    print(f"{report.command}: {report.status}")
    if rows:
        print(tabulate([(k, v) for k, v in rows], tablefmt="simple"))
    if report.witness is not None:
        print("witness: " + json.dumps(report.witness, sort_keys=True))


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0

    level = logging.DEBUG if args.verbose else logging.ERROR if args.quiet else logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    if args.emit_schema:
        print(json.dumps(emit_schema(), sort_keys=True, indent=2))
        return 0
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2

    analyser = SuiteAnalyser()
    start_time = time.perf_counter()
    rows = []
    try:
        if args.command == "verify":
            report, rows = cmd_verify(args, analyser)
        else:
            report, rows = COMMANDS[args.command](args)
    except ValidationError as e:
        report = Report(args.command, VIOLATION, {}, {}, {"reason": e.reason, **e.witness})
    except INPUT_ERRORS as e:
        logger.error(f"{args.command}: {e}")
        report = error_report(args.command, e)
    except ScaledCrystalError as e:
        logger.exception(f"{args.command} failed")
        report = error_report(args.command, e)

    _print_human(report, rows)
    if args.command == "verify" and report.status != ERROR and not args.quiet:
        print(analyser.report())
    if not args.quiet:
        print(f"elapsed {time.perf_counter() - start_time:.2f}s")
    if args.json:
        report.write(args.json)
    return report.exit_code


def main() -> None:
    sys.exit(run(sys.argv[1:]))
