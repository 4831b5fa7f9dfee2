from .report import EXIT_CODES, Report, error_report
from .schema import SCHEMAS, emit_schema
from .suite import SUITES, CheckResult, suite_items, verify_suite
from .main import build_parser, main, run

__all__ = [
    "EXIT_CODES",
    "Report",
    "error_report",
    "SCHEMAS",
    "emit_schema",
    "SUITES",
    "CheckResult",
    "suite_items",
    "verify_suite",
    "build_parser",
    "main",
    "run",
]
