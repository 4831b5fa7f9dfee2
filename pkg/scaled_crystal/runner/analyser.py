import functools
import logging
import time
from collections import defaultdict

from gevent.lock import Semaphore
from tabulate import tabulate

from ..exceptions import CheckProcessingError

logger = logging.getLogger(__name__)


class SuiteAnalyser:
    """Execution count and time per check, keyed by check name."""

    class FuncInfo:
        def __init__(self):
            self.exec_count = 0
            self.exec_time = 0.0
            self.failures = 0

    def __init__(self):
        self.func_info = defaultdict(self.FuncInfo)
        self.func_lock = defaultdict(Semaphore)

    def register(self, nodes) -> None:
        for node in nodes:
            node.add_proc_decorator(self.decorator)

    def record(self, name: str, exec_time: float, failed: bool = False) -> None:
        with self.func_lock[name]:
            info = self.func_info[name]
            info.exec_count += 1
            info.exec_time += exec_time
            info.failures += int(failed)

    def decorator(self, func):
        @functools.wraps(func)
        def exec_time_wrapper(data):
            start_time = time.perf_counter()
            result = func(data)
            name = getattr(data, "name", func.__name__)
            failed = isinstance(result, CheckProcessingError) or not getattr(result, "passed", True)
            self.record(name, time.perf_counter() - start_time, failed)
            return result

        return exec_time_wrapper

    def report(self) -> str:
        headers = ["Check", "Count", "Failed", "Time", "Avg"]
        table = []
        for name in sorted(self.func_info):
            info = self.func_info[name]
            table.append(
                [
                    name,
                    info.exec_count,
                    info.failures,
                    f"{info.exec_time:.3f}s",
                    f"{info.exec_time / info.exec_count:.3f}s" if info.exec_count else "N/A",
                ]
            )
        return "Suite Report\n" + tabulate(table, headers, tablefmt="grid")
