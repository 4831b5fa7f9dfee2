import functools
import logging
import traceback

import gevent
from gevent import sleep, spawn
from gevent.queue import Queue

from .. import SCALED_CRYSTAL_CONFIG
from ..exceptions import CheckProcessingError

logger = logging.getLogger(__name__)


class LabelData:
    def __init__(self, data, label):
        self.data = data
        self.label = label


def skip_error_decorator(func):
    """Forwards failures of an upstream node untouched."""

    @functools.wraps(func)
    def skip_wrapper(data):
        if isinstance(data, CheckProcessingError):
            return data
        return func(data)

    return skip_wrapper


def label_proc_decorator(func):
    @functools.wraps(func)
    def labeled_wrapper(label_data):
        assert isinstance(label_data, LabelData), f"{label_data!r} is not labeled"
        return LabelData(func(label_data.data), label_data.label)

    return labeled_wrapper


class CheckNode:
    """
    A pool of gevent workers draining a bounded queue through ``check_func``.
    Exceptions raised by the check come out as ``CheckProcessingError`` values
    so one failing item never stops the pool.
    """

    def __init__(self, check_func, worker_num=None, queue_size=None) -> None:
        self.worker_num = worker_num if worker_num else SCALED_CRYSTAL_CONFIG.get("worker_num", 4)
        self.queue_size = queue_size if queue_size else SCALED_CRYSTAL_CONFIG.get("queue_size", 16)
        self.__name__ = check_func.__name__
        self.src_queue = Queue(self.queue_size)
        self.dst_funcs = []
        self.proc_decorators = []
        self._proc_data = self._error_decorator(check_func)
        self.tasks = []
        self.executing = 0
        self.is_start = False

    def __repr__(self) -> str:
        return f"CheckNode({self.__name__}, workers={self.worker_num})"

    def set_destination(self, put_func) -> None:
        self.dst_funcs.append(put_func)

    def add_proc_decorator(self, decorator) -> None:
        self.proc_decorators.append(decorator)

    def put(self, data) -> None:
        self.src_queue.put(data)

    def start(self) -> list:
        assert not self.is_start, f"node {self.__name__} already started"
        self._setup_decorators()
        self.is_start = True
        for i in range(self.worker_num):
            self.tasks.append(spawn(self._func_wrapper, i))
        logger.info(f"node {self.__name__} start with {self.worker_num} workers")
        return self.tasks

    def end(self) -> None:
        """Drains the queue and stops the workers."""
        for _ in range(self.worker_num):
            self.src_queue.put(StopIteration())
        gevent.joinall(self.tasks)
        self.is_start = False
        logger.info(f"node {self.__name__} stop")

    def _setup_decorators(self) -> None:
        # the label wrapper must be outermost
        decorators = [d for d in self.proc_decorators if d is not label_proc_decorator]
        if label_proc_decorator in self.proc_decorators:
            decorators.append(label_proc_decorator)
        for decorator in decorators:
            self._proc_data = decorator(self._proc_data)

    def _func_wrapper(self, task_id: int) -> None:
        logger.debug(f"node {self.__name__} worker {task_id} start")
        while True:
            data = self.src_queue.get()
            if isinstance(data, StopIteration):
                break
            self.executing += 1
            try:
                result = self._proc_data(data)
            finally:
                self.executing -= 1
            for put_func in self.dst_funcs:
                put_func(result)
            sleep(0)
        logger.debug(f"node {self.__name__} worker {task_id} stop")

    def _error_decorator(self, func):
        name = self.__name__

        @functools.wraps(func)
        def error_wrapper(data):
            try:
                return func(data)
            except Exception as e:
                stack = traceback.format_exc()
                logger.error(f"{name} error on {data!r}: {e}\n{stack}")
                return CheckProcessingError(data, name, e, stack)

        return skip_error_decorator(error_wrapper)
