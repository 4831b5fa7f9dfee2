import gevent
import pytest

from scaled_crystal.exceptions import CheckProcessingError
from scaled_crystal.runner import CheckNode, OrderedPipeline, SuiteAnalyser


def slow_square(x):
    # later items finish first
    gevent.sleep(0.001 * (10 - x))
    return x * x


def fails_on_odd(x):
    if x % 2:
        raise ValueError(f"odd {x}")
    return x


def increment(x):
    return x + 1


def test_pipeline_keeps_submission_order():
    pipeline = OrderedPipeline([CheckNode(slow_square, worker_num=4, queue_size=4)])
    assert pipeline.run(range(10)) == [x * x for x in range(10)]


def test_pipeline_chains_nodes():
    pipeline = OrderedPipeline([CheckNode(slow_square, worker_num=2), CheckNode(increment, worker_num=3)])
    assert pipeline.run(range(6)) == [x * x + 1 for x in range(6)]


def test_errors_become_values():
    pipeline = OrderedPipeline([CheckNode(fails_on_odd, worker_num=2), CheckNode(increment, worker_num=2)])
    results = pipeline.run(range(4))
    assert results[0] == 1 and results[2] == 3
    for index in (1, 3):
        error = results[index]
        assert isinstance(error, CheckProcessingError)
        assert error.data == index
        assert error.func_name == "fails_on_odd"
        assert isinstance(error.origin_error, ValueError)


def test_node_cannot_start_twice():
    node = CheckNode(increment, worker_num=1)
    node.start()
    with pytest.raises(AssertionError):
        node.start()
    node.end()


def test_analyser_counts_executions_and_failures():
    analyser = SuiteAnalyser()
    node = CheckNode(fails_on_odd, worker_num=2)
    analyser.register([node])
    OrderedPipeline([node]).run(range(5))
    info = analyser.func_info["fails_on_odd"]
    assert info.exec_count == 5
    assert info.failures == 2
    report = analyser.report()
    assert report.startswith("Suite Report")
    assert "fails_on_odd" in report
