import logging
from typing import List

from .node import CheckNode, LabelData, label_proc_decorator

logger = logging.getLogger(__name__)


class OrderedPipeline:
    """
    Chains check nodes and hands results back in submission order, whatever
    order the workers finish in. Items are labeled with an increasing index on
    the way in; finished items wait in a buffer until every earlier index has
    been released.
    """

    def __init__(self, all_nodes: List[CheckNode]):
        assert all_nodes, "a pipeline needs at least one node"
        self.all_nodes = list(all_nodes)
        self.head = self.all_nodes[0]
        self.tail = self.all_nodes[-1]
        for former, node in zip(self.all_nodes, self.all_nodes[1:]):
            logger.info(f"connect {former.__name__} to {node.__name__}")
            former.set_destination(node.put)
        for node in self.all_nodes:
            node.add_proc_decorator(label_proc_decorator)
        self.tail.set_destination(self._order_put_data)
        self.data_idx = 0
        self.next_idx = 0
        self.output_dict = {}
        self.results = []

    def put(self, data) -> None:
        self.head.put(LabelData(data, self.data_idx))
        self.data_idx += 1

    def start(self) -> None:
        for node in self.all_nodes:
            node.start()

    def end(self) -> list:
        # upstream first so every item reaches the tail before it stops
        for node in self.all_nodes:
            node.end()
        assert not self.output_dict, f"unreleased results {sorted(self.output_dict)}"
        return self.results

    def run(self, items) -> list:
        self.start()
        for item in items:
            self.put(item)
        return self.end()

    def _order_put_data(self, label_data: LabelData) -> None:
        assert isinstance(label_data, LabelData), f"The data {label_data} is not a LabelData"
        self.output_dict[label_data.label] = label_data.data
        while self.next_idx in self.output_dict:
            self.results.append(self.output_dict.pop(self.next_idx))
            self.next_idx += 1
