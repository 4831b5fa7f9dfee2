from .node import CheckNode, LabelData, label_proc_decorator, skip_error_decorator
from .pipeline import OrderedPipeline
from .analyser import SuiteAnalyser

__all__ = [
    "CheckNode",
    "LabelData",
    "label_proc_decorator",
    "skip_error_decorator",
    "OrderedPipeline",
    "SuiteAnalyser",
]
