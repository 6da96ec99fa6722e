"""Min-max fine heaps with instrumented baselines, a differential oracle and a benchmark CLI."""

from .baselines import BinaryMinHeap, ClassicMinMaxHeap
from .errors import (
    ConfigurationError,
    EmptyHeapError,
    HeapDomainError,
    HeapError,
    UnsupportedOperationError,
)
from .heap_core import Chain, MinMaxFineHeap, chain_insert_position, validate
from .instrumentation import (
    CostModelParams,
    CountingComparator,
    OpCostReport,
    TracingComparator,
    creation_bound,
    creation_closed_form,
    delete_bound,
    insert_bound,
    measure,
)
from .oracle import Divergence, ReferenceDeque, Workload, exhaustive_small, gen_workload, run_differential

__all__ = [
    "BinaryMinHeap",
    "Chain",
    "ClassicMinMaxHeap",
    "ConfigurationError",
    "CostModelParams",
    "CountingComparator",
    "Divergence",
    "EmptyHeapError",
    "HeapDomainError",
    "HeapError",
    "MinMaxFineHeap",
    "OpCostReport",
    "ReferenceDeque",
    "TracingComparator",
    "UnsupportedOperationError",
    "Workload",
    "chain_insert_position",
    "creation_bound",
    "creation_closed_form",
    "delete_bound",
    "exhaustive_small",
    "gen_workload",
    "insert_bound",
    "measure",
    "run_differential",
    "validate",
]
