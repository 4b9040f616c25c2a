from .events import BaseInit, Close, Event, FrameSweep, WorkingK, dump_history, load_history
from .state import (
    Closure,
    LineCounters,
    SweepParams,
    SweepState,
    assemble,
    close,
    closing_pairs,
    initial_state,
    iter_states,
    reference_order,
    replay,
    replay_configuration,
    segment_tuples,
    successors_frame,
    successors_working,
    viable,
)
from .engine import SweepOptions, SweepStats, Visited, enumerate_sweep, expand, fingerprint, frontier, search

__all__ = [
    "BaseInit",
    "Close",
    "Closure",
    "Event",
    "FrameSweep",
    "LineCounters",
    "SweepOptions",
    "SweepParams",
    "SweepState",
    "SweepStats",
    "Visited",
    "WorkingK",
    "assemble",
    "close",
    "closing_pairs",
    "dump_history",
    "enumerate_sweep",
    "expand",
    "fingerprint",
    "frontier",
    "initial_state",
    "iter_states",
    "load_history",
    "reference_order",
    "replay",
    "replay_configuration",
    "search",
    "segment_tuples",
    "successors_frame",
    "successors_working",
    "viable",
]
