"""Benchmark harness and ``psad-bench`` command line."""
from .harness import BenchFailure, BenchRecord, environment, run_bench, run_case
from .report import QuartileSummary, emit, load_records, quartiles, render, summarize, summarize_all

__all__ = [
    "BenchFailure", "BenchRecord", "QuartileSummary", "emit", "environment",
    "load_records", "quartiles", "render", "run_bench", "run_case", "summarize",
    "summarize_all",
]
