"""Exact q-series computations for cylindric partitions."""
