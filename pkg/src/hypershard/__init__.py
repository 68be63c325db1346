"""hypershard: workload-driven horizontal partitioning via hypergraph min-cut."""

__version__ = "0.1.0"
