"""shufflesq: shuffle squares, twins and ordered multigraphs."""

__all__ = [
    "__version__",
]

__version__ = "0.1.0"
