"""Independence complexes of graph products: construction, reduction, exact homology."""

__version__ = "0.1.0"
