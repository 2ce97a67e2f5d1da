"""Exact integer linear algebra: Smith normal form and windowed homology."""

from .core import (
    ChainComplexWindow,
    HomologyEntry,
    HomologyTable,
    IntMatrix,
    SnfResult,
    backend_name,
    homology_window,
    kernel_basis,
    mapping_cone,
    smith_normal_form,
)

__all__ = [
    "ChainComplexWindow",
    "HomologyEntry",
    "HomologyTable",
    "IntMatrix",
    "SnfResult",
    "backend_name",
    "homology_window",
    "kernel_basis",
    "mapping_cone",
    "smith_normal_form",
]
