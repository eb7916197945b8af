"""Two-dimensional geometric knapsack toolkit."""
from .core import (Instance, Item, Packing, Placement, Rect, ValidationReport,
                   classify_items, load_instance, save_packing, validate_packing)
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["Instance", "Item", "Packing", "Placement", "Rect", "ValidationReport",
           "classify_items", "load_instance", "save_packing", "validate_packing", "BACKEND"]
