"""Service layer exports."""

from .container import ServiceContainer
from .scanner import ScanService
from .solver import ShuffleSolver

__all__ = ["ServiceContainer", "ScanService", "ShuffleSolver"]
