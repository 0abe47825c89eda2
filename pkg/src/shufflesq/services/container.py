"""Service container for dependency wiring."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..core.config import AppConfig
from .scanner import ScanService
from .solver import ShuffleSolver


@dataclass(slots=True)
class ServiceContainer:
    """Aggregates the runtime services for the CLI."""

    config: AppConfig
    solver: ShuffleSolver
    scanner: ScanService

    @classmethod
    def build(cls, config: Optional[AppConfig] = None) -> "ServiceContainer":
        cfg = config or AppConfig.load()
        solver = ShuffleSolver(cfg)
        scanner = ScanService(solver, cfg.jobs)
        return cls(config=cfg, solver=solver, scanner=scanner)
